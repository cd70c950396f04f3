"""Exception hierarchy shared across the package.

Errors carry structured context (line numbers, JSON pointers, current
revisions) so the CLI and the HTTP layer can render precise messages without
parsing strings. Every class has a stable ``code`` used in API error bodies.
"""

from __future__ import annotations


class LifeError(Exception):
    code = "error"


class InvalidName(LifeError):
    code = "invalid_name"


# --- store ---------------------------------------------------------------

class UnknownCollection(LifeError):
    code = "unknown_collection"


class NotFound(LifeError):
    code = "not_found"


class StaleRevision(LifeError):
    """Optimistic-concurrency conflict; carries the revision currently stored."""

    code = "stale_revision"

    def __init__(self, message: str, current_rev: str | None = None):
        super().__init__(message)
        self.current_rev = current_rev


class DuplicateValue(LifeError):
    """Uniqueness violation (project slug, username, headword+homonym)."""

    code = "duplicate"


# --- parsers -------------------------------------------------------------

class ParseError(LifeError):
    """Base for text-format errors. 1-based line/column into the source."""

    code = "parse_error"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptyInput(ParseError):
    code = "empty_input"


class ContentBeforeFirstRecord(ParseError):
    code = "content_before_first_record"


class TierMisalignment(ParseError):
    code = "tier_misalignment"


class UnknownLineMarker(ParseError):
    code = "unknown_line_marker"


class SchemaViolation(LifeError):
    """Structural problem in imported JSON/JSONL. ``path`` is a JSON pointer,
    ``line`` a 1-based JSONL line number; whichever applies is set."""

    code = "schema_violation"

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = path if path is not None else (f"line {line}" if line else "")
        super().__init__(f"{where}: {message}" if where else message)
        self.path = path
        self.line = line


class CsvShapeError(LifeError):
    code = "csv_shape_error"

    def __init__(self, message: str, row: int):
        super().__init__(f"row {row}: {message}")
        self.row = row


class InvalidIri(LifeError):
    code = "invalid_iri"

    def __init__(self, message: str, row: int | None = None):
        super().__init__(f"row {row}: {message}" if row else message)
        self.row = row


# --- glosser -------------------------------------------------------------

class UnderflowRemoval(LifeError):
    code = "underflow_removal"


class EmptyHeldout(LifeError):
    code = "empty_heldout"


# --- service -------------------------------------------------------------

class InvalidCredentials(LifeError):
    code = "invalid_credentials"


class Unauthenticated(LifeError):
    code = "unauthenticated"


class Forbidden(LifeError):
    code = "forbidden"


class UnsupportedFormat(LifeError):
    code = "unsupported_format"

    def __init__(self, message: str, supported: list[str]):
        super().__init__(message)
        self.supported = supported


class UploadTooLarge(LifeError):
    code = "upload_too_large"


class ValidationFailed(LifeError):
    """Raised by write endpoints when a domain object fails validation;
    carries the full report for path-addressed client rendering."""

    code = "validation_failed"

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
