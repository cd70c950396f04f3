"""Parsers and serializers for field-data interchange.

Formats: Toolbox/SFM lexicon records, backslash-tier interlinear text,
RFC 4180 CSV, and the canonical JSON project bundle. All text input is
normalized to NFC at this boundary; parsers report 1-based line/column
positions and never raise on arbitrary bytes except through the structured
error types in :mod:`life.errors`.
"""

from .csvio import export_csv, import_csv
from .igt import parse_igt_text
from .jsonio import ProjectBundle, export_json, import_json, remap_ids
from .sfm import ParseWarning, parse_sfm_lexicon, serialize_sfm_lexicon

__all__ = [
    "ParseWarning",
    "ProjectBundle",
    "export_csv",
    "export_json",
    "import_csv",
    "import_json",
    "parse_igt_text",
    "parse_sfm_lexicon",
    "remap_ids",
    "serialize_sfm_lexicon",
]
