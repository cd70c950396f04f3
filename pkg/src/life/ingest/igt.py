r"""Leipzig-style plain-text interlinear glossed text.

Blocks are separated by one or more blank lines; each block carries
backslash-marked tiers (backslash markers rather than column alignment,
which is ambiguous under proportional editing):

.. code-block:: text

    \tx kitablar
    \mb kitab-lar
    \gl book-PL
    \ft the books

``\tx`` is required; ``\mb`` and ``\gl`` come as a pair; ``\ft`` is
optional. The ``\mb`` and ``\gl`` tiers must have exactly one
whitespace-separated token per ``\tx`` word, and within a word the morph
segments (split on "-" for affixes, "=" for clitics) must pair one-to-one
with the gloss segments.

Morph position types are assigned from segment positions: a single segment
is the root; in a two-segment word the first is the root and the second a
suffix; with three or more, the first is a prefix, the last a suffix and the
middle segments roots. A segment joined by "=" on its non-root side is a
clitic, and a lone segment with an explicit edge separator ("-lar", "he-",
"=da") takes the type the edge mark dictates.

Misaligned or otherwise malformed blocks are rejected individually: the
document keeps every aligned block, and each rejection is reported with the
line/column of the first mismatch.
"""

from __future__ import annotations

import re
import unicodedata

from ..errors import EmptyInput, TierMisalignment, UnknownLineMarker
from ..model import IGTDocument, Morph, MorphType, Utterance, Word, new_id, now_utc
from .sfm import ParseWarning

TIER_MARKERS = ("tx", "mb", "gl", "ft")

_TOKEN_RE = re.compile(r"\S+")


def _token_spans(raw: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in _TOKEN_RE.finditer(raw)]


class _Tier:
    def __init__(self, value: str, line: int, raw: str):
        self.value = value
        self.line = line
        # Token start columns in the raw source line (marker token dropped),
        # so error coordinates always point into real text.
        self.token_cols = _token_spans(raw)[1:]
        self.end_col = max(len(raw.rstrip()), 1)

    def col_of(self, index: int) -> int:
        if 0 <= index < len(self.token_cols):
            return self.token_cols[index][0]
        return self.end_col


def _split_blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if line.strip():
            current.append((lineno, line))
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return blocks


def _split_segments(token: str) -> tuple[list[str], list[str], str, str]:
    """Split a word token into morph segments and their separators.

    Returns (segments, separators, leading_mark, trailing_mark) where the
    edge marks are separator characters stripped from the token edges.
    """
    lead = trail = ""
    while token and token[0] in "-=":
        lead = token[0]
        token = token[1:]
    while token and token[-1] in "-=":
        trail = token[-1]
        token = token[:-1]
    if not token:
        return [], [], lead, trail
    parts = re.split(r"([-=])", token)
    return parts[0::2], parts[1::2], lead, trail


def _assign_types(segments: list[str], separators: list[str],
                  lead: str, trail: str) -> list[MorphType]:
    n = len(segments)
    if n == 1:
        if lead == "=" or trail == "=":
            return [MorphType.CLITIC]
        if lead == "-":
            return [MorphType.SUFFIX]
        if trail == "-":
            return [MorphType.PREFIX]
        return [MorphType.ROOT]
    types = [MorphType.ROOT] * n
    if n == 2:
        types[1] = MorphType.SUFFIX
    else:
        types[0] = MorphType.PREFIX
        types[-1] = MorphType.SUFFIX
    for k, sep in enumerate(separators):
        if sep != "=":
            continue
        # The clitic sits on the side of "=" away from the root.
        if types[k] is MorphType.ROOT:
            types[k + 1] = MorphType.CLITIC
        elif types[k + 1] is MorphType.ROOT:
            types[k] = MorphType.CLITIC
        elif k + 1 <= n // 2:
            types[k] = MorphType.CLITIC
        else:
            types[k + 1] = MorphType.CLITIC
    return types


def _parse_block(lines: list[tuple[int, str]], translation_lang: str) -> Utterance:
    tiers: dict[str, _Tier] = {}
    last: _Tier | None = None
    for lineno, line in lines:
        if line.startswith("\\"):
            body = line[1:]
            marker, _, value = body.partition(" ")
            marker = marker.strip().lower()
            if marker not in TIER_MARKERS:
                raise UnknownLineMarker(f"unknown tier marker \\{marker}", line=lineno)
            if marker in tiers:
                raise TierMisalignment(f"duplicate tier \\{marker}", line=lineno)
            tiers[marker] = _Tier(value.strip(), lineno, line)
            last = tiers[marker]
        else:
            if last is None:
                raise UnknownLineMarker("expected a \\-marked tier line", line=lineno)
            last.value = f"{last.value} {line.strip()}" if last.value else line.strip()

    if "tx" not in tiers:
        raise TierMisalignment("block has no \\tx tier", line=lines[0][0])
    if ("mb" in tiers) != ("gl" in tiers):
        present = "mb" if "mb" in tiers else "gl"
        raise TierMisalignment(
            f"\\{present} without its partner tier", line=tiers[present].line
        )

    phrase = tiers["tx"].value
    surfaces = phrase.split()
    if not surfaces:
        raise TierMisalignment("\\tx tier is empty", line=tiers["tx"].line)

    words: list[Word] = []
    glossed = False
    if "mb" in tiers:
        glossed = True
        mb, gl = tiers["mb"], tiers["gl"]
        mb_tokens = mb.value.split()
        gl_tokens = gl.value.split()
        for tokens, tier, name in ((mb_tokens, mb, "mb"), (gl_tokens, gl, "gl")):
            if len(tokens) != len(surfaces):
                # Surplus tokens point at the first extra one; missing tokens
                # point at the end of the line.
                raise TierMisalignment(
                    f"\\{name} has {len(tokens)} tokens for {len(surfaces)} words",
                    line=tier.line,
                    column=tier.col_of(len(surfaces)),
                )
        for i, surface in enumerate(surfaces):
            mb_token, gl_token = mb_tokens[i], gl_tokens[i]
            segments, separators, lead, trail = _split_segments(mb_token)
            glosses, _, _, _ = _split_segments(gl_token)
            if not segments or any(not s for s in segments):
                raise TierMisalignment(
                    f"empty morph segment in {mb_token!r}",
                    line=mb.line, column=mb.col_of(i),
                )
            if any(not g for g in glosses):
                raise TierMisalignment(
                    f"empty gloss segment in {gl_token!r}",
                    line=gl.line, column=gl.col_of(i),
                )
            if len(segments) != len(glosses):
                raise TierMisalignment(
                    f"{len(segments)} morphs but {len(glosses)} glosses for word {surface!r}",
                    line=gl.line,
                    column=gl.col_of(i),
                )
            types = _assign_types(segments, separators, lead, trail)
            morphs = [
                Morph(form=form, gloss=gloss, type=typ)
                for form, gloss, typ in zip(segments, glosses, types)
            ]
            words.append(Word(surface=surface, morphs=morphs))
    else:
        words = [Word(surface=s) for s in surfaces]

    translation = None
    if "ft" in tiers and tiers["ft"].value:
        translation = (tiers["ft"].value, translation_lang)
    return Utterance(
        id=new_id(),
        phrase=" ".join(surfaces),
        words=words,
        translation=translation,
        glossed=glossed,
    )


def parse_igt_text(
    text: str,
    project_id: str = "",
    title: str = "",
    translation_lang: str = "en",
) -> tuple[IGTDocument, list[ParseWarning]]:
    """Parse tier text into an IGT document.

    Aligned blocks become utterances; each rejected block contributes one
    warning whose line/column locate the first mismatch. Raises EmptyInput
    when there is no block at all.
    """
    text = unicodedata.normalize("NFC", text)
    blocks = _split_blocks(text)
    if not blocks:
        raise EmptyInput("no utterance blocks")
    utterances: list[Utterance] = []
    warnings: list[ParseWarning] = []
    for block in blocks:
        try:
            utterances.append(_parse_block(block, translation_lang))
        except (TierMisalignment, UnknownLineMarker) as exc:
            warnings.append(
                ParseWarning(exc.line, exc.column, f"block rejected: {exc.args[0]}")
            )
    now = now_utc()
    doc = IGTDocument(
        id=new_id(),
        project_id=project_id,
        title=title,
        utterances=utterances,
        created_at=now,
        modified_at=now,
    )
    return doc, warnings
