"""Custom-alphabet collation and dictionary compilation.

A project defines its alphabet as an ordered list of grapheme clusters, which
may be multi-character letters ("ch", "ng"). Headwords are tokenized by
greedy longest match against that alphabet — the convention lexicographers
use for digraph letters — and compare by the resulting rank sequence.
Characters that begin no alphabet unit rank after the whole alphabet by code
point, so partial alphabets degrade gracefully.

Compilation produces a letter-sectioned document plus a reversal (finderlist)
index, which the renderers turn into a self-contained hypertext page or a
print-oriented plain-text markup.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import LexicalEntry, Project

_SUPERSCRIPTS = "⁰¹²³⁴⁵⁶⁷⁸⁹"


@dataclass(frozen=True)
class CollationKey:
    ranks: tuple[int, ...]
    raw: str

    @property
    def sort_key(self) -> tuple[tuple[int, ...], str]:
        # Ranks first; raw code points break ties so distinct strings never
        # compare equal.
        return (self.ranks, self.raw)


def _tokenize(alphabet: list[str], s: str) -> list[tuple[int, int]]:
    """Greedy longest-match tokenization of ``s`` (already lowercased).

    Returns (rank, length) per token; unknown characters get rank
    ``len(alphabet) + codepoint`` and length 1. Token lengths always sum to
    ``len(s)``.
    """
    by_length = sorted(range(len(alphabet)), key=lambda i: -len(alphabet[i]))
    tokens: list[tuple[int, int]] = []
    pos = 0
    while pos < len(s):
        for i in by_length:
            unit = alphabet[i]
            if unit and s.startswith(unit, pos):
                tokens.append((i, len(unit)))
                pos += len(unit)
                break
        else:
            tokens.append((len(alphabet) + ord(s[pos]), 1))
            pos += 1
    return tokens


def collation_key(alphabet: list[str], s: str) -> CollationKey:
    ranks = tuple(rank for rank, _ in _tokenize(alphabet, s.lower()))
    return CollationKey(ranks=ranks, raw=s)


def compare_headwords(alphabet: list[str], a: str, b: str) -> int:
    """-1, 0 or 1; zero only when the raw strings are identical."""
    ka = collation_key(alphabet, a).sort_key
    kb = collation_key(alphabet, b).sort_key
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def headword_display(headword: str, homonym_no: int, homonymous: bool) -> str:
    if not homonymous:
        return headword
    sup = "".join(_SUPERSCRIPTS[int(d)] for d in str(homonym_no))
    return headword + sup


@dataclass
class EntryBlock:
    entry_id: str
    headword: str
    display: str
    pos: str
    senses: list[dict] = field(default_factory=list)
    variants: list[str] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "headword": self.headword,
            "display": self.display,
            "pos": self.pos,
            "senses": self.senses,
            "variants": list(self.variants),
        }


@dataclass
class Section:
    letter: str  # alphabet unit, or "#" for unknown-initial headwords
    entries: list[EntryBlock] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {"letter": self.letter, "entries": [e.to_doc() for e in self.entries]}


@dataclass
class ReversalRow:
    gloss: str
    refs: list[tuple[str, str]] = field(default_factory=list)  # (entry_id, display)

    def to_doc(self) -> dict:
        return {
            "gloss": self.gloss,
            "refs": [{"entry_id": i, "display": d} for i, d in self.refs],
        }


@dataclass
class DictionaryDocument:
    sections: list[Section] = field(default_factory=list)
    reversal: list[ReversalRow] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "sections": [s.to_doc() for s in self.sections],
            "reversal": [r.to_doc() for r in self.reversal],
        }


def compile_dictionary(entries: list[LexicalEntry], project: Project) -> DictionaryDocument:
    """Sort entries under the project collation, group them into letter
    sections (unknown-initial headwords land in a final "#" section), number
    homonyms, and build the gloss → headword reversal index."""
    alphabet = project.alphabet
    ordered = sorted(
        entries,
        key=lambda e: (collation_key(alphabet, e.headword).sort_key, e.homonym_no, e.id),
    )
    headword_counts: dict[str, int] = {}
    for entry in ordered:
        headword_counts[entry.headword] = headword_counts.get(entry.headword, 0) + 1

    sections: dict[str, Section] = {}
    order: list[str] = []
    reversal: dict[str, ReversalRow] = {}
    for entry in ordered:
        display = headword_display(
            entry.headword, entry.homonym_no, headword_counts[entry.headword] > 1
        )
        block = EntryBlock(
            entry_id=entry.id,
            headword=entry.headword,
            display=display,
            pos=entry.pos,
            senses=[s.to_doc() for s in entry.senses],
            variants=list(entry.variants),
        )
        tokens = _tokenize(alphabet, entry.headword.lower()) if entry.headword else []
        if tokens and tokens[0][0] < len(alphabet):
            letter = alphabet[tokens[0][0]]
        else:
            letter = "#"
        if letter not in sections:
            sections[letter] = Section(letter=letter)
            order.append(letter)
        sections[letter].entries.append(block)

        seen_glosses: set[str] = set()
        for sense in entry.senses:
            if not sense.gloss or sense.gloss in seen_glosses:
                continue
            seen_glosses.add(sense.gloss)
            row = reversal.setdefault(sense.gloss, ReversalRow(gloss=sense.gloss))
            row.refs.append((entry.id, display))

    def section_rank(letter: str) -> int:
        return alphabet.index(letter) if letter in alphabet else len(alphabet)

    return DictionaryDocument(
        sections=[sections[letter] for letter in sorted(order, key=section_rank)],
        reversal=[reversal[g] for g in sorted(reversal)],
    )


# --- rendering ------------------------------------------------------------

def _escape(s: str) -> str:
    return (
        s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def _letter_anchor(letter: str) -> str:
    return "letter-other" if letter == "#" else f"letter-{letter}"


_STYLE = """
body { font-family: serif; max-width: 48rem; margin: 1rem auto; }
nav.letters a { margin-right: .5em; text-decoration: none; }
article.entry { margin: .6em 0; }
.headword { font-weight: bold; }
.pos { font-style: italic; color: #444; }
ol.senses { margin: .1em 0 .1em 1.5em; padding: 0; }
.example { color: #333; margin-left: 1em; }
.finderlist .gloss { font-weight: bold; }
""".strip()


def render_html(doc: DictionaryDocument, title: str = "Dictionary") -> str:
    """Single self-contained hypertext document: one anchor per entry id, one
    per letter section, no scripting. Deterministic for equal input."""
    out: list[str] = []
    out.append("<!DOCTYPE html>")
    out.append('<html><head><meta charset="utf-8">')
    out.append(f"<title>{_escape(title)}</title>")
    out.append(f"<style>{_STYLE}</style>")
    out.append("</head><body>")
    out.append(f"<h1>{_escape(title)}</h1>")
    out.append('<nav class="letters">')
    for section in doc.sections:
        out.append(f'<a href="#{_escape(_letter_anchor(section.letter))}">{_escape(section.letter)}</a>')
    if doc.reversal:
        out.append('<a href="#finderlist">finderlist</a>')
    out.append("</nav>")
    for section in doc.sections:
        out.append(f'<section class="letter" id="{_escape(_letter_anchor(section.letter))}">')
        out.append(f"<h2>{_escape(section.letter)}</h2>")
        for entry in section.entries:
            out.append(f'<article class="entry" id="{_escape(entry.entry_id)}">')
            head = f'<span class="headword">{_escape(entry.display)}</span>'
            if entry.pos:
                head += f' <span class="pos">{_escape(entry.pos)}</span>'
            out.append(head)
            out.append('<ol class="senses">')
            for sense in entry.senses:
                parts = []
                if sense.get("gloss"):
                    parts.append(f'<span class="gloss">{_escape(sense["gloss"])}</span>')
                if sense.get("definition"):
                    parts.append(f'<span class="definition">{_escape(sense["definition"])}</span>')
                line = "; ".join(parts) or "&mdash;"
                examples = "".join(
                    f'<div class="example"><span class="vernacular">{_escape(ex["vernacular"])}</span>'
                    f' &mdash; <span class="translation">{_escape(ex["translation"])}</span></div>'
                    for ex in sense.get("examples", [])
                )
                out.append(f'<li class="sense">{line}{examples}</li>')
            out.append("</ol>")
            if entry.variants:
                out.append(
                    '<div class="variants">Variants: '
                    + ", ".join(_escape(v) for v in entry.variants)
                    + "</div>"
                )
            out.append("</article>")
        out.append("</section>")
    if doc.reversal:
        out.append('<section class="finderlist" id="finderlist">')
        out.append("<h2>Finderlist</h2>")
        for row in doc.reversal:
            links = ", ".join(
                f'<a href="#{_escape(eid)}">{_escape(display)}</a>' for eid, display in row.refs
            )
            out.append(
                f'<div class="reversal"><span class="gloss">{_escape(row.gloss)}</span>: {links}</div>'
            )
        out.append("</section>")
    out.append("</body></html>")
    return "\n".join(out) + "\n"


def render_print(doc: DictionaryDocument, title: str = "Dictionary") -> str:
    """Print-oriented structured text: a double-ruled title, single-ruled
    letter headings, one indented paragraph per entry. A hand-off format for
    external typesetters, not a typeset page."""
    out: list[str] = [title.upper(), "=" * max(len(title), 4), ""]
    for section in doc.sections:
        out.append(section.letter)
        out.append("-" * max(len(section.letter), 4))
        out.append("")
        for entry in section.entries:
            head = entry.display
            if entry.pos:
                head += f"  {entry.pos}."
            out.append(head)
            for sense in entry.senses:
                line = f"  {sense['sense_no']}. "
                body = []
                if sense.get("gloss"):
                    body.append(sense["gloss"])
                if sense.get("definition"):
                    body.append(sense["definition"])
                line += " -- ".join(body) if body else "(no gloss)"
                out.append(line)
                for ex in sense.get("examples", []):
                    out.append(f"     | {ex['vernacular']} -- {ex['translation']}")
            if entry.variants:
                out.append("  Variants: " + ", ".join(entry.variants))
            out.append("")
    if doc.reversal:
        out.append("FINDERLIST")
        out.append("----------")
        out.append("")
        for row in doc.reversal:
            out.append(f"{row.gloss}: " + ", ".join(d for _, d in row.refs))
        out.append("")
    return "\n".join(out)
