"""Incrementally trained auto-glosser.

A deliberately auditable model: count tables mapping morph forms to gloss
distributions and position statistics, built from glossed utterances plus
one root observation per lexicon headword. The same tables drive

* segmentation of unseen words — a dynamic program that maximizes
  sum(log(count(form) + 1)) over known forms covering the word exactly,
  breaking ties by fewer segments, then leftmost-longest;
* gloss suggestions with majority-vote confidences;
* evaluation against held-out glossed text;
* a sketch-grammar summary (affix inventory and frequency tables).

Externally trained models plug in through a JSONL exchange format (one
``{"word", "morphs": [{"form", "type", "gloss"}]}`` object per line);
imported predictions take precedence over the built-in suggester.

Models are immutable snapshots: ``update`` returns a new model, so a served
model can be swapped atomically while readers keep a complete table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .errors import EmptyHeldout, SchemaViolation, UnderflowRemoval
from .model import LexicalEntry, MorphType, Utterance

# Tie order for classifying a form's position from its counts.
_POSITION_ORDER = (MorphType.ROOT, MorphType.SUFFIX, MorphType.PREFIX, MorphType.CLITIC)


@dataclass
class GlossModel:
    project_id: str = ""
    version: int = 0
    trained_on: int = 0
    morph_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    position_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    total_morph_tokens: int = 0

    def form_count(self, form: str) -> int:
        return sum(self.morph_counts.get(form, {}).values())

    def copy_tables(self) -> "GlossModel":
        return replace(
            self,
            morph_counts={f: dict(g) for f, g in self.morph_counts.items()},
            position_counts={f: dict(p) for f, p in self.position_counts.items()},
        )

    def to_doc(self) -> dict:
        return {
            "id": self.project_id,
            "project_id": self.project_id,
            "version": self.version,
            "trained_on": self.trained_on,
            "morph_counts": self.morph_counts,
            "position_counts": self.position_counts,
            "total_morph_tokens": self.total_morph_tokens,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "GlossModel":
        return cls(
            project_id=doc.get("project_id", ""),
            version=doc.get("version", 0),
            trained_on=doc.get("trained_on", 0),
            morph_counts={
                f: {g: int(c) for g, c in glosses.items()}
                for f, glosses in doc.get("morph_counts", {}).items()
            },
            position_counts={
                f: {p: int(c) for p, c in positions.items()}
                for f, positions in doc.get("position_counts", {}).items()
            },
            total_morph_tokens=doc.get("total_morph_tokens", 0),
        )


@dataclass
class GlossSuggestion:
    # (form, type, gloss, confidence); unknown morphs carry gloss "" and 0.
    morphs: list[tuple[str, MorphType, str, float]] = field(default_factory=list)
    score: float = 0.0

    def to_doc(self) -> dict:
        return {
            "morphs": [
                {"form": f, "type": t.value, "gloss": g, "confidence": c}
                for f, t, g, c in self.morphs
            ],
            "score": self.score,
        }


@dataclass
class Metrics:
    morph_gloss_accuracy: float
    seg_precision: float
    seg_recall: float
    seg_f1: float
    n_utterances: int

    def to_doc(self) -> dict:
        return {
            "morph_gloss_accuracy": self.morph_gloss_accuracy,
            "seg_precision": self.seg_precision,
            "seg_recall": self.seg_recall,
            "seg_f1": self.seg_f1,
            "n_utterances": self.n_utterances,
        }


def _observe(model: GlossModel, form: str, gloss: str, position: MorphType, delta: int) -> None:
    glosses = model.morph_counts.setdefault(form, {})
    positions = model.position_counts.setdefault(form, {})
    new_gloss = glosses.get(gloss, 0) + delta
    new_pos = positions.get(position.value, 0) + delta
    if new_gloss < 0 or new_pos < 0:
        raise UnderflowRemoval(
            f"removing unseen observation ({form!r}, {gloss!r}, {position.value})"
        )
    if new_gloss == 0:
        glosses.pop(gloss, None)
    else:
        glosses[gloss] = new_gloss
    if new_pos == 0:
        positions.pop(position.value, None)
    else:
        positions[position.value] = new_pos
    if not glosses:
        model.morph_counts.pop(form, None)
    if not positions:
        model.position_counts.pop(form, None)
    model.total_morph_tokens += delta


def _utterance_observations(utt: Utterance) -> list[tuple[str, str, MorphType]]:
    return [
        (morph.form, morph.gloss, morph.type)
        for word in utt.words
        for morph in word.morphs
    ]


def train(corpus: list[Utterance], lexicon: list[LexicalEntry],
          project_id: str = "") -> GlossModel:
    """Tally every morph token of the glossed corpus; seed one root
    observation per lexicon headword (first-sense gloss, count 1) so corpus
    evidence quickly dominates."""
    model = GlossModel(project_id=project_id)
    for utt in corpus:
        if not utt.glossed:
            continue
        for form, gloss, position in _utterance_observations(utt):
            _observe(model, form, gloss, position, +1)
        model.trained_on += 1
    for entry in lexicon:
        if not entry.senses or not entry.senses[0].gloss:
            continue
        _observe(model, entry.headword, entry.senses[0].gloss, MorphType.ROOT, +1)
    model.version = 1 if model.total_morph_tokens else 0
    return model


def update(model: GlossModel, utt: Utterance, op: str) -> GlossModel:
    """Add or remove one glossed utterance; returns a new model with the
    version incremented. Removing counts that were never added raises
    UnderflowRemoval and leaves the input model untouched."""
    if op not in ("add", "remove"):
        raise ValueError(f"op must be 'add' or 'remove', got {op!r}")
    if not utt.glossed:
        raise ValueError("only glossed utterances update the model")
    delta = 1 if op == "add" else -1
    observations = _utterance_observations(utt)
    if delta < 0:
        # Validate before touching anything so a failed removal is a no-op.
        staged = model.copy_tables()
        for form, gloss, position in observations:
            _observe(staged, form, gloss, position, -1)
        updated = staged
    else:
        updated = model.copy_tables()
        for form, gloss, position in observations:
            _observe(updated, form, gloss, position, +1)
    updated.trained_on = model.trained_on + delta
    updated.version = model.version + 1
    return updated


def _position_of(model: GlossModel, form: str) -> MorphType:
    positions = model.position_counts.get(form, {})
    if not positions:
        return MorphType.ROOT
    best = max(
        _POSITION_ORDER,
        key=lambda t: (positions.get(t.value, 0), -_POSITION_ORDER.index(t)),
    )
    return best


def segment(model: GlossModel, word: str) -> list[tuple[str, MorphType]]:
    """Best segmentation of ``word`` into known morph forms.

    Maximizes sum(log(count + 1)); ties fall to fewer segments, then to the
    leftmost-longest split. The DP compares products of (count + 1) in exact
    integer arithmetic, which orders identically to the log sum but is immune
    to float rounding. When no full cover by known forms exists the whole
    word comes back as one unknown root.
    """
    if not word or any(c.isspace() for c in word):
        raise ValueError("word must be non-empty and contain no whitespace")
    counts = {form: sum(g.values()) for form, g in model.morph_counts.items()}
    n = len(word)
    # best[i] covers word[i:]: (product, -segments, lengths) maximized
    # lexicographically; lengths longer-first wins ties.
    best: list[tuple[int, int, tuple[int, ...]] | None] = [None] * (n + 1)
    best[n] = (1, 0, ())
    for i in range(n - 1, -1, -1):
        top = None
        for k in range(i + 1, n + 1):
            form = word[i:k]
            count = counts.get(form)
            if count is None or best[k] is None:
                continue
            product, neg_segments, lengths = best[k]
            candidate = (product * (count + 1), neg_segments - 1, (k - i, *lengths))
            if top is None or candidate > top:
                top = candidate
        best[i] = top
    if best[0] is None:
        return [(word, MorphType.ROOT)]
    segments: list[tuple[str, MorphType]] = []
    pos = 0
    for length in best[0][2]:
        form = word[pos : pos + length]
        segments.append((form, _position_of(model, form)))
        pos += length
    return segments


def suggest(model: GlossModel, word: str) -> GlossSuggestion:
    """Segment, then per form vote the majority gloss (lexicographically
    smallest on ties). Confidence is top count over total count for the
    form; unknown forms get gloss "" and confidence 0."""
    morphs: list[tuple[str, MorphType, str, float]] = []
    log_terms: list[float] = []
    for form, position in segment(model, word):
        glosses = model.morph_counts.get(form)
        if not glosses:
            morphs.append((form, position, "", 0.0))
            log_terms.append(math.log(1))
            continue
        total = sum(glosses.values())
        top_count = max(glosses.values())
        top = min(g for g, c in glosses.items() if c == top_count)
        morphs.append((form, position, top, glosses[top] / total))
        log_terms.append(math.log(total + 1))
    return GlossSuggestion(morphs=morphs, score=math.fsum(log_terms))


def _boundaries(lengths: list[int]) -> set[int]:
    positions: set[int] = set()
    total = 0
    for length in lengths[:-1]:
        total += length
        positions.add(total)
    return positions


def evaluate(model: GlossModel, heldout: list[Utterance]) -> Metrics:
    """Score segmentation (boundary-set precision/recall, micro-averaged)
    and gloss accuracy over gold morph tokens. A token counts as correct
    only when its word's gold segmentation was recovered exactly and the
    majority gloss matches; everything else is wrong."""
    if not heldout:
        raise EmptyHeldout("held-out corpus is empty")
    tp = pred_total = gold_total = 0
    correct_glosses = gold_tokens = 0
    for utt in heldout:
        for word in utt.words:
            if not word.morphs:
                continue
            gold_forms = [m.form for m in word.morphs]
            gold_bounds = _boundaries([len(f) for f in gold_forms])
            suggestion = suggest(model, word.surface)
            pred_forms = [m[0] for m in suggestion.morphs]
            pred_bounds = _boundaries([len(f) for f in pred_forms])
            tp += len(gold_bounds & pred_bounds)
            pred_total += len(pred_bounds)
            gold_total += len(gold_bounds)
            gold_tokens += len(gold_forms)
            if pred_forms == gold_forms:
                for morph, (_, _, gloss, _) in zip(word.morphs, suggestion.morphs):
                    if morph.gloss == gloss:
                        correct_glosses += 1
    precision = tp / pred_total if pred_total else (1.0 if gold_total == 0 else 0.0)
    recall = tp / gold_total if gold_total else 1.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    accuracy = correct_glosses / gold_tokens if gold_tokens else 0.0
    return Metrics(
        morph_gloss_accuracy=accuracy,
        seg_precision=precision,
        seg_recall=recall,
        seg_f1=f1,
        n_utterances=len(heldout),
    )


# --- external-model exchange ----------------------------------------------

def export_training_data(corpus: list[Utterance]) -> bytes:
    """One JSON object per word token, in corpus order."""
    lines = []
    for utt in corpus:
        for word in utt.words:
            lines.append(json.dumps(
                {
                    "word": word.surface,
                    "morphs": [
                        {"form": m.form, "type": m.type.value, "gloss": m.gloss}
                        for m in word.morphs
                    ],
                },
                ensure_ascii=False,
                sort_keys=True,
                separators=(",", ":"),
            ))
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


def import_predictions(data: bytes) -> list[tuple[str, GlossSuggestion]]:
    """Parse externally produced predictions (same shape as the export, plus
    an optional per-morph confidence defaulting to 1.0). Returns (word,
    suggestion) pairs; the service layer lets these take precedence over the
    built-in suggester."""
    out: list[tuple[str, GlossSuggestion]] = []
    for lineno, raw in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"not valid JSON: {exc.msg}", line=lineno)
        if not isinstance(obj, dict):
            raise SchemaViolation("each line must be a JSON object", line=lineno)
        word = obj.get("word")
        if not isinstance(word, str) or not word:
            raise SchemaViolation("missing or empty 'word'", line=lineno)
        raw_morphs = obj.get("morphs")
        if not isinstance(raw_morphs, list):
            raise SchemaViolation("missing 'morphs' array", line=lineno)
        morphs: list[tuple[str, MorphType, str, float]] = []
        for m in raw_morphs:
            if not isinstance(m, dict) or not isinstance(m.get("form"), str) or not m["form"]:
                raise SchemaViolation("morph needs a non-empty 'form'", line=lineno)
            try:
                typ = MorphType(m.get("type", "root"))
            except ValueError:
                raise SchemaViolation(f"unknown morph type {m.get('type')!r}", line=lineno)
            gloss = m.get("gloss", "")
            if not isinstance(gloss, str):
                raise SchemaViolation("'gloss' must be a string", line=lineno)
            confidence = m.get("confidence", 1.0)
            if not isinstance(confidence, (int, float)) or isinstance(confidence, bool) \
                    or not 0.0 <= float(confidence) <= 1.0:
                raise SchemaViolation("'confidence' must be in [0, 1]", line=lineno)
            morphs.append((m["form"], typ, gloss, float(confidence)))
        out.append((word, GlossSuggestion(morphs=morphs, score=0.0)))
    return out


# --- sketch summary ---------------------------------------------------------

@dataclass
class SketchReport:
    # (form, type, [(gloss, count) desc], example utterance ids <= 3)
    affixes: list[tuple[str, MorphType, list[tuple[str, int]], list[str]]] = field(
        default_factory=list
    )
    gloss_frequency: dict[str, int] = field(default_factory=dict)
    pos_distribution: dict[str, int] = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "affixes": [
                {
                    "form": form,
                    "type": typ.value,
                    "glosses": [{"gloss": g, "count": c} for g, c in glosses],
                    "examples": examples,
                }
                for form, typ, glosses, examples in self.affixes
            ],
            "gloss_frequency": dict(sorted(self.gloss_frequency.items())),
            "pos_distribution": dict(sorted(self.pos_distribution.items())),
        }


def sketch_summary(corpus: list[Utterance], model: GlossModel) -> SketchReport:
    """Affix inventory (forms whose position counts classify as prefix,
    suffix or clitic, sorted by descending frequency then form), gloss
    frequencies and part-of-speech distribution tallied from the corpus."""
    report = SketchReport()
    examples: dict[str, list[str]] = {}
    for utt in corpus:
        seen_in_utt: set[str] = set()
        for word in utt.words:
            if word.pos:
                report.pos_distribution[word.pos] = report.pos_distribution.get(word.pos, 0) + 1
            for morph in word.morphs:
                if morph.gloss:
                    report.gloss_frequency[morph.gloss] = (
                        report.gloss_frequency.get(morph.gloss, 0) + 1
                    )
                if morph.form not in seen_in_utt:
                    seen_in_utt.add(morph.form)
                    bucket = examples.setdefault(morph.form, [])
                    if len(bucket) < 3:
                        bucket.append(utt.id)
    affix_rows = []
    for form in model.position_counts:
        position = _position_of(model, form)
        if position is MorphType.ROOT:
            continue
        glosses = sorted(
            model.morph_counts.get(form, {}).items(), key=lambda kv: (-kv[1], kv[0])
        )
        affix_rows.append((form, position, glosses, examples.get(form, [])))
    affix_rows.sort(key=lambda row: (-model.form_count(row[0]), row[0]))
    report.affixes = affix_rows
    return report
