import json
import random

import pytest

from generators import entry_shape, sfm_lexicon
from life import canonical
from life.errors import CsvShapeError, SchemaViolation
from life.ingest import (
    ProjectBundle,
    export_csv,
    export_json,
    import_csv,
    import_json,
    parse_igt_text,
    parse_sfm_lexicon,
)
from life.model import LexicalEntry, Project, Role, Sense, new_id


def sample_bundle():
    project = Project(
        id=new_id(), name="Demo", slug="demo", language_name="Demo",
        language_code="dmo", alphabet=["a", "b"], pos_inventory=["n"],
        members={new_id(): Role.OWNER}, created_at="2024-01-01T00:00:00Z",
    )
    entries, _ = parse_sfm_lexicon(
        "\\lx kitab\n\\ps n\n\\ge book\n\n\\lx do\n\\hm 2\n\\ps v\n\\ge give\n\\so extra",
        project_id=project.id,
    )
    doc, _ = parse_igt_text(
        "\\tx kitablar\n\\mb kitab-lar\n\\gl book-PL\n\\ft the books", project_id=project.id
    )
    return ProjectBundle(project=project, entries=entries, texts=[doc])


def text_shape(doc):
    return (doc.title, tuple(
        (u.phrase, tuple((w.surface, tuple((m.form, m.gloss, m.type) for m in w.morphs))
                         for w in u.words), u.translation, u.glossed)
        for u in doc.utterances
    ))


class TestJson:
    def test_round_trip_equal(self):
        bundle = sample_bundle()
        again = import_json(export_json(bundle))
        assert again.project == bundle.project
        assert again.entries == bundle.entries
        assert again.texts == bundle.texts

    def test_canonical_bytes_are_stable(self):
        bundle = sample_bundle()
        assert export_json(bundle) == export_json(bundle)
        # canonical form: sorted keys, compact separators
        decoded = canonical.decode(export_json(bundle))
        assert export_json(bundle) == canonical.encode(decoded)

    def test_empty_project_exports(self):
        bundle = ProjectBundle(project=sample_bundle().project)
        doc = json.loads(export_json(bundle))
        assert doc["entries"] == [] and doc["texts"] == [] and doc["assets"] == []
        assert doc["format_version"] == 1

    def test_missing_headword_pointer(self):
        bundle = sample_bundle()
        doc = json.loads(export_json(bundle))
        del doc["entries"][0]["headword"]
        with pytest.raises(SchemaViolation) as exc:
            import_json(canonical.encode(doc))
        assert exc.value.path == "/entries/0/headword"

    def test_bad_format_version(self):
        with pytest.raises(SchemaViolation) as exc:
            import_json(b'{"format_version": 99, "project": {}}')
        assert exc.value.path == "/format_version"

    def test_regenerate_ids_keeps_references(self):
        bundle = sample_bundle()
        remapped = import_json(export_json(bundle), regenerate_ids=True)
        assert remapped.project.id != bundle.project.id
        assert [entry_shape(e) for e in remapped.entries] == [
            entry_shape(e) for e in bundle.entries
        ]
        assert all(e.project_id == remapped.project.id for e in remapped.entries)
        assert all(t.project_id == remapped.project.id for t in remapped.texts)
        old_ids = {bundle.project.id} | {e.id for e in bundle.entries}
        new_ids = {remapped.project.id} | {e.id for e in remapped.entries}
        assert not old_ids & new_ids

    def test_arbitrary_bytes_never_panic(self):
        rng = random.Random(5)
        for _ in range(200):
            blob = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 60)))
            try:
                import_json(blob)
            except (SchemaViolation, UnicodeDecodeError):
                pass


class TestCsv:
    def test_one_row_per_sense(self):
        entries = [LexicalEntry(
            id=new_id(), project_id="", headword="do", pos="v",
            senses=[Sense(sense_no=1, gloss="give"), Sense(sense_no=2, gloss="allow")],
        )]
        text = export_csv(entries)
        rows = [r for r in text.split("\r\n") if r]
        assert len(rows) == 3  # header + 2 senses
        assert rows[1].startswith("do,1,v,1,give")
        assert rows[2].startswith("do,1,v,2,allow")

    def test_rfc4180_quoting(self):
        entries = [LexicalEntry(
            id=new_id(), project_id="", headword="a,b", pos="n",
            senses=[Sense(sense_no=1, gloss='say "hi"')],
        )]
        text = export_csv(entries)
        assert '"a,b"' in text
        assert '"say ""hi"""' in text

    def test_round_trip(self):
        entries, _ = parse_sfm_lexicon(sfm_lexicon(random.Random(3), 30))
        again = import_csv(export_csv(entries))
        # CSV carries only the tabular subset: headword/homonym/pos/senses
        def csv_shape(e):
            return (e.headword, e.homonym_no, e.pos, tuple(
                (s.sense_no, s.gloss, s.definition, s.semantic_domain) for s in e.senses
            ))
        assert [csv_shape(e) for e in again] == [csv_shape(e) for e in entries]

    def test_wrong_column_count(self):
        text = "headword,homonym_no,pos,sense_no,gloss,definition,semantic_domain\r\na,1,n,1,g\r\n"
        with pytest.raises(CsvShapeError) as exc:
            import_csv(text)
        assert exc.value.row == 2

    def test_grouping_by_headword_and_homonym(self):
        text = export_csv([
            LexicalEntry(id=new_id(), project_id="", headword="do", homonym_no=1, pos="v",
                         senses=[Sense(sense_no=1, gloss="give")]),
            LexicalEntry(id=new_id(), project_id="", headword="do", homonym_no=2, pos="n",
                         senses=[Sense(sense_no=1, gloss="act")]),
        ])
        entries = import_csv(text)
        assert len(entries) == 2
        assert [(e.headword, e.homonym_no) for e in entries] == [("do", 1), ("do", 2)]

    def test_bad_header(self):
        with pytest.raises(CsvShapeError) as exc:
            import_csv("a,b\r\n1,2\r\n")
        assert exc.value.row == 1

    def test_arbitrary_text_never_panics(self):
        rng = random.Random(6)
        for _ in range(200):
            text = "".join(chr(rng.choice([10, 13, 34, 44, 65, 97])) for _ in range(40))
            try:
                import_csv(text)
            except CsvShapeError:
                pass
