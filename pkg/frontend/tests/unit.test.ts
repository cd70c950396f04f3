import { describe, expect, it } from "vitest";

import { sectionAnchor } from "../src/dictionary.js";
import { LexiconEditor, emptyEntry } from "../src/lexicon.js";
import { confidenceBadge, renderConflictPrompt, renderDictionary, renderWordRow } from "../src/render.js";
import type { DictionaryDocument, GlossSuggestion, Utterance } from "../src/types.js";
import { morphsComplete, validateEntry, validateUtterance } from "../src/validation.js";
import { suggestionToMorphs } from "../src/workbench.js";

describe("confidence badge", () => {
  it("renders 5/6 as 83%", () => {
    expect(confidenceBadge(5 / 6)).toBe("83%");
  });

  it("renders bounds", () => {
    expect(confidenceBadge(0)).toBe("0%");
    expect(confidenceBadge(1)).toBe("100%");
  });
});

describe("entry validation mirror", () => {
  it("accepts a minimal valid entry", () => {
    const entry = emptyEntry();
    entry.headword = "kitab";
    entry.senses[0].gloss = "book";
    expect(validateEntry(entry)).toEqual([]);
  });

  it("rejects an empty senses list", () => {
    const entry = emptyEntry();
    entry.headword = "kitab";
    entry.senses = [];
    expect(validateEntry(entry).some((i) => i.path === "senses")).toBe(true);
  });

  it("requires gloss or definition per sense", () => {
    const entry = emptyEntry();
    entry.headword = "kitab";
    expect(validateEntry(entry).some((i) => i.path === "senses/0")).toBe(true);
  });
});

describe("lexicon editor", () => {
  it("renumbers senses after add and remove", () => {
    const editor = new LexiconEditor();
    editor.addSense();
    editor.addSense();
    expect(editor.entry.senses.map((s) => s.sense_no)).toEqual([1, 2, 3]);
    editor.removeSense(0);
    expect(editor.entry.senses.map((s) => s.sense_no)).toEqual([1, 2]);
  });

  it("disables save when the last sense is removed", () => {
    const editor = new LexiconEditor();
    editor.entry.headword = "kitab";
    editor.entry.senses[0].gloss = "book";
    expect(editor.canSave).toBe(true);
    editor.removeSense(0);
    expect(editor.canSave).toBe(false);
    expect(editor.issueFor("senses")).toBeDefined();
  });
});

describe("utterance validation mirror", () => {
  const utterance: Utterance = {
    phrase: "kitablar",
    words: [
      {
        surface: "kitablar",
        morphs: [
          { form: "kitab", gloss: "book", type: "root" },
          { form: "lar", gloss: "PL", type: "suffix" },
        ],
      },
    ],
    glossed: true,
  };

  it("accepts an aligned glossed utterance", () => {
    expect(validateUtterance(utterance)).toEqual([]);
    expect(morphsComplete(utterance)).toBe(true);
  });

  it("flags a missing gloss", () => {
    const broken = structuredClone(utterance);
    broken.words[0].morphs[1].gloss = "";
    expect(morphsComplete(broken)).toBe(false);
    expect(validateUtterance(broken).some((i) => i.path.endsWith("gloss"))).toBe(true);
  });

  it("flags surfaces that do not rejoin to the phrase", () => {
    const broken = structuredClone(utterance);
    broken.phrase = "kitablar X";
    expect(validateUtterance(broken).some((i) => i.path === "words")).toBe(true);
  });
});

describe("workbench rendering", () => {
  const suggestion: GlossSuggestion = {
    morphs: [
      { form: "kitab", type: "root", gloss: "book", confidence: 1 },
      { form: "lar", type: "suffix", gloss: "PL", confidence: 5 / 6 },
    ],
    score: 3.9,
  };

  it("accept copies the suggestion morphs", () => {
    expect(suggestionToMorphs(suggestion)).toEqual([
      { form: "kitab", gloss: "book", type: "root" },
      { form: "lar", gloss: "PL", type: "suffix" },
    ]);
  });

  it("shows the confidence badge on the row", () => {
    const html = renderWordRow(
      { surface: "kitablar", suggestion, morphs: [], accepted: false },
      0,
      false,
    );
    expect(html).toContain("83%");
    expect(html).toContain('class="accept"');
  });

  it("hides editing controls in read-only mode", () => {
    const html = renderWordRow(
      { surface: "kitablar", suggestion, morphs: [], accepted: false },
      0,
      true,
    );
    expect(html).not.toContain("<button");
  });

  it("conflict prompt offers reload-and-merge", () => {
    const html = renderConflictPrompt("3-abc");
    expect(html).toContain("reload-merge");
    expect(html).toContain("3-abc");
  });
});

describe("dictionary browser", () => {
  it("maps letters to the server's anchor scheme", () => {
    expect(sectionAnchor("ch")).toBe("letter-ch");
    expect(sectionAnchor("#")).toBe("letter-other");
  });

  it("renders sections in document order with anchors", () => {
    const doc: DictionaryDocument = {
      sections: [
        {
          letter: "ch",
          entries: [
            {
              entry_id: "e1",
              headword: "chai",
              display: "chai",
              pos: "n",
              senses: [{ sense_no: 1, gloss: "tea" }],
              variants: [],
            },
          ],
        },
        { letter: "c", entries: [] },
      ],
      reversal: [{ gloss: "tea", refs: [{ entry_id: "e1", display: "chai" }] }],
    };
    const html = renderDictionary(doc);
    expect(html.indexOf('id="letter-ch"')).toBeGreaterThan(-1);
    expect(html.indexOf('id="letter-ch"')).toBeLessThan(html.indexOf('id="letter-c"'));
    expect(html).toContain('href="#e1"');
    expect(html).toContain("Finderlist");
  });

  it("escapes entry content", () => {
    const doc: DictionaryDocument = {
      sections: [
        {
          letter: "a",
          entries: [
            {
              entry_id: "e2",
              headword: "<a>",
              display: "<a>",
              pos: "",
              senses: [{ sense_no: 1, gloss: 'say "hi"' }],
              variants: [],
            },
          ],
        },
      ],
      reversal: [],
    };
    const html = renderDictionary(doc);
    expect(html).toContain("&lt;a&gt;");
    expect(html).not.toContain("<a>>");
  });
});
