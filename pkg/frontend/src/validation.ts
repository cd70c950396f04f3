/**
 * Client-side validation mirroring the server's rules (a strict subset:
 * everything rejected here would also be rejected server-side, so the UI
 * never submits a request it knows will fail).
 */

import type { LexicalEntry, Utterance, ValidationIssue } from "./types.js";

export function validateEntry(entry: LexicalEntry): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const error = (path: string, message: string) =>
    issues.push({ severity: "error", path, message });

  if (!entry.headword || !entry.headword.trim()) {
    error("headword", "headword must be non-empty");
  }
  if ((entry.homonym_no ?? 1) < 1) {
    error("homonym_no", "homonym number must be at least 1");
  }
  if (!entry.senses.length) {
    error("senses", "an entry needs at least one sense");
  }
  entry.senses.forEach((sense, i) => {
    if (sense.sense_no !== i + 1) {
      error(`senses/${i}/sense_no`, `sense numbers must run 1..n (expected ${i + 1})`);
    }
    if (!sense.gloss && !sense.definition) {
      error(`senses/${i}`, "a sense needs a gloss or a definition");
    }
  });
  return issues;
}

export function validateUtterance(utterance: Utterance): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const error = (path: string, message: string) =>
    issues.push({ severity: "error", path, message });

  if (!utterance.phrase.trim()) {
    error("phrase", "phrase must be non-empty");
  }
  utterance.words.forEach((word, i) => {
    if (!word.surface) {
      error(`words/${i}/surface`, "word surface must be non-empty");
    }
    word.morphs.forEach((morph, j) => {
      const stripped = morph.form.replace(/^[-=]+|[-=]+$/g, "");
      if (!stripped) {
        error(`words/${i}/morphs/${j}/form`, "morph form is empty");
      } else if (stripped !== morph.form) {
        error(`words/${i}/morphs/${j}/form`, "write the position as the type, not as edge hyphens");
      }
      if (/\s/.test(morph.form)) {
        error(`words/${i}/morphs/${j}/form`, "morph form must not contain spaces");
      }
      if (utterance.glossed && !morph.gloss) {
        error(`words/${i}/morphs/${j}/gloss`, "every morph needs a gloss");
      }
    });
    if (utterance.glossed && !word.morphs.length) {
      error(`words/${i}/morphs`, "glossed utterances need every word analyzed");
    }
  });
  const joined = utterance.words.map((w) => w.surface).join(" ").split(/\s+/).join(" ").trim();
  const normalized = utterance.phrase.split(/\s+/).join(" ").trim();
  if (joined !== normalized) {
    error("words", "word surfaces do not rejoin to the phrase");
  }
  return issues;
}

/** Morph/gloss pairing check that gates the workbench save button. */
export function morphsComplete(utterance: Utterance): boolean {
  return utterance.words.every(
    (word) => word.morphs.length > 0 && word.morphs.every((m) => m.form && m.gloss),
  );
}
