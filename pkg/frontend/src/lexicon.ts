/**
 * Lexicon entry editor controller: dynamic sense rows with automatic
 * renumbering, client-side validation gating the save button, media
 * attachment after upload.
 */

import { ApiClient } from "./api.js";
import type { LexicalEntry, Sense, ValidationIssue } from "./types.js";
import { validateEntry } from "./validation.js";

export function emptyEntry(): LexicalEntry {
  return { headword: "", homonym_no: 1, pos: "", senses: [{ sense_no: 1, gloss: "" }] };
}

export class LexiconEditor {
  entry: LexicalEntry;
  serverIssues: ValidationIssue[] = [];

  constructor(entry?: LexicalEntry) {
    this.entry = entry ? structuredClone(entry) : emptyEntry();
  }

  addSense(): Sense {
    const sense: Sense = { sense_no: this.entry.senses.length + 1, gloss: "" };
    this.entry.senses.push(sense);
    this.renumber();
    return sense;
  }

  removeSense(index: number): void {
    this.entry.senses.splice(index, 1);
    this.renumber();
  }

  private renumber(): void {
    this.entry.senses.forEach((sense, i) => {
      sense.sense_no = i + 1;
    });
  }

  issues(): ValidationIssue[] {
    return validateEntry(this.entry);
  }

  /** Save stays disabled while any client-side check fails (the client
   * checks are a strict subset of the server's). */
  get canSave(): boolean {
    return this.issues().length === 0;
  }

  issueFor(path: string): ValidationIssue | undefined {
    return [...this.issues(), ...this.serverIssues].find((i) => i.path === path);
  }

  attachMedia(assetId: string): void {
    this.entry.media = [...(this.entry.media ?? []), assetId];
  }

  async save(api: ApiClient, projectId: string): Promise<LexicalEntry> {
    this.serverIssues = [];
    try {
      this.entry = this.entry.id
        ? await api.updateEntry(projectId, this.entry)
        : await api.createEntry(projectId, this.entry);
      return this.entry;
    } catch (err) {
      const issues = (err as { body?: { issues?: ValidationIssue[] } }).body?.issues;
      if (issues) this.serverIssues = issues;
      throw err;
    }
  }
}
