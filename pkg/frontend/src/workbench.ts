/**
 * Glossing workbench controller, decoupled from the DOM so the save/merge
 * logic is testable end-to-end against a live server.
 *
 * Flow: load an utterance -> fetch suggestions for all its words in one
 * batch -> the user accepts a suggestion per word (one click) or edits the
 * morph rows -> save writes the utterance with the text's revision. A 409
 * moves the controller into the "conflict" phase (the view renders a
 * reload-and-merge prompt); reloadAndMerge re-fetches and re-applies local
 * edits. After a successful save the UI offers retraining.
 */

import { ApiClient, ApiError } from "./api.js";
import type { GlossSuggestion, Morph, Utterance, Word } from "./types.js";
import { morphsComplete, validateUtterance } from "./validation.js";

export type WorkbenchPhase =
  | "loading"
  | "editing"
  | "saving"
  | "conflict"
  | "saved"
  | "readonly";

export interface WordRow {
  surface: string;
  suggestion: GlossSuggestion | null;
  morphs: Morph[];
  accepted: boolean;
}

export function suggestionToMorphs(suggestion: GlossSuggestion): Morph[] {
  return suggestion.morphs.map((m) => ({ form: m.form, gloss: m.gloss, type: m.type }));
}

export class Workbench {
  phase: WorkbenchPhase = "loading";
  rows: WordRow[] = [];
  dirty = false;
  error: string | null = null;
  conflictRev: string | null = null;

  private utterance!: Utterance;
  private textRev = "";

  constructor(
    private readonly api: ApiClient,
    private readonly projectId: string,
    private readonly textId: string,
    readonly canWrite: boolean,
  ) {}

  get current(): Utterance {
    return this.utterance;
  }

  get revision(): string {
    return this.textRev;
  }

  async load(utterance: Utterance, textRev: string): Promise<void> {
    this.utterance = utterance;
    this.textRev = textRev;
    this.phase = "loading";
    const words = utterance.words.map((w) => w.surface);
    const suggestions = words.length ? await this.api.suggest(this.projectId, words) : [];
    this.rows = utterance.words.map((word, i) => ({
      surface: word.surface,
      suggestion: suggestions[i] ?? null,
      morphs: word.morphs.map((m) => ({ ...m })),
      accepted: false,
    }));
    this.dirty = false;
    this.error = null;
    this.conflictRev = null;
    this.phase = this.canWrite ? "editing" : "readonly";
  }

  accept(index: number): void {
    const row = this.rows[index];
    if (!row || !row.suggestion || this.phase === "readonly") return;
    row.morphs = suggestionToMorphs(row.suggestion);
    row.accepted = true;
    this.dirty = true;
  }

  acceptAll(): void {
    this.rows.forEach((_, i) => this.accept(i));
  }

  editMorphs(index: number, morphs: Morph[]): void {
    if (this.phase === "readonly") return;
    this.rows[index].morphs = morphs;
    this.rows[index].accepted = false;
    this.dirty = true;
  }

  buildUtterance(): Utterance {
    const words: Word[] = this.utterance.words.map((word, i) => ({
      ...word,
      morphs: this.rows[i].morphs.map((m) => ({ ...m })),
    }));
    const glossed = words.every((w) => w.morphs.length > 0 && w.morphs.every((m) => m.gloss));
    return { ...this.utterance, words, glossed };
  }

  /** Save is enabled only when the morph/gloss pairing is complete. */
  get canSave(): boolean {
    if (!this.canWrite || this.phase === "saving") return false;
    const candidate = this.buildUtterance();
    return (
      this.dirty &&
      morphsComplete(candidate) &&
      validateUtterance(candidate).filter((i) => i.severity === "error").length === 0
    );
  }

  async save(): Promise<boolean> {
    if (!this.canSave) return false;
    this.phase = "saving";
    const candidate = this.buildUtterance();
    try {
      const result = await this.api.saveUtterance(
        this.projectId,
        this.textId,
        candidate,
        this.textRev,
      );
      this.utterance = result.utterance;
      this.textRev = result.rev;
      this.dirty = false;
      this.phase = "saved";
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.isConflict) {
        // Someone else wrote the text since we loaded it: surface the
        // reload-and-merge prompt instead of overwriting silently.
        this.conflictRev = err.body.current_rev ?? null;
        this.phase = "conflict";
        return false;
      }
      if (err instanceof ApiError && err.isForbidden) {
        this.phase = "readonly";
        return false;
      }
      this.error = err instanceof Error ? err.message : String(err);
      this.phase = "editing";
      throw err;
    }
  }

  /** Conflict resolution: take the server's latest text, keep our morph
   * edits for words whose surfaces still match. */
  async reloadAndMerge(): Promise<void> {
    const text = await this.api.getText(this.projectId, this.textId);
    const fresh = text.utterances.find((u) => u.id === this.utterance.id);
    if (!fresh) {
      this.error = "the utterance was deleted on the server";
      this.phase = "editing";
      return;
    }
    const local = this.rows;
    await this.load(fresh, text.rev);
    this.rows.forEach((row, i) => {
      const mine = local[i];
      if (mine && mine.surface === row.surface && (mine.accepted || mine.morphs.length)) {
        row.morphs = mine.morphs;
        row.accepted = mine.accepted;
      }
    });
    this.dirty = true;
    this.phase = "editing";
  }

  async retrain(): Promise<number> {
    const result = await this.api.retrain(this.projectId);
    return result.version;
  }
}
