/**
 * Dictionary browser: letter-section navigation over the server-compiled
 * document, headword-prefix search, and export downloads.
 */

import { ApiClient, ExportResult } from "./api.js";
import type { DictionaryDocument, LexicalEntry } from "./types.js";

export const EXPORT_FORMATS = ["json", "csv", "sfm", "ontolex-ttl", "ligt-ttl", "nt"] as const;
export type ExportFormat = (typeof EXPORT_FORMATS)[number];

/** Anchor scheme shared with the server-side HTML renderer. */
export function sectionAnchor(letter: string): string {
  return letter === "#" ? "letter-other" : `letter-${letter}`;
}

export class DictionaryBrowser {
  doc: DictionaryDocument | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly projectId: string,
  ) {}

  async load(): Promise<DictionaryDocument> {
    this.doc = await this.api.dictionary(this.projectId);
    return this.doc;
  }

  get letters(): string[] {
    return (this.doc?.sections ?? []).map((s) => s.letter);
  }

  async search(prefix: string): Promise<LexicalEntry[]> {
    const result = await this.api.listEntries(this.projectId, { q: prefix });
    return result.items;
  }

  download(format: ExportFormat): Promise<ExportResult> {
    return this.api.fetchExport(this.projectId, format);
  }
}
