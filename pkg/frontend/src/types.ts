/**
 * Wire types for the /api/v1 surface. Field names mirror the server's JSON
 * exactly; optional fields are omitted (not null) on the wire.
 */

export interface SessionInfo {
  token: string;
  user_id: string;
  expires_at: string;
}

export type RoleName = "owner" | "editor" | "viewer";

export interface Project {
  id: string;
  name: string;
  slug: string;
  language_name: string;
  language_code: string;
  alphabet: string[];
  pos_inventory: string[];
  members: Record<string, RoleName>;
  created_at: string;
  rev: string;
}

export interface SenseExample {
  vernacular: string;
  translation: string;
}

export interface Sense {
  sense_no: number;
  gloss?: string;
  definition?: string;
  semantic_domain?: string;
  examples?: SenseExample[];
}

export interface LexicalEntry {
  id?: string;
  project_id?: string;
  headword: string;
  homonym_no?: number;
  pos?: string;
  senses: Sense[];
  variants?: string[];
  media?: string[];
  extras?: [string, string][];
  created_at?: string;
  modified_at?: string;
  rev?: string;
}

export type MorphKind = "prefix" | "root" | "suffix" | "clitic";

export interface Morph {
  form: string;
  gloss: string;
  type: MorphKind;
}

export interface Word {
  surface: string;
  morphs: Morph[];
  pos?: string;
}

export interface Utterance {
  id?: string;
  phrase: string;
  words: Word[];
  translation?: { text: string; lang: string };
  media_ref?: { asset_id: string; start_ms: number; end_ms: number };
  glossed: boolean;
}

export interface IgtText {
  id: string;
  project_id: string;
  title: string;
  utterances: Utterance[];
  rev: string;
}

export interface SuggestionMorph {
  form: string;
  type: MorphKind;
  gloss: string;
  confidence: number;
}

export interface GlossSuggestion {
  morphs: SuggestionMorph[];
  score: number;
}

export interface ValidationIssue {
  severity: "error" | "warning";
  path: string;
  message: string;
}

export interface DictionarySense {
  sense_no: number;
  gloss?: string;
  definition?: string;
  semantic_domain?: string;
  examples?: SenseExample[];
}

export interface DictionaryEntryBlock {
  entry_id: string;
  headword: string;
  display: string;
  pos: string;
  senses: DictionarySense[];
  variants: string[];
}

export interface DictionarySection {
  letter: string;
  entries: DictionaryEntryBlock[];
}

export interface ReversalRef {
  entry_id: string;
  display: string;
}

export interface DictionaryDocument {
  sections: DictionarySection[];
  reversal: { gloss: string; refs: ReversalRef[] }[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  current_rev?: string | null;
  supported?: string[];
  issues?: ValidationIssue[];
  path?: string | null;
  line?: number | null;
}

export interface ListResponse<T> {
  items: T[];
  total?: number;
}
