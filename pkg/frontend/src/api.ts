/**
 * Thin typed client for the /api/v1 surface. All domain state flows through
 * these calls; the UI never persists anything locally.
 */

import type {
  ApiErrorBody,
  DictionaryDocument,
  GlossSuggestion,
  IgtText,
  LexicalEntry,
  ListResponse,
  Project,
  SessionInfo,
  Utterance,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(`${status}: ${body.message}`);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }

  get isForbidden(): boolean {
    return this.status === 403;
  }
}

export interface ExportResult {
  data: Blob;
  mediaType: string;
  filename: string;
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let body: ApiErrorBody = { code: "error", message: response.statusText };
  try {
    const parsed = await response.json();
    if (parsed && parsed.error) body = parsed.error;
  } catch {
    /* non-JSON error body */
  }
  throw new ApiError(response.status, body);
}

export class ApiClient {
  private token: string | null = null;

  constructor(readonly baseUrl: string = "") {}

  setToken(token: string | null): void {
    this.token = token;
  }

  get authenticated(): boolean {
    return this.token !== null;
  }

  private headers(json = true): Record<string, string> {
    const headers: Record<string, string> = {};
    if (json) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers: this.headers(body !== undefined),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    await raiseForStatus(response);
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  // --- auth ---------------------------------------------------------------

  async login(username: string, password: string): Promise<SessionInfo> {
    const session = await this.request<SessionInfo>("POST", "/auth/login", {
      username,
      password,
    });
    this.token = session.token;
    return session;
  }

  async logout(): Promise<void> {
    await this.request<void>("POST", "/auth/logout");
    this.token = null;
  }

  // --- projects -----------------------------------------------------------

  listProjects(): Promise<ListResponse<Project>> {
    return this.request("GET", "/projects");
  }

  getProject(id: string): Promise<Project> {
    return this.request("GET", `/projects/${id}`);
  }

  createProject(body: Partial<Project>): Promise<Project> {
    return this.request("POST", "/projects", body);
  }

  setMemberRole(projectId: string, userId: string, role: string): Promise<unknown> {
    return this.request("PUT", `/projects/${projectId}/members/${userId}`, { role });
  }

  // --- entries ------------------------------------------------------------

  listEntries(
    projectId: string,
    options: { q?: string; pos?: string; offset?: number; limit?: number } = {},
  ): Promise<ListResponse<LexicalEntry>> {
    const params = new URLSearchParams();
    if (options.q !== undefined) params.set("q", options.q);
    if (options.pos) params.set("pos", options.pos);
    if (options.offset) params.set("offset", String(options.offset));
    if (options.limit) params.set("limit", String(options.limit));
    const query = params.toString();
    return this.request("GET", `/projects/${projectId}/entries${query ? "?" + query : ""}`);
  }

  createEntry(projectId: string, entry: LexicalEntry): Promise<LexicalEntry> {
    return this.request("POST", `/projects/${projectId}/entries`, entry);
  }

  updateEntry(projectId: string, entry: LexicalEntry): Promise<LexicalEntry> {
    return this.request("PUT", `/projects/${projectId}/entries/${entry.id}`, entry);
  }

  // --- texts & utterances -------------------------------------------------

  listTexts(projectId: string): Promise<ListResponse<IgtText>> {
    return this.request("GET", `/projects/${projectId}/texts`);
  }

  getText(projectId: string, textId: string): Promise<IgtText> {
    return this.request("GET", `/projects/${projectId}/texts/${textId}`);
  }

  createText(projectId: string, title: string, utterances: Utterance[] = []): Promise<IgtText> {
    return this.request("POST", `/projects/${projectId}/texts`, { title, utterances });
  }

  saveUtterance(
    projectId: string,
    textId: string,
    utterance: Utterance,
    textRev: string,
  ): Promise<{ utterance: Utterance; rev: string }> {
    return this.request(
      "PUT",
      `/projects/${projectId}/texts/${textId}/utterances/${utterance.id}`,
      { ...utterance, rev: textRev },
    );
  }

  appendUtterance(
    projectId: string,
    textId: string,
    utterance: Utterance,
    textRev: string,
  ): Promise<{ utterance: Utterance; rev: string }> {
    return this.request("POST", `/projects/${projectId}/texts/${textId}/utterances`, {
      ...utterance,
      rev: textRev,
    });
  }

  // --- glossing -------------------------------------------------------------

  async suggest(projectId: string, words: string[]): Promise<GlossSuggestion[]> {
    const body = await this.request<{ suggestions: GlossSuggestion[] }>(
      "POST",
      `/projects/${projectId}/gloss/suggest`,
      { words },
    );
    return body.suggestions;
  }

  retrain(projectId: string): Promise<{ version: number; trained_on: number }> {
    return this.request("POST", `/projects/${projectId}/gloss/retrain`);
  }

  // --- media ----------------------------------------------------------------

  async uploadMedia(projectId: string, file: Blob, filename: string): Promise<{ id: string; sha256: string }> {
    const form = new FormData();
    form.append("file", file, filename);
    const response = await fetch(`${this.baseUrl}/api/v1/projects/${projectId}/media`, {
      method: "POST",
      headers: this.headers(false),
      body: form,
    });
    await raiseForStatus(response);
    return (await response.json()) as { id: string; sha256: string };
  }

  // --- dictionary & export ----------------------------------------------------

  dictionary(projectId: string): Promise<DictionaryDocument> {
    return this.request("GET", `/projects/${projectId}/dictionary`);
  }

  async fetchExport(projectId: string, format: string): Promise<ExportResult> {
    const response = await fetch(
      `${this.baseUrl}/api/v1/projects/${projectId}/export?format=${encodeURIComponent(format)}`,
      { headers: this.headers(false) },
    );
    await raiseForStatus(response);
    const disposition = response.headers.get("content-disposition") ?? "";
    const match = /filename="([^"]+)"/.exec(disposition);
    return {
      data: await response.blob(),
      mediaType: response.headers.get("content-type") ?? "application/octet-stream",
      filename: match ? match[1] : `export.${format}`,
    };
  }
}
