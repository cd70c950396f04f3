/**
 * DOM bootstrap: a small hash router over the controllers. Views:
 *
 *   #/login                      sign in
 *   #/projects                   project list
 *   #/p/<id>/lexicon             entry list + editor
 *   #/p/<id>/texts               text list -> workbench
 *   #/p/<id>/workbench/<tid>     glossing workbench
 *   #/p/<id>/dictionary          dictionary browser + exports
 */

import { ApiClient, ApiError } from "./api.js";
import { DictionaryBrowser, EXPORT_FORMATS } from "./dictionary.js";
import { LexiconEditor } from "./lexicon.js";
import {
  confidenceBadge,
  escapeHtml,
  renderConflictPrompt,
  renderDictionary,
  renderIssues,
  renderWordRow,
} from "./render.js";
import type { IgtText, Project, RoleName } from "./types.js";
import { Workbench } from "./workbench.js";

const api = new ApiClient("");
let session: { userId: string } | null = null;

function root(): HTMLElement {
  return document.getElementById("app")!;
}

function toast(message: string): void {
  const el = document.createElement("div");
  el.className = "toast";
  el.textContent = message;
  document.body.appendChild(el);
  setTimeout(() => el.remove(), 4000);
}

async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    return await work();
  } catch (err) {
    if (err instanceof ApiError && err.status === 401) {
      location.hash = "#/login";
      return undefined;
    }
    toast(err instanceof Error ? err.message : String(err));
    return undefined;
  }
}

function roleIn(project: Project): RoleName | null {
  return session ? (project.members[session.userId] ?? null) : null;
}

function canWrite(project: Project): boolean {
  const role = roleIn(project);
  return role === "owner" || role === "editor";
}

// --- views -------------------------------------------------------------------

function loginView(): void {
  root().innerHTML = `
    <h1>life</h1>
    <form id="login">
      <label>username <input name="username" autocomplete="username"></label>
      <label>password <input name="password" type="password"></label>
      <button type="submit">sign in</button>
      <p class="error" hidden></p>
    </form>`;
  const form = document.getElementById("login") as HTMLFormElement;
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const data = new FormData(form);
    try {
      const info = await api.login(
        String(data.get("username") ?? ""),
        String(data.get("password") ?? ""),
      );
      session = { userId: info.user_id };
      location.hash = "#/projects";
    } catch {
      const p = form.querySelector(".error") as HTMLElement;
      p.hidden = false;
      p.textContent = "sign-in failed";
    }
  });
}

async function projectsView(): Promise<void> {
  const projects = await guard(() => api.listProjects());
  if (!projects) return;
  const rows = projects.items
    .map(
      (p) => `
      <li>
        <strong>${escapeHtml(p.name)}</strong> (${escapeHtml(p.language_name || p.language_code)})
        — <a href="#/p/${p.id}/lexicon">lexicon</a>
        · <a href="#/p/${p.id}/texts">texts</a>
        · <a href="#/p/${p.id}/dictionary">dictionary</a>
      </li>`,
    )
    .join("");
  root().innerHTML = `<h1>projects</h1><ul class="projects">${rows || "<li>none yet</li>"}</ul>`;
}

async function lexiconView(projectId: string): Promise<void> {
  const project = await guard(() => api.getProject(projectId));
  if (!project) return;
  const editable = canWrite(project);
  const result = await guard(() => api.listEntries(projectId, { limit: 200 }));
  if (!result) return;
  const list = result.items
    .map(
      (e) =>
        `<li data-id="${e.id}"><a href="#" class="edit-entry" data-id="${e.id}">
         ${escapeHtml(e.headword)}</a> <span class="pos">${escapeHtml(e.pos ?? "")}</span></li>`,
    )
    .join("");
  root().innerHTML = `
    <h1>${escapeHtml(project.name)}: lexicon</h1>
    <ul class="entries">${list}</ul>
    ${editable ? '<button id="new-entry">new entry</button>' : ""}
    <div id="editor"></div>`;

  const entryById = new Map(result.items.map((e) => [e.id!, e]));

  function openEditor(entryId: string | null): void {
    const editor = new LexiconEditor(entryId ? entryById.get(entryId) : undefined);
    const host = document.getElementById("editor")!;

    function draw(): void {
      const entry = editor.entry;
      const senses = entry.senses
        .map(
          (s, i) => `
          <fieldset class="sense" data-index="${i}">
            <legend>sense ${s.sense_no}</legend>
            <label>gloss <input class="gloss" data-index="${i}"
                   value="${escapeHtml(s.gloss ?? "")}"></label>
            <label>definition <input class="definition" data-index="${i}"
                   value="${escapeHtml(s.definition ?? "")}"></label>
            <button type="button" class="remove-sense" data-index="${i}">remove</button>
          </fieldset>`,
        )
        .join("");
      host.innerHTML = `
        <form id="entry-form">
          <label>headword <input name="headword" value="${escapeHtml(entry.headword)}"></label>
          <label>pos <input name="pos" value="${escapeHtml(entry.pos ?? "")}"></label>
          ${senses}
          <button type="button" id="add-sense">add sense</button>
          <label class="upload">attach image/audio
            <input type="file" id="media-file"></label>
          <button type="submit" id="save-entry" ${editor.canSave && editable ? "" : "disabled"}>
            save</button>
          ${renderIssues(editor.issues())}
        </form>`;
      wire();
    }

    function syncFromForm(): void {
      const form = document.getElementById("entry-form") as HTMLFormElement;
      editor.entry.headword = (form.elements.namedItem("headword") as HTMLInputElement).value;
      editor.entry.pos = (form.elements.namedItem("pos") as HTMLInputElement).value;
      form.querySelectorAll<HTMLInputElement>("input.gloss").forEach((input) => {
        editor.entry.senses[Number(input.dataset.index)].gloss = input.value;
      });
      form.querySelectorAll<HTMLInputElement>("input.definition").forEach((input) => {
        const value = input.value;
        editor.entry.senses[Number(input.dataset.index)].definition = value || undefined;
      });
    }

    function wire(): void {
      const form = document.getElementById("entry-form") as HTMLFormElement;
      form.addEventListener("input", () => {
        syncFromForm();
        (document.getElementById("save-entry") as HTMLButtonElement).disabled =
          !(editor.canSave && editable);
      });
      document.getElementById("add-sense")!.addEventListener("click", () => {
        syncFromForm();
        editor.addSense();
        draw();
      });
      form.querySelectorAll<HTMLButtonElement>(".remove-sense").forEach((button) => {
        button.addEventListener("click", () => {
          syncFromForm();
          editor.removeSense(Number(button.dataset.index));
          draw();
        });
      });
      (document.getElementById("media-file") as HTMLInputElement).addEventListener(
        "change",
        async (event) => {
          const input = event.target as HTMLInputElement;
          const file = input.files?.[0];
          if (!file) return;
          const asset = await guard(() => api.uploadMedia(projectId, file, file.name));
          if (asset) {
            editor.attachMedia(asset.id);
            toast(`attached ${file.name}`);
          }
        },
      );
      form.addEventListener("submit", async (event) => {
        event.preventDefault();
        syncFromForm();
        const saved = await guard(() => editor.save(api, projectId));
        if (saved) {
          toast(`saved ${saved.headword}`);
          lexiconView(projectId);
        } else if (editor.serverIssues.length) {
          draw();
        }
      });
    }

    draw();
  }

  document.querySelectorAll<HTMLAnchorElement>(".edit-entry").forEach((link) => {
    link.addEventListener("click", (event) => {
      event.preventDefault();
      openEditor(link.dataset.id ?? null);
    });
  });
  document.getElementById("new-entry")?.addEventListener("click", () => openEditor(null));
}

async function textsView(projectId: string): Promise<void> {
  const texts = await guard(() => api.listTexts(projectId));
  if (!texts) return;
  const rows = texts.items
    .map(
      (t) =>
        `<li><a href="#/p/${projectId}/workbench/${t.id}">${escapeHtml(t.title || t.id)}</a>
         (${t.utterances.length} utterances)</li>`,
    )
    .join("");
  root().innerHTML = `<h1>texts</h1><ul>${rows || "<li>none yet</li>"}</ul>`;
}

async function workbenchView(projectId: string, textId: string): Promise<void> {
  const project = await guard(() => api.getProject(projectId));
  if (!project) return;
  const text = await guard(() => api.getText(projectId, textId));
  if (!text) return;
  const writable = canWrite(project);
  const workbench = new Workbench(api, projectId, textId, writable);
  let cursor = 0;

  async function openUtterance(index: number): Promise<void> {
    cursor = index;
    const fresh = (await guard(() => api.getText(projectId, textId))) as IgtText;
    if (!fresh || !fresh.utterances.length) {
      root().innerHTML = "<p>this text has no utterances yet</p>";
      return;
    }
    await guard(() => workbench.load(fresh.utterances[cursor], fresh.rev));
    draw();
  }

  function draw(): void {
    const utterance = workbench.current;
    const rows = workbench.rows
      .map((row, i) => renderWordRow(row, i, workbench.phase === "readonly"))
      .join("");
    root().innerHTML = `
      <h1>workbench: ${escapeHtml(utterance.phrase)}</h1>
      <p class="nav">
        <button id="prev" ${cursor === 0 ? "disabled" : ""}>&larr;</button>
        utterance ${cursor + 1}
        <button id="next">&rarr;</button>
      </p>
      ${rows}
      ${workbench.phase === "conflict" ? renderConflictPrompt(workbench.conflictRev) : ""}
      <p class="actions">
        ${
          workbench.phase === "readonly"
            ? "<em>read-only</em>"
            : `<button id="accept-all">accept all</button>
               <button id="save" ${workbench.canSave ? "" : "disabled"}>save</button>`
        }
        ${workbench.phase === "saved" ? '<button id="retrain">retrain model</button>' : ""}
      </p>`;
    wire();
  }

  function wire(): void {
    document.getElementById("prev")?.addEventListener("click", () => openUtterance(cursor - 1));
    document.getElementById("next")?.addEventListener("click", () => openUtterance(cursor + 1));
    document.querySelectorAll<HTMLButtonElement>("button.accept").forEach((button) => {
      button.addEventListener("click", () => {
        workbench.accept(Number(button.dataset.row));
        draw();
      });
    });
    document.getElementById("accept-all")?.addEventListener("click", () => {
      workbench.acceptAll();
      draw();
    });
    document.getElementById("save")?.addEventListener("click", async () => {
      await guard(() => workbench.save());
      draw();
    });
    document.querySelector(".reload-merge")?.addEventListener("click", async () => {
      await guard(() => workbench.reloadAndMerge());
      draw();
    });
    document.getElementById("retrain")?.addEventListener("click", async () => {
      const version = await guard(() => workbench.retrain());
      if (version !== undefined) toast(`model retrained (version ${version})`);
    });
  }

  await openUtterance(0);
}

async function dictionaryView(projectId: string): Promise<void> {
  const browser = new DictionaryBrowser(api, projectId);
  const doc = await guard(() => browser.load());
  if (!doc) return;
  const exports = EXPORT_FORMATS.map(
    (f) => `<button class="export" data-format="${f}">${f}</button>`,
  ).join(" ");
  root().innerHTML = `
    <h1>dictionary</h1>
    <p><input id="search" placeholder="headword prefix"> <span id="matches"></span></p>
    <p class="exports">${exports}</p>
    <div id="compiled">${renderDictionary(doc)}</div>`;

  document.getElementById("search")!.addEventListener("input", async (event) => {
    const prefix = (event.target as HTMLInputElement).value;
    const hits = await guard(() => browser.search(prefix));
    if (!hits) return;
    document.getElementById("matches")!.textContent = hits
      .map((e) => e.headword)
      .join(", ");
  });
  document.querySelectorAll<HTMLButtonElement>("button.export").forEach((button) => {
    button.addEventListener("click", async () => {
      const result = await guard(() => browser.download(button.dataset.format as never));
      if (!result) return;
      const url = URL.createObjectURL(result.data);
      const link = document.createElement("a");
      link.href = url;
      link.download = result.filename;
      link.click();
      URL.revokeObjectURL(url);
    });
  });
}

// --- router ---------------------------------------------------------------

async function route(): Promise<void> {
  const hash = location.hash || "#/login";
  const parts = hash.slice(2).split("/");
  if (!api.authenticated && parts[0] !== "login") {
    location.hash = "#/login";
    return;
  }
  if (parts[0] === "login") return loginView();
  if (parts[0] === "projects") return projectsView();
  if (parts[0] === "p" && parts[2] === "lexicon") return lexiconView(parts[1]);
  if (parts[0] === "p" && parts[2] === "texts") return textsView(parts[1]);
  if (parts[0] === "p" && parts[2] === "workbench") return workbenchView(parts[1], parts[3]);
  if (parts[0] === "p" && parts[2] === "dictionary") return dictionaryView(parts[1]);
  root().innerHTML = "<p>not found</p>";
}

window.addEventListener("hashchange", route);
window.addEventListener("DOMContentLoaded", route);

export { confidenceBadge };
