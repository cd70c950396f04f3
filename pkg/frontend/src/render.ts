/**
 * HTML string renderers for the views. Pure functions of their inputs so the
 * markup is unit-testable without a DOM; main.ts owns insertion and event
 * wiring.
 */

import type { WordRow } from "./workbench.js";
import type { DictionaryDocument, ValidationIssue } from "./types.js";
import { sectionAnchor } from "./dictionary.js";

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Confidence as a whole percent, e.g. 5/6 -> "83%". */
export function confidenceBadge(confidence: number): string {
  return `${Math.round(confidence * 100)}%`;
}

export function renderWordRow(row: WordRow, index: number, readonly: boolean): string {
  const morphs = row.morphs
    .map(
      (m) => `
      <span class="morph ${escapeHtml(m.type)}">
        <span class="form">${escapeHtml(m.form)}</span>
        <span class="gloss">${escapeHtml(m.gloss)}</span>
      </span>`,
    )
    .join("");
  const suggestion = row.suggestion
    ? row.suggestion.morphs
        .map(
          (m) => `
        <span class="sug-morph">
          ${escapeHtml(m.form)}=${escapeHtml(m.gloss)}
          <span class="badge">${confidenceBadge(m.confidence)}</span>
        </span>`,
        )
        .join("")
    : '<span class="no-suggestion">no suggestion</span>';
  const acceptButton = readonly
    ? ""
    : `<button class="accept" data-row="${index}">accept</button>`;
  return `
  <div class="word-row${row.accepted ? " accepted" : ""}" data-row="${index}">
    <div class="surface">${escapeHtml(row.surface)}</div>
    <div class="suggestion">${suggestion}${acceptButton}</div>
    <div class="morphs">${morphs}</div>
  </div>`;
}

export function renderConflictPrompt(currentRev: string | null): string {
  return `
  <div class="conflict-prompt" role="alertdialog">
    <p>This text changed on the server while you were editing
       ${currentRev ? `(now at revision ${escapeHtml(currentRev)})` : ""}.</p>
    <button class="reload-merge">Reload &amp; merge my edits</button>
  </div>`;
}

export function renderIssues(issues: ValidationIssue[]): string {
  if (!issues.length) return "";
  const rows = issues
    .map(
      (i) =>
        `<li class="${i.severity}" data-path="${escapeHtml(i.path)}">${escapeHtml(i.message)}</li>`,
    )
    .join("");
  return `<ul class="issues">${rows}</ul>`;
}

export function renderDictionary(doc: DictionaryDocument): string {
  const nav = doc.sections
    .map(
      (s) =>
        `<a href="#${escapeHtml(sectionAnchor(s.letter))}">${escapeHtml(s.letter)}</a>`,
    )
    .join(" ");
  const sections = doc.sections
    .map((section) => {
      const entries = section.entries
        .map(
          (e) => `
        <article class="entry" id="${escapeHtml(e.entry_id)}">
          <span class="headword">${escapeHtml(e.display)}</span>
          ${e.pos ? `<span class="pos">${escapeHtml(e.pos)}</span>` : ""}
          <ol class="senses">${e.senses
            .map(
              (s) =>
                `<li>${escapeHtml(s.gloss ?? "")}${
                  s.definition ? ` — ${escapeHtml(s.definition)}` : ""
                }</li>`,
            )
            .join("")}</ol>
        </article>`,
        )
        .join("");
      return `
      <section class="letter" id="${escapeHtml(sectionAnchor(section.letter))}">
        <h2>${escapeHtml(section.letter)}</h2>${entries}
      </section>`;
    })
    .join("");
  const reversal = doc.reversal.length
    ? `<section class="finderlist" id="finderlist"><h2>Finderlist</h2>${doc.reversal
        .map(
          (row) =>
            `<div class="reversal"><span class="gloss">${escapeHtml(row.gloss)}</span>: ${row.refs
              .map((r) => `<a href="#${escapeHtml(r.entry_id)}">${escapeHtml(r.display)}</a>`)
              .join(", ")}</div>`,
        )
        .join("")}</section>`
    : "";
  return `<nav class="letters">${nav}</nav>${sections}${reversal}`;
}
