/** Pure HTML-string renderers.
 *
 * Every number shown is copied verbatim from an API payload — no statistics
 * are computed client-side — and every entity reference is a hash link, so
 * navigation never reloads the page.
 */

import {
  ApiError,
  BusinessDetail,
  CoverageReport,
  HouseholdDetail,
  MentionList,
  PersonList,
  PersonSummary,
  TextSearchResult,
  TimelineResult,
  serialOf,
} from "./api.js";
import { formatRoute } from "./routes.js";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** The API demarcates the matched span with [[...]]; render it as <mark>. */
export function highlightSnippet(snippet: string): string {
  const escaped = escapeHtml(snippet);
  return escaped.replace(/\[\[(.*?)\]\]/g, "<mark>$1</mark>");
}

export function errorBanner(error: ApiError): string {
  return `<div class="banner error" role="alert">${escapeHtml(error.code)}: ${escapeHtml(error.message)}</div>`;
}

export function validationMessage(message: string): string {
  return `<div class="banner validation">${escapeHtml(message)}</div>`;
}

function personLink(id: string, label: string): string {
  const href = formatRoute({ kind: "person", id: serialOf(id) });
  return `<a href="${href}">${escapeHtml(label)}</a>`;
}

function sourceLink(url: string | null): string {
  if (!url) return "";
  return ` <a class="source" href="${escapeHtml(url)}" target="_blank" rel="noopener">source</a>`;
}

export function renderSearch(query: string, result: PersonList | null): string {
  const form = `
    <form id="search-form" class="query-form">
      <input id="search-input" name="q" type="search" placeholder="Name, e.g. Mayor Simpson"
             value="${escapeHtml(query)}" />
      <button type="submit">Search</button>
    </form>`;
  if (result === null) {
    return `<section class="search">${form}</section>`;
  }
  const rows = result.results
    .map(
      (p) => `
      <tr>
        <td>${personLink(p.id, p.display_name)}</td>
        <td>${escapeHtml(p.census_ref ?? "—")}</td>
        <td class="num">${p.mention_count}</td>
      </tr>`
    )
    .join("");
  const table = result.results.length
    ? `<table class="results">
        <thead><tr><th>Name</th><th>Census record</th><th>Mentions</th></tr></thead>
        <tbody>${rows}</tbody>
      </table>`
    : `<p class="empty">No matches for “${escapeHtml(query)}”.</p>`;
  return `<section class="search">${form}
    <p class="meta">${result.total} result(s)</p>${table}</section>`;
}

export function renderPerson(
  person: PersonSummary,
  mentions: MentionList,
  timeline: TimelineResult
): string {
  const attrs = Object.entries(person.census)
    .map(
      ([key, value]) => `
      <tr><th>${escapeHtml(key)}</th>
          <td>${escapeHtml(String(value ?? "—"))}</td>
          <td class="badge">census</td></tr>`
    )
    .join("");
  const occupations = person.occupations
    .map(
      (o) => `
      <tr><th>occupation</th>
          <td>${escapeHtml(o.value)}</td>
          <td class="badge">${escapeHtml(o.source.kind)} ${escapeHtml(o.source.ref)}</td></tr>`
    )
    .join("");
  const offices = person.offices
    .map(
      (title) => `
      <tr><th>office</th>
          <td>${escapeHtml(title)}</td>
          <td class="badge">office</td></tr>`
    )
    .join("");
  const household = person.household
    ? `<section class="household-panel">
        <h3>Household ${escapeHtml(person.household.household_id)}</h3>
        <p><a href="${formatRoute({ kind: "household", id: serialOf(person.household.id) })}">
          ${person.household.member_count} member(s)${person.household.is_institution ? " (institution)" : ""}</a></p>
      </section>`
    : "";
  const mentionItems = mentions.mentions
    .map(
      (m) => `
      <li>
        <span class="date">${escapeHtml(m.date)} p.${m.page}</span>
        <span class="snippet">${m.snippet ? highlightSnippet(m.snippet) : escapeHtml(m.surface)}</span>
        <span class="confidence">confidence ${m.confidence}</span>${sourceLink(m.source_url)}
      </li>`
    )
    .join("");
  const mentionPanel =
    mentions.mentions.length > 0
      ? `<ul class="mentions">${mentionItems}</ul>`
      : `<p class="empty">No mentions in corpus.</p>`;
  const timelineItems = timeline.entries
    .map(
      (e) => `
      <li class="${escapeHtml(e.kind)}">
        <span class="date">${escapeHtml(e.date ?? "undated")}</span>
        <span class="label">${highlightSnippet(e.label)}</span>
      </li>`
    )
    .join("");
  return `<article class="person">
    <h2>${escapeHtml(person.display_name)}</h2>
    <p class="meta">mentioned ${person.mention_count} time(s) in the corpus</p>
    <table class="attributes"><tbody>${attrs}${occupations}${offices}</tbody></table>
    ${household}
    <h3>Mentions</h3>
    ${mentionPanel}
    <h3>Timeline</h3>
    <ol class="timeline">${timelineItems}</ol>
  </article>`;
}

export function renderHousehold(detail: HouseholdDetail): string {
  const rows = detail.members
    .map(
      (m) => `
      <tr>
        <td>${personLink(m.id, m.display_name)}</td>
        <td>${escapeHtml(m.relation)}</td>
        <td class="num">${m.mention_count}</td>
      </tr>`
    )
    .join("");
  const warnings = detail.warnings.length
    ? `<div class="banner validation">${detail.warnings.map(escapeHtml).join("; ")}</div>`
    : "";
  return `<article class="household">
    <h2>Household ${escapeHtml(detail.household_id)}${detail.is_institution ? " (institution)" : ""}</h2>
    ${warnings}
    <table class="results">
      <thead><tr><th>Member</th><th>Relation</th><th>Mentions</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
  </article>`;
}

export function renderBusiness(detail: BusinessDetail): string {
  const mentions = detail.mentions
    .map(
      (m) => `
      <li>
        <span class="date">${escapeHtml(m.date)} p.${m.page}</span>
        <span class="snippet">${m.snippet ? highlightSnippet(m.snippet) : escapeHtml(m.surface)}</span>${sourceLink(m.source_url)}
      </li>`
    )
    .join("");
  return `<article class="business">
    <h2>${escapeHtml(detail.name)}</h2>
    <p class="meta">${escapeHtml(detail.category ?? "")}${detail.address ? ` — ${escapeHtml(detail.address)}` : ""}</p>
    <h3>Mentions</h3>
    ${detail.mentions.length ? `<ul class="mentions">${mentions}</ul>` : `<p class="empty">No mentions in corpus.</p>`}
  </article>`;
}

export function renderCoverageForm(n: number | null, seed: number | null): string {
  return `
    <form id="coverage-form" class="query-form">
      <label>sample size <input id="coverage-n" name="n" type="number" min="1"
             value="${n === null ? "" : n}" /></label>
      <label>seed <input id="coverage-seed" name="seed" type="number"
             value="${seed === null ? "" : seed}" /></label>
      <button type="submit">Run experiment</button>
    </form>`;
}

export function renderCoverage(report: CoverageReport): string {
  const rows = report.sampled
    .map(
      (s) => `
      <tr>
        <td>${personLink(s.person, s.display_name)}</td>
        <td>${escapeHtml(s.household ?? "—")}</td>
        <td class="${s.covered ? "covered" : "uncovered"}">${s.covered ? "covered" : "not covered"}</td>
      </tr>`
    )
    .join("");
  return `<section class="coverage-report">
    <p class="meta">sample of ${report.sample_size} (seed ${report.seed})</p>
    <p class="fraction">covered fraction: <strong>${report.covered_fraction}</strong></p>
    <table class="results">
      <thead><tr><th>Person</th><th>Household</th><th>Status</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
  </section>`;
}

export function renderTextSearch(phrase: string, result: TextSearchResult | null): string {
  const form = `
    <form id="text-form" class="query-form">
      <input id="text-input" name="phrase" type="search" placeholder="Phrase (up to 3 words)"
             value="${escapeHtml(phrase)}" />
      <button type="submit">Find in pages</button>
    </form>`;
  if (result === null) {
    return `<section class="textsearch">${form}</section>`;
  }
  const hits = result.results
    .map(
      (h) => `
      <li>
        <span class="date">${escapeHtml(h.date)} p.${h.page}</span>
        <span class="snippet">${highlightSnippet(h.snippet)}</span>${sourceLink(h.source_url)}
      </li>`
    )
    .join("");
  return `<section class="textsearch">${form}
    <p class="meta">${result.total} occurrence(s)</p>
    ${result.results.length ? `<ul class="mentions">${hits}</ul>` : `<p class="empty">No occurrences.</p>`}
  </section>`;
}

export function renderNotFound(message: string): string {
  return `<section class="notfound"><h2>Not found</h2><p>${escapeHtml(message)}</p>
    <p><a href="#/search">back to search</a></p></section>`;
}
