/** SPA wiring: route dispatch, data loading, and form handling.
 *
 * Route changes bump a request generation counter; a stale response (an
 * earlier in-flight request finishing after a navigation) is dropped, so
 * the last navigation always wins.
 */

import {
  apiGet,
  BusinessDetail,
  CoverageReport,
  HouseholdDetail,
  MentionList,
  PersonList,
  PersonSummary,
  TextSearchResult,
  TimelineResult,
} from "./api.js";
import {
  errorBanner,
  renderBusiness,
  renderCoverage,
  renderCoverageForm,
  renderHousehold,
  renderNotFound,
  renderPerson,
  renderSearch,
  renderTextSearch,
  validationMessage,
} from "./render.js";
import { formatRoute, parseRoute, ViewRoute } from "./routes.js";

let generation = 0;

function view(): HTMLElement {
  return document.getElementById("view") as HTMLElement;
}

function setView(html: string): void {
  view().innerHTML = html;
}

async function show(route: ViewRoute): Promise<void> {
  const mine = ++generation;
  const fresh = () => generation === mine;

  switch (route.kind) {
    case "search": {
      if (!route.query) {
        setView(renderSearch("", null));
        break;
      }
      const result = await apiGet<PersonList>(
        `/api/persons?q=${encodeURIComponent(route.query)}`
      );
      if (!fresh()) return;
      setView(result.ok ? renderSearch(route.query, result.data) : errorBanner(result.error));
      break;
    }
    case "person": {
      const [person, mentions, timeline] = await Promise.all([
        apiGet<PersonSummary>(`/api/persons/${route.id}`),
        apiGet<MentionList>(`/api/persons/${route.id}/mentions`),
        apiGet<TimelineResult>(`/api/persons/${route.id}/timeline`),
      ]);
      if (!fresh()) return;
      if (!person.ok) {
        setView(
          person.error.code === "not_found"
            ? renderNotFound(person.error.message)
            : errorBanner(person.error)
        );
        return;
      }
      if (!mentions.ok || !timeline.ok) {
        setView(errorBanner(!mentions.ok ? mentions.error : (timeline as { ok: false; error: { code: string; message: string } }).error));
        return;
      }
      setView(renderPerson(person.data, mentions.data, timeline.data));
      break;
    }
    case "household": {
      const result = await apiGet<HouseholdDetail>(`/api/households/${route.id}`);
      if (!fresh()) return;
      if (!result.ok) {
        setView(
          result.error.code === "not_found"
            ? renderNotFound(result.error.message)
            : errorBanner(result.error)
        );
        return;
      }
      setView(renderHousehold(result.data));
      break;
    }
    case "business": {
      const result = await apiGet<BusinessDetail>(`/api/businesses/${route.id}`);
      if (!fresh()) return;
      setView(result.ok ? renderBusiness(result.data) : errorBanner(result.error));
      break;
    }
    case "coverage": {
      const form = renderCoverageForm(route.n, route.seed);
      if (route.n === null || route.seed === null) {
        setView(`<section class="coverage">${form}</section>`);
        break;
      }
      if (route.n < 1) {
        setView(`<section class="coverage">${form}${validationMessage("sample size must be at least 1")}</section>`);
        break;
      }
      const result = await apiGet<CoverageReport>(
        `/api/stats/coverage?n=${route.n}&seed=${route.seed}`
      );
      if (!fresh()) return;
      setView(
        `<section class="coverage">${form}${
          result.ok ? renderCoverage(result.data) : errorBanner(result.error)
        }</section>`
      );
      break;
    }
    case "textsearch": {
      if (!route.phrase) {
        setView(renderTextSearch("", null));
        break;
      }
      const result = await apiGet<TextSearchResult>(
        `/api/search?phrase=${encodeURIComponent(route.phrase)}`
      );
      if (!fresh()) return;
      setView(
        result.ok ? renderTextSearch(route.phrase, result.data) : errorBanner(result.error)
      );
      break;
    }
  }
}

function navigate(route: ViewRoute): void {
  const hash = formatRoute(route);
  if (window.location.hash === hash) {
    void show(route); // same URL: still re-run (e.g. resubmitting a form)
  } else {
    window.location.hash = hash;
  }
}

function onSubmit(event: Event): void {
  const form = event.target as HTMLFormElement;
  if (form.id === "search-form") {
    event.preventDefault();
    const query = (form.querySelector("#search-input") as HTMLInputElement).value.trim();
    if (!query) {
      setView(renderSearch("", null) + validationMessage("enter a name to search"));
      return;
    }
    navigate({ kind: "search", query });
  } else if (form.id === "text-form") {
    event.preventDefault();
    const phrase = (form.querySelector("#text-input") as HTMLInputElement).value.trim();
    if (!phrase) {
      setView(renderTextSearch("", null) + validationMessage("enter a phrase to search"));
      return;
    }
    navigate({ kind: "textsearch", phrase });
  } else if (form.id === "coverage-form") {
    event.preventDefault();
    const n = (form.querySelector("#coverage-n") as HTMLInputElement).value;
    const seed = (form.querySelector("#coverage-seed") as HTMLInputElement).value;
    if (!n || Number(n) < 1) {
      setView(
        `<section class="coverage">${renderCoverageForm(null, Number(seed) || null)}${validationMessage(
          "sample size must be at least 1"
        )}</section>`
      );
      return;
    }
    navigate({ kind: "coverage", n: Number(n), seed: Number(seed) || 0 });
  }
}

export function start(): void {
  window.addEventListener("hashchange", () => void show(parseRoute(window.location.hash)));
  document.addEventListener("submit", onSubmit);
  void show(parseRoute(window.location.hash));
}

start();
