/** Typed client for the read-only JSON API. All views consume only /api. */

export interface ApiError {
  code: string;
  message: string;
}

export type ApiResult<T> = { ok: true; data: T } | { ok: false; error: ApiError };

export interface MentionPayload {
  date: string;
  page: number;
  start: number;
  end: number;
  surface: string;
  target_kind: string;
  entity: string | null;
  surname: string[];
  confidence: number;
  method: string;
  snippet: string | null;
  source_url: string | null;
}

export interface PersonSummary {
  id: string;
  display_name: string;
  census_ref: string | null;
  excluded: boolean;
  household: {
    id: string;
    household_id: string;
    locality: string | null;
    is_institution: boolean;
    member_count: number;
  } | null;
  census: Record<string, unknown>;
  occupations: { value: string; source: { kind: string; ref: string } }[];
  offices: string[];
  mention_count: number;
  top_snippets: { date: string; page: number; snippet: string; source_url: string | null }[];
}

export interface PersonList {
  total: number;
  offset: number;
  limit: number;
  results: PersonSummary[];
}

export interface HouseholdDetail {
  id: string;
  household_id: string;
  locality: string | null;
  is_institution: boolean;
  warnings: string[];
  members: { id: string; relation: string; display_name: string; mention_count: number }[];
}

export interface BusinessDetail {
  id: string;
  name: string;
  category: string | null;
  address: string | null;
  mentions: MentionPayload[];
}

export interface CoverageReport {
  sample_size: number;
  seed: number;
  covered_fraction: number;
  sampled: { person: string; display_name: string; household: string | null; covered: boolean }[];
}

export interface TextSearchResult {
  phrase: string;
  total: number;
  results: { date: string; page: number; start: number; end: number; snippet: string; source_url: string | null }[];
}

export interface MentionList {
  id: string;
  mentions: MentionPayload[];
}

export interface TimelineResult {
  id: string;
  entries: { kind: string; date: string | null; label: string; source: { kind: string; ref: string } | null }[];
}

export async function apiGet<T>(path: string): Promise<ApiResult<T>> {
  let response: Response;
  try {
    response = await fetch(path, { headers: { Accept: "application/json" } });
  } catch (err) {
    return { ok: false, error: { code: "network", message: String(err) } };
  }
  let body: unknown;
  try {
    body = await response.json();
  } catch {
    return { ok: false, error: { code: "bad_response", message: `HTTP ${response.status}` } };
  }
  if (!response.ok) {
    const error = (body as { error?: ApiError }).error;
    return {
      ok: false,
      error: error ?? { code: "http_error", message: `HTTP ${response.status}` },
    };
  }
  return { ok: true, data: body as T };
}

export function serialOf(entityId: string): number {
  return Number(entityId.split(":")[1]);
}
