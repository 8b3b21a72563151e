/** Canned API payloads mirroring the backend's fixture town. */

import {
  BusinessDetail,
  CoverageReport,
  HouseholdDetail,
  MentionList,
  PersonList,
  PersonSummary,
  TextSearchResult,
  TimelineResult,
} from "../src/api.js";

export const simpson: PersonSummary = {
  id: "person:5",
  display_name: "J E Simpson",
  census_ref: "S1",
  excluded: false,
  household: {
    id: "household:1",
    household_id: "H1",
    locality: "Norfolk",
    is_institution: false,
    member_count: 1,
  },
  census: { sex: "M", age_at_census: 50, race: "White", birthplace: "Ohio" },
  occupations: [
    { value: "mayor", source: { kind: "census", ref: "S1" } },
    { value: "insurance agent", source: { kind: "directory", ref: "1889" } },
  ],
  offices: ["Mayor"],
  mention_count: 5,
  top_snippets: [
    {
      date: "1899-04-06",
      page: 1,
      snippet: "Mayor [[Simpson]] presided at the council meeting",
      source_url: null,
    },
  ],
};

export const simpsonSearch: PersonList = {
  total: 1,
  offset: 0,
  limit: 50,
  results: [simpson],
};

export const simpsonMentions: MentionList = {
  id: "person:5",
  mentions: [
    {
      date: "1899-04-06",
      page: 1,
      start: 6,
      end: 13,
      surface: "Simpson",
      target_kind: "entity",
      entity: "person:5",
      surname: ["simpson"],
      confidence: 0.75,
      method: "exact",
      snippet: "Mayor [[Simpson]] presided at the council meeting",
      source_url: null,
    },
  ],
};

export const simpsonTimeline: TimelineResult = {
  id: "person:5",
  entries: [
    {
      kind: "mention",
      date: "1899-04-06",
      label: "Mayor [[Simpson]] presided at the council meeting",
      source: { kind: "newspaper", ref: "1899-04-06/p1" },
    },
  ],
};

export const quietPerson: PersonSummary = {
  ...simpson,
  id: "person:1",
  display_name: "Carl Asmus",
  census_ref: "A1",
  occupations: [],
  offices: [],
  mention_count: 0,
  top_snippets: [],
};

export const emptyMentions: MentionList = { id: "person:1", mentions: [] };
export const emptyTimeline: TimelineResult = { id: "person:1", entries: [] };

export const asmusHousehold: HouseholdDetail = {
  id: "household:7",
  household_id: "H7",
  locality: "Norfolk",
  is_institution: false,
  warnings: [],
  members: [
    { id: "person:1", relation: "Head", display_name: "Carl Asmus", mention_count: 0 },
    { id: "person:2", relation: "Wife", display_name: "Anna Asmus", mention_count: 0 },
    { id: "person:3", relation: "Son", display_name: "Max Asmus", mention_count: 2 },
    { id: "person:4", relation: "Son", display_name: "Otto Asmus", mention_count: 0 },
  ],
};

export const paintShop: BusinessDetail = {
  id: "business:1",
  name: "Truman Paint & Wallpaper",
  category: "paints",
  address: "412 Main",
  mentions: [
    {
      date: "1900-06-20",
      page: 2,
      start: 0,
      end: 24,
      surface: "Truman Paint & Wallpaper",
      target_kind: "entity",
      entity: "business:1",
      surname: [],
      confidence: 1.0,
      method: "exact",
      snippet: "[[Truman Paint & Wallpaper]] has received new stock",
      source_url: null,
    },
  ],
};

export const coverageSixOfTen: CoverageReport = {
  sample_size: 10,
  seed: 42,
  covered_fraction: 0.6,
  sampled: [
    { person: "person:1", display_name: "Solo Family0", household: "household:1", covered: true },
    { person: "person:2", display_name: "Solo Family1", household: "household:2", covered: true },
    { person: "person:3", display_name: "Solo Family2", household: "household:3", covered: true },
    { person: "person:4", display_name: "Solo Family3", household: "household:4", covered: true },
    { person: "person:5", display_name: "Solo Family4", household: "household:5", covered: true },
    { person: "person:6", display_name: "Solo Family5", household: "household:6", covered: true },
    { person: "person:7", display_name: "Solo Family6", household: "household:7", covered: false },
    { person: "person:8", display_name: "Solo Family7", household: "household:8", covered: false },
    { person: "person:9", display_name: "Solo Family8", household: "household:9", covered: false },
    { person: "person:10", display_name: "Solo Family9", household: "household:10", covered: false },
  ],
};

export const sugarBeets: TextSearchResult = {
  phrase: "sugar beets",
  total: 1,
  results: [
    {
      date: "1900-06-20",
      page: 2,
      start: 57,
      end: 62,
      snippet: "new stock of paints. [[Sugar beets]] remain the main crop",
      source_url: "https://example.org/norfolk-weekly-news/1900-06-20",
    },
  ],
};
