import { describe, expect, it } from "vitest";

import { formatRoute, parseRoute, ViewRoute } from "../src/routes.js";

describe("route parsing", () => {
  it("defaults to search", () => {
    expect(parseRoute("")).toEqual({ kind: "search", query: "" });
    expect(parseRoute("#/")).toEqual({ kind: "search", query: "" });
    expect(parseRoute("#/nope/such/route")).toEqual({ kind: "search", query: "" });
  });

  it("parses a search query", () => {
    expect(parseRoute("#/search?q=Mayor%20Simpson")).toEqual({
      kind: "search",
      query: "Mayor Simpson",
    });
  });

  it("parses entity routes", () => {
    expect(parseRoute("#/person/5")).toEqual({ kind: "person", id: 5 });
    expect(parseRoute("#/household/7")).toEqual({ kind: "household", id: 7 });
    expect(parseRoute("#/business/1")).toEqual({ kind: "business", id: 1 });
  });

  it("rejects a non-numeric id", () => {
    expect(parseRoute("#/person/abc")).toEqual({ kind: "search", query: "" });
  });

  it("parses coverage parameters", () => {
    expect(parseRoute("#/coverage?n=10&seed=42")).toEqual({
      kind: "coverage",
      n: 10,
      seed: 42,
    });
    expect(parseRoute("#/coverage")).toEqual({ kind: "coverage", n: null, seed: null });
  });

  it("parses a text search phrase", () => {
    expect(parseRoute("#/text?phrase=sugar%20beets")).toEqual({
      kind: "textsearch",
      phrase: "sugar beets",
    });
  });
});

describe("route formatting", () => {
  const routes: ViewRoute[] = [
    { kind: "search", query: "" },
    { kind: "search", query: "Mayor Simpson" },
    { kind: "person", id: 5 },
    { kind: "household", id: 7 },
    { kind: "business", id: 1 },
    { kind: "coverage", n: 10, seed: 42 },
    { kind: "coverage", n: null, seed: null },
    { kind: "textsearch", phrase: "sugar beets" },
    { kind: "textsearch", phrase: "" },
  ];

  it("round-trips every route (deep links are bijective)", () => {
    for (const route of routes) {
      expect(parseRoute(formatRoute(route))).toEqual(route);
    }
  });
});
