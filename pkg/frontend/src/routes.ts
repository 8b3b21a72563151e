/** Hash-based routes; every view is deep-linkable. */

export type ViewRoute =
  | { kind: "search"; query: string }
  | { kind: "person"; id: number }
  | { kind: "household"; id: number }
  | { kind: "business"; id: number }
  | { kind: "coverage"; n: number | null; seed: number | null }
  | { kind: "textsearch"; phrase: string };

/** Parse a location hash (with or without the leading "#") into a route. */
export function parseRoute(hash: string): ViewRoute {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  const [path, queryString] = splitOnce(raw.replace(/^\//, ""), "?");
  const params = new URLSearchParams(queryString);
  const parts = path.split("/").filter((p) => p.length > 0);

  if (parts.length === 0 || parts[0] === "search") {
    return { kind: "search", query: params.get("q") ?? "" };
  }
  if (parts[0] === "person" && isSerial(parts[1])) {
    return { kind: "person", id: Number(parts[1]) };
  }
  if (parts[0] === "household" && isSerial(parts[1])) {
    return { kind: "household", id: Number(parts[1]) };
  }
  if (parts[0] === "business" && isSerial(parts[1])) {
    return { kind: "business", id: Number(parts[1]) };
  }
  if (parts[0] === "coverage") {
    return {
      kind: "coverage",
      n: intOrNull(params.get("n")),
      seed: intOrNull(params.get("seed")),
    };
  }
  if (parts[0] === "text") {
    return { kind: "textsearch", phrase: params.get("phrase") ?? "" };
  }
  return { kind: "search", query: "" };
}

/** Format a route back into a location hash; inverse of parseRoute. */
export function formatRoute(route: ViewRoute): string {
  switch (route.kind) {
    case "search":
      return route.query ? `#/search?q=${encodeURIComponent(route.query)}` : "#/search";
    case "person":
      return `#/person/${route.id}`;
    case "household":
      return `#/household/${route.id}`;
    case "business":
      return `#/business/${route.id}`;
    case "coverage": {
      const params = new URLSearchParams();
      if (route.n !== null) params.set("n", String(route.n));
      if (route.seed !== null) params.set("seed", String(route.seed));
      const suffix = params.toString();
      return suffix ? `#/coverage?${suffix}` : "#/coverage";
    }
    case "textsearch":
      return route.phrase
        ? `#/text?phrase=${encodeURIComponent(route.phrase)}`
        : "#/text";
  }
}

function splitOnce(value: string, sep: string): [string, string] {
  const at = value.indexOf(sep);
  return at === -1 ? [value, ""] : [value.slice(0, at), value.slice(at + 1)];
}

function isSerial(value: string | undefined): boolean {
  return value !== undefined && /^[0-9]+$/.test(value);
}

function intOrNull(value: string | null): number | null {
  return value !== null && /^-?[0-9]+$/.test(value) ? Number(value) : null;
}
