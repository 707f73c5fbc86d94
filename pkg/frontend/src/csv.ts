import { CSV_HEADER, type ResultRow } from "./types";

// ---------------------------------------------------------------------------
// CSV serialization
// ---------------------------------------------------------------------------

function cell(v: boolean | number | string | null): string {
  if (v === null) return "";
  if (typeof v === "boolean") return v ? "true" : "false";
  if (typeof v === "number") return Number.isInteger(v) ? String(v) : v.toFixed(3);
  return v;
}

export function rowsToCsv(rows: ResultRow[]): string {
  const lines = [CSV_HEADER.join(",")];
  for (const r of rows) {
    // config names contain spaces but never commas, so no quoting needed
    lines.push(CSV_HEADER.map((k) => cell(r[k])).join(","));
  }
  return lines.join("\n") + "\n";
}

// ---------------------------------------------------------------------------
// CSV parsing
// ---------------------------------------------------------------------------

function num(s: string): number | null {
  return s === "" ? null : Number(s);
}

export function parseCsv(text: string): ResultRow[] {
  const lines = text.trim().split("\n");
  if (lines.length === 0 || lines[0] !== CSV_HEADER.join(",")) {
    throw new Error("unexpected CSV header: " + (lines[0] ?? "<empty>"));
  }
  return lines.slice(1).map((line) => {
    const c = line.split(",");
    if (c.length !== CSV_HEADER.length) {
      throw new Error("bad column count in row: " + line);
    }
    return {
      name: c[0],
      config: c[1],
      realizable: c[2] === "" ? null : c[2] === "true",
      total_ms: num(c[3]),
      nba_ms: num(c[4]),
      deps_ms: num(c[5]),
      nondep_ms: num(c[6]),
      dep_ms: num(c[7]),
      n_dep: num(c[8]),
      n_nondep: num(c[9]),
      bdd_before: num(c[10]),
      bdd_after: num(c[11]),
      status: c[12] as ResultRow["status"],
    };
  });
}
