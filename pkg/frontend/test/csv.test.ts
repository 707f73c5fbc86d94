import { describe, expect, it } from "vitest";

import { parseCsv, rowsToCsv } from "../src/csv";
import { CSV_HEADER, type ResultRow } from "../src/types";

const sample: ResultRow[] = [
  {
    name: "a",
    config: "synth",
    realizable: true,
    total_ms: 1.5,
    nba_ms: 0.5,
    deps_ms: 0.25,
    nondep_ms: 0.5,
    dep_ms: 0.25,
    n_dep: 2,
    n_nondep: 0,
    bdd_before: 10,
    bdd_after: 0,
    status: "ok",
  },
  {
    name: "b",
    config: "synth --no-deps",
    realizable: null,
    total_ms: null,
    nba_ms: null,
    deps_ms: null,
    nondep_ms: null,
    dep_ms: null,
    n_dep: null,
    n_nondep: null,
    bdd_before: null,
    bdd_after: null,
    status: "timeout",
  },
];

describe("csv", () => {
  it("round-trips rows", () => {
    const back = parseCsv(rowsToCsv(sample));
    expect(back).toEqual(sample);
  });

  it("emits the documented header", () => {
    expect(rowsToCsv([]).trim()).toBe(CSV_HEADER.join(","));
  });

  it("rejects a foreign header", () => {
    expect(() => parseCsv("x,y\n1,2\n")).toThrow(/header/);
  });

  it("keeps timeout rows with empty numeric cells", () => {
    const line = rowsToCsv(sample).trim().split("\n")[2];
    expect(line).toBe("b,synth --no-deps,,,,,,,,,,,timeout");
  });
});
