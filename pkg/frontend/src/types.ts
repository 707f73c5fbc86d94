/**
 * Shared row schema for the benchmark harness.
 *
 * One row per (spec, config). `status` is "ok" for completed runs
 * (realizable or not), "timeout" when the CLI exceeded the budget and
 * "error" for any other failure; timeout/error rows keep the name and
 * config so the CSV always has |corpus| x |configs| rows.
 */

export interface ResultRow {
  name: string;
  config: string;
  realizable: boolean | null;
  total_ms: number | null;
  nba_ms: number | null;
  deps_ms: number | null;
  nondep_ms: number | null;
  dep_ms: number | null;
  n_dep: number | null;
  n_nondep: number | null;
  bdd_before: number | null;
  bdd_after: number | null;
  status: "ok" | "timeout" | "error";
}

export const CSV_HEADER = [
  "name",
  "config",
  "realizable",
  "total_ms",
  "nba_ms",
  "deps_ms",
  "nondep_ms",
  "dep_ms",
  "n_dep",
  "n_nondep",
  "bdd_before",
  "bdd_after",
  "status",
] as const;

/** CLI configurations compared by the ablation. */
export const CONFIGS: { name: string; extraArgs: string[] }[] = [
  { name: "synth", extraArgs: [] },
  { name: "synth --no-deps", extraArgs: ["--no-deps"] },
];
