/**
 * Figure generation from results.csv.
 *
 * Four figures:
 *   cactus.svg  - per config, instances sorted by solve time
 *   phases.svg  - per spec, normalized stacked phase breakdown
 *   bddsize.svg - edge-BDD totals before/after projection, symmetric-log
 *                 y axis, x sorted by projected size
 *   depdist.svg - cumulative count of specs by dependency ratio
 */

import { readFileSync, writeFileSync } from "fs";
import path from "path";

import { parseCsv } from "./csv";
import type { ResultRow } from "./types";
import {
  H,
  MARGIN,
  SvgDoc,
  W,
  drawAxes,
  drawLegend,
  linearScale,
  niceTicks,
  symlog,
} from "./svg";

const COLORS = ["#4361ee", "#e63946", "#2d6a4f", "#f4a261"];
const PHASES = ["nba_ms", "deps_ms", "nondep_ms", "dep_ms"] as const;

const plotLeft = MARGIN.left;
const plotRight = W - MARGIN.right;
const plotBottom = H - MARGIN.bottom;
const plotTop = MARGIN.top;

// ---------------------------------------------------------------------------
// Cactus
// ---------------------------------------------------------------------------

export function buildCactus(rows: ResultRow[]): string {
  const doc = new SvgDoc("Instances solved vs time per configuration");
  const configs = [...new Set(rows.map((r) => r.config))];
  const perConfig = configs.map((c) =>
    rows
      .filter((r) => r.config === c && r.status === "ok" && r.total_ms !== null)
      .map((r) => r.total_ms as number)
      .sort((a, b) => a - b),
  );
  const maxN = Math.max(1, ...perConfig.map((s) => s.length));
  const maxT = Math.max(1, ...perConfig.flat());
  const sx = linearScale(0, maxN, plotLeft, plotRight);
  const sy = linearScale(0, maxT, plotBottom, plotTop);
  drawAxes(
    doc,
    "instances solved",
    "time (ms)",
    niceTicks(0, maxN, 8).filter(Number.isInteger).map((v) => ({ pos: sx(v), label: String(v) })),
    niceTicks(0, maxT).map((v) => ({ pos: sy(v), label: String(v) })),
  );
  configs.forEach((c, i) => {
    const pts: [number, number][] = perConfig[i].map((t, k) => [sx(k + 1), sy(t)]);
    doc.series(pts, COLORS[i % COLORS.length], c);
  });
  drawLegend(doc, configs.map((c, i) => ({ color: COLORS[i % COLORS.length], label: c })));
  return doc.finish();
}

// ---------------------------------------------------------------------------
// Phase breakdown
// ---------------------------------------------------------------------------

export function buildPhases(rows: ResultRow[]): string {
  const doc = new SvgDoc("Normalized phase breakdown (default config)");
  const ok = rows.filter((r) => r.config === "synth" && r.status === "ok" && r.total_ms);
  const n = ok.length;
  const band = (plotRight - plotLeft) / Math.max(1, n);
  const sy = linearScale(0, 1, plotBottom, plotTop);
  drawAxes(
    doc,
    "spec",
    "fraction of total time",
    ok.map((r, i) => ({ pos: plotLeft + (i + 0.5) * band, label: "" })),
    [0, 0.25, 0.5, 0.75, 1].map((v) => ({ pos: sy(v), label: v.toFixed(2) })),
  );
  ok.forEach((r, i) => {
    const x = plotLeft + i * band + band * 0.12;
    const w = band * 0.76;
    let acc = 0;
    PHASES.forEach((ph, k) => {
      const frac = (r[ph] as number) / (r.total_ms as number);
      const y0 = sy(acc + frac);
      doc.rect(x, y0, w, sy(acc) - y0, COLORS[k], `class="phase" data-phase="${ph}"`);
      acc += frac;
    });
    doc.raw(
      `<text x="${(x + w / 2).toFixed(1)}" y="${plotBottom + 12}" text-anchor="end" ` +
        `font-size="9" transform="rotate(-45 ${(x + w / 2).toFixed(1)} ${plotBottom + 12})">${r.name}</text>`,
    );
  });
  drawLegend(doc, PHASES.map((ph, k) => ({ color: COLORS[k], label: ph.replace("_ms", "") })));
  return doc.finish();
}

// ---------------------------------------------------------------------------
// BDD sizes
// ---------------------------------------------------------------------------

export function buildBddSize(rows: ResultRow[]): string {
  const doc = new SvgDoc("Edge-BDD totals before/after projection");
  const ok = rows.filter(
    (r) => r.config === "synth" && r.status === "ok" && r.bdd_before !== null && r.bdd_after !== null,
  );
  // x ordering: ascending projected (after) size, ties by original size
  ok.sort((a, b) => (a.bdd_after! - b.bdd_after!) || (a.bdd_before! - b.bdd_before!));
  const n = ok.length;
  const maxY = symlog(Math.max(1, ...ok.map((r) => r.bdd_before as number)));
  const sx = linearScale(0, Math.max(1, n - 1), plotLeft, plotRight);
  const sy = linearScale(0, maxY, plotBottom, plotTop);
  const yTickVals = [0, 1, 3, 10, 30, 100, 300, 1000, 3000].filter((v) => symlog(v) <= maxY * 1.02);
  drawAxes(
    doc,
    "spec (sorted by projected size)",
    "BDD nodes (symlog)",
    ok.map((r, i) => ({ pos: sx(i), label: "" })),
    yTickVals.map((v) => ({ pos: sy(symlog(v)), label: String(v) })),
  );
  doc.series(ok.map((r, i) => [sx(i), sy(symlog(r.bdd_before as number))]), COLORS[0], "before");
  doc.series(ok.map((r, i) => [sx(i), sy(symlog(r.bdd_after as number))]), COLORS[1], "after");
  ok.forEach((r, i) => {
    doc.raw(
      `<text x="${sx(i).toFixed(1)}" y="${plotBottom + 12}" text-anchor="end" font-size="9" ` +
        `class="xorder" transform="rotate(-45 ${sx(i).toFixed(1)} ${plotBottom + 12})">${r.name}</text>`,
    );
  });
  drawLegend(doc, [
    { color: COLORS[0], label: "before" },
    { color: COLORS[1], label: "after" },
  ]);
  return doc.finish();
}

// ---------------------------------------------------------------------------
// Dependency-ratio distribution
// ---------------------------------------------------------------------------

export function buildDepDist(rows: ResultRow[]): string {
  const doc = new SvgDoc("Cumulative spec count by dependency ratio");
  const ok = rows.filter(
    (r) => r.config === "synth" && r.status === "ok" && r.n_dep !== null && r.n_nondep !== null,
  );
  const ratios = ok
    .map((r) => (r.n_dep! + r.n_nondep! > 0 ? r.n_dep! / (r.n_dep! + r.n_nondep!) : 0))
    .sort((a, b) => a - b);
  const n = ratios.length;
  const sx = linearScale(0, 1, plotLeft, plotRight);
  const sy = linearScale(0, Math.max(1, n), plotBottom, plotTop);
  drawAxes(
    doc,
    "dependency ratio",
    "specs with ratio <= x",
    [0, 0.25, 0.5, 0.75, 1].map((v) => ({ pos: sx(v), label: v.toFixed(2) })),
    niceTicks(0, Math.max(1, n), 6).filter(Number.isInteger).map((v) => ({ pos: sy(v), label: String(v) })),
  );
  const pts: [number, number][] = ratios.map((r, i) => [sx(r), sy(i + 1)]);
  doc.series(pts, COLORS[2], "cumulative");
  return doc.finish();
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

export function buildAll(rows: ResultRow[]): Record<string, string> {
  return {
    "cactus.svg": buildCactus(rows),
    "phases.svg": buildPhases(rows),
    "bddsize.svg": buildBddSize(rows),
    "depdist.svg": buildDepDist(rows),
  };
}

function main(): number {
  const argv = process.argv.slice(2);
  const csvPath = argv[0] ?? path.join(__dirname, "..", "out", "results.csv");
  const outDir = argv[1] ?? path.dirname(csvPath);
  const rows = parseCsv(readFileSync(csvPath, "utf-8"));
  if (rows.length === 0) {
    console.warn("warning: empty CSV, figures will have no data series");
  }
  for (const [name, svg] of Object.entries(buildAll(rows))) {
    const p = path.join(outDir, name);
    writeFileSync(p, svg);
    console.log(`wrote ${p}`);
  }
  return 0;
}

if (require.main === module) {
  process.exit(main());
}
