/**
 * CLI entry point: run the spec corpus under both synthesis configs and
 * write results.csv.
 *
 * Usage: node dist/run_corpus.js [corpusDir] [--out results.csv]
 *                                [--timeout-s 60] [--repeat 3]
 */

import { writeFileSync } from "fs";
import path from "path";

import { rowsToCsv } from "./csv";
import { runCorpus } from "./runner";

function arg(argv: string[], flag: string, dflt: string): string {
  const i = argv.indexOf(flag);
  return i >= 0 && i + 1 < argv.length ? argv[i + 1] : dflt;
}

function main(): number {
  const argv = process.argv.slice(2);
  const positional = argv.filter((a, i) => !a.startsWith("--") && (i === 0 || !argv[i - 1].startsWith("--")));
  const corpusDir = positional[0] ?? path.join(__dirname, "..", "..", "corpus");
  const outPath = arg(argv, "--out", path.join(__dirname, "..", "out", "results.csv"));
  const timeoutS = Number(arg(argv, "--timeout-s", "60"));
  const repeat = Number(arg(argv, "--repeat", "3"));

  const rows = runCorpus(corpusDir, timeoutS, repeat, (m) => console.log(m));
  writeFileSync(outPath, rowsToCsv(rows));
  console.log(`${rows.length} rows -> ${outPath}`);
  return 0;
}

process.exit(main());
