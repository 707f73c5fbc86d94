"""Command-line front end.

Exit codes: 0 success/realizable, 2 unrealizable (or failed verify),
1 error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from ltldep import controller as ctrl
from ltldep import dependency, projection
from ltldep.automata import emit_hoa, parse_hoa, translate
from ltldep.errors import LtldepError
from ltldep.pipeline import synth
from ltldep.spec import format_spec, gen_midbit_spec, parse_spec


def _read(path):
    with open(path) as fh:
        return fh.read()


def _load_spec(path):
    return parse_spec(_read(path))


def _load_automaton(path):
    """Spec file or HOA file (with controllable-AP); returns (nba, order)."""
    text = _read(path)
    if text.lstrip().startswith("HOA:"):
        nba = parse_hoa(text)
        return nba, list(nba.outputs)
    sp = parse_spec(text)
    return translate(sp), list(sp.outputs)


def _print_timings(timings):
    keys = ["nba_ms", "deps_ms", "nondep_ms", "dep_ms"]
    print(",".join(keys))
    print(",".join("%.3f" % timings.get(k, 0.0) for k in keys))


def cmd_deps(args):
    nba, order = _load_automaton(args.spec)
    report = dependency.find_maximal_dependent_set(
        nba, order=order, budget_ms=args.dep_budget_ms)
    print(dependency.format_report(report, order))
    if args.timings:
        _print_timings({"deps_ms": report.millis.get("__total__", 0.0)})
    return 0


def cmd_synth(args):
    sp = _load_spec(args.spec)
    res = synth(sp, no_deps=args.no_deps, dep_budget_ms=args.dep_budget_ms,
                state_cap=args.state_cap)
    print("REALIZABLE" if res.realizable else "UNREALIZABLE")
    if args.timings:
        _print_timings(res.timings)
    if res.realizable and args.output:
        with open(args.output, "w") as fh:
            fh.write(ctrl.emit_aiger(res.controller))
    return 0 if res.realizable else 2


def cmd_project_stats(args):
    sp = _load_spec(args.spec)
    nba = translate(sp, state_cap=args.state_cap)
    report = dependency.find_maximal_dependent_set(
        nba, order=list(sp.outputs), budget_ms=args.dep_budget_ms)
    projected = projection.project(nba, set(report.dependent))
    st = projection.projection_stats(nba, projected)
    print("spec,states,edges,bdd_before,bdd_after")
    print("%s,%d,%d,%d,%d" % (os.path.basename(args.spec), st["n_states"],
                              st["n_edges"], st["bdd_before"], st["bdd_after"]))
    return 0


def cmd_verify(args):
    sp = _load_spec(args.spec)
    aig = ctrl.parse_aiger(_read(args.controller))
    ok = ctrl.verify(aig, sp)
    print("VERIFIED" if ok else "NOT-VERIFIED")
    return 0 if ok else 2


def cmd_translate(args):
    sp = _load_spec(args.spec)
    nba = translate(sp, state_cap=args.state_cap)
    print("states=%d edges=%d accepting=%d" %
          (nba.n_states, nba.n_edges, len(nba.accepting)))
    if args.hoa:
        with open(args.hoa, "w") as fh:
            fh.write(emit_hoa(nba))
    return 0


def cmd_gen_midbit(args):
    sp = gen_midbit_spec(args.n)
    text = format_spec(sp)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--timings", action="store_true",
                        help="print a phase-breakdown CSV after the result")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--state-cap", type=int, default=5000)

    p = argparse.ArgumentParser(prog="ltldep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(*args, **kw):
        kw.setdefault("parents", [common])
        return sub.add_parser(*args, **kw)

    d = add("deps", help="dependency report for a spec or HOA file")
    d.add_argument("spec")
    d.add_argument("--dep-budget-ms", type=float, default=12000.0)
    d.set_defaults(func=cmd_deps)

    s = add("synth", help="full synthesis pipeline")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.add_argument("--dep-budget-ms", type=float, default=12000.0)
    s.add_argument("--no-deps", action="store_true",
                   help="skip dependency analysis (treat every output as non-dependent)")
    s.set_defaults(func=cmd_synth)

    ps = add("project-stats", help="BDD sizes before/after projection")
    ps.add_argument("spec")
    ps.add_argument("--dep-budget-ms", type=float, default=12000.0)
    ps.set_defaults(func=cmd_project_stats)

    v = add("verify", help="check an AIGER controller against a spec")
    v.add_argument("spec")
    v.add_argument("controller")
    v.set_defaults(func=cmd_verify)

    t = add("translate", help="LTL to Buchi automaton only")
    t.add_argument("spec")
    t.add_argument("--hoa", help="write the automaton in HOA format")
    t.set_defaults(func=cmd_translate)

    g = add("gen-midbit", help="emit the n-th multiplication-bit spec")
    g.add_argument("n", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen_midbit)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except LtldepError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
