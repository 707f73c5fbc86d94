"""Detection of output variables whose value is forced by the others.

A state pair (p, q) is compatible when some finite word reaches both from
the initial state.  An output z is dependent on a variable set Y when no
compatible pair admits two outgoing letters that agree on Y but differ
on z.  Everything here works symbolically on the edge BDDs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ltldep.automata import Nba, PRIME_SUFFIX


STATUS_DEPENDENT = "dependent"
STATUS_NOT_DEPENDENT = "not-dependent"
STATUS_SKIPPED = "skipped-budget"


@dataclass(frozen=True)
class CompatiblePairs:
    """Symmetric set of state pairs jointly reachable on a common word."""

    pairs: frozenset

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def unordered(self):
        return sorted({(min(p, q), max(p, q)) for p, q in self.pairs})


@dataclass
class DependencyReport:
    dependent: list
    nondependent: list
    status: dict
    millis: dict = field(default_factory=dict)

    @property
    def total_outputs(self):
        return len(self.dependent) + len(self.nondependent)

    @property
    def ratio(self):
        if self.total_outputs == 0:
            return 0.0
        return len(self.dependent) / self.total_outputs


def find_compatible_pairs(a: Nba) -> CompatiblePairs:
    """Worklist closure of the joint-reachability relation.

    Seeded with (q0, q0); a successor pair is added when the two edge
    constraints share a satisfying letter.
    """
    if a.initial is None:
        return CompatiblePairs(frozenset())
    mgr = a.manager
    seed = (a.initial, a.initial)
    seen = {seed}
    work = [seed]
    while work:
        p, q = work.pop()
        for pt, pb in a.out_edges(p):
            for qt, qb in a.out_edges(q):
                nxt = (pt, qt)
                if nxt in seen:
                    continue
                if mgr.is_sat(pb & qb):
                    for pair in (nxt, (qt, pt)):
                        if pair not in seen:
                            seen.add(pair)
                            work.append(pair)
    return CompatiblePairs(frozenset(seen))


def _agree_constraint(a: Nba, z, ys):
    """Letters σ, σ' equal on ys but opposite on z; pair independent."""
    mgr = a.manager
    prime = {name: name + PRIME_SUFFIX for name in a.inputs + a.outputs}
    agree = mgr.true
    for y in ys:
        agree &= mgr.apply("iff", mgr.var(y), mgr.var(prime[y]))
    agree &= mgr.apply("xor", mgr.var(z), mgr.var(prime[z]))
    return prime, agree


def _collision_formula(a: Nba, p, q, z, ys, hoisted=None):
    """Disjunction over edge pairs of: agree on ys, differ on z."""
    mgr = a.manager
    prime, agree = hoisted if hoisted else _agree_constraint(a, z, ys)

    acc = mgr.false
    for _, pb in a.out_edges(p):
        for _, qb in a.out_edges(q):
            acc |= pb & mgr.rename(qb, prime) & agree
            if mgr.is_sat(acc):
                return acc
    return acc


def are_states_colliding(a: Nba, p, q, z, ys, hoisted=None) -> bool:
    """True when (p, q) shows z is not determined by ys."""
    return a.manager.is_sat(_collision_formula(a, p, q, z, set(ys), hoisted))


def is_automata_dependent(a: Nba, z, ys, pairs: CompatiblePairs) -> bool:
    """True iff no compatible pair collides for (z, ys)."""
    ys = set(ys)
    hoisted = _agree_constraint(a, z, ys)
    for p, q in pairs.unordered():
        if are_states_colliding(a, p, q, z, ys, hoisted):
            return False
    return True


def find_maximal_dependent_set(a: Nba, order=None, budget_ms=12000.0) -> DependencyReport:
    """Greedy maximal dependent set over the given output order.

    Each output z is tested against all variables outside X ∪ {z}; on
    success z joins X.  A per-variable time budget turns slow checks into
    skipped-budget verdicts, treated as non-dependent.
    """
    if order is None:
        order = list(a.outputs)
    else:
        order = list(order)
        if sorted(order) != sorted(a.outputs):
            raise ValueError("order must be a permutation of the outputs")

    t0 = time.perf_counter()
    pairs = find_compatible_pairs(a)
    dependent = []
    status = {}
    millis = {}
    allvars = set(a.inputs) | set(a.outputs)
    for z in order:
        start = time.perf_counter()
        if a.is_empty:
            # no compatible pairs, vacuously dependent
            verdict = STATUS_DEPENDENT
        else:
            ys = allvars - set(dependent) - {z}
            deadline = start + budget_ms / 1000.0
            verdict = STATUS_DEPENDENT
            hoisted = _agree_constraint(a, z, ys)
            for p, q in pairs.unordered():
                if time.perf_counter() > deadline:
                    verdict = STATUS_SKIPPED
                    break
                if are_states_colliding(a, p, q, z, ys, hoisted):
                    verdict = STATUS_NOT_DEPENDENT
                    break
        status[z] = verdict
        millis[z] = (time.perf_counter() - start) * 1000.0
        if verdict == STATUS_DEPENDENT:
            dependent.append(z)
    report = DependencyReport(
        dependent=dependent,
        nondependent=[z for z in order if status[z] != STATUS_DEPENDENT],
        status=status,
        millis=millis,
    )
    report.millis["__total__"] = (time.perf_counter() - t0) * 1000.0
    return report


def dependency_stats(report: DependencyReport, a: Nba) -> dict:
    return {
        "n_dependent": len(report.dependent),
        "n_outputs": report.total_outputs,
        "ratio": report.ratio,
        "n_states": a.n_states,
        "n_edges": a.n_edges,
        "millis": dict(report.millis),
    }


def format_report(report: DependencyReport, order=None) -> str:
    """CLI text: one `name<TAB>status<TAB>millis` line per output."""
    if order is None:
        order = list(report.status)
    lines = []
    for z in order:
        lines.append("%s\t%s\t%.1f" % (z, report.status[z], report.millis.get(z, 0.0)))
    n = len(report.dependent)
    m = report.total_outputs
    ratio = report.ratio
    lines.append("dependent=%d total=%d ratio=%.3f" % (n, m, ratio))
    return "\n".join(lines)
