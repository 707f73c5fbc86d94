"""Erasing dependent outputs from automaton edge labels.

Projection replaces every edge constraint B with ∃X.B, keeping the state
and edge structure untouched so later stages can index edges identically
in the original and projected automata.
"""

from __future__ import annotations

from ltldep.automata import Nba


def project(a: Nba, xs) -> Nba:
    """Existentially quantify the variables xs out of every edge label."""
    xs = set(xs)
    unknown = xs - set(a.outputs)
    if unknown:
        raise ValueError("projection variables must be outputs, got %r" % sorted(unknown))
    if not xs or a.is_empty:
        return a
    mgr = a.manager
    ids = sorted(mgr.var_id(x) for x in xs)
    edges = {k: mgr.exists(b, ids) for k, b in a.edges.items()}
    return Nba(
        manager=mgr,
        inputs=a.inputs,
        outputs=a.outputs,
        n_states=a.n_states,
        initial=a.initial,
        accepting=a.accepting,
        edges=edges,
    )


def _label_size(a: Nba) -> int:
    """Sum of internal BDD node counts over distinct edge labels."""
    mgr = a.manager
    seen = set()
    total = 0
    for b in a.edges.values():
        if b.node in seen:
            continue
        seen.add(b.node)
        total += mgr.internal_node_count(b)
    return total


def projection_stats(before: Nba, after: Nba) -> dict:
    if set(before.edges) != set(after.edges):
        raise ValueError("automata must share the same edge structure")
    mgr = before.manager
    deltas = {
        k: mgr.internal_node_count(before.edges[k]) - mgr.internal_node_count(after.edges[k])
        for k in before.edges
    }
    return {
        "n_states": before.n_states,
        "n_edges": before.n_edges,
        "bdd_before": _label_size(before),
        "bdd_after": _label_size(after),
        "edge_deltas": deltas,
    }
