"""Büchi automata with BDD-labeled edges.

Covers the LTL-to-NBA translation (tableau expansion to a generalized
automaton, then counter-based degeneralization), trimming to the
accepting-run core, a HOA v1 subset for interchange, and the lasso
emptiness check used for controller verification.
"""

import itertools
import re
from dataclasses import dataclass

from ltldep import spec as specmod
from ltldep.bdd import Bdd, BddManager
from ltldep.errors import (
    AlphabetMismatchError,
    ControllerIncompleteError,
    HoaFormatError,
    ResourceBudgetError,
)

PRIME_SUFFIX = "'"


def make_manager(inputs, outputs):
    """Manager with the pipeline's fixed order: declaration order of
    inputs then outputs, each variable immediately followed by its primed
    copy (keeps the equality constraints of collision formulas local)."""
    mgr = BddManager()
    for name in tuple(inputs) + tuple(outputs):
        mgr.new_var(name)
        mgr.new_var(name + PRIME_SUFFIX)
    return mgr


def formula_to_bdd(formula, mgr):
    """BDD of a purely propositional formula (shared subterms built once)."""
    memo = {}
    s = specmod

    def walk(f):
        r = memo.get(id(f))
        if r is not None:
            return r
        if isinstance(f, s.Atom):
            r = mgr.var(f.name)
        elif isinstance(f, s.Const):
            r = mgr.true if f.value else mgr.false
        elif isinstance(f, s.Not):
            r = ~walk(f.operand)
        elif isinstance(f, s.And):
            r = walk(f.left) & walk(f.right)
        elif isinstance(f, s.Or):
            r = walk(f.left) | walk(f.right)
        elif isinstance(f, s.Implies):
            r = mgr.apply("implies", walk(f.left), walk(f.right))
        elif isinstance(f, s.Iff):
            r = mgr.apply("iff", walk(f.left), walk(f.right))
        else:
            raise ValueError(f"formula is not propositional: {f!r}")
        memo[id(f)] = r
        return r

    return walk(formula)


def all_letters(names):
    """Explicit alphabet over a name list, as tuples of bools."""
    return list(itertools.product((False, True), repeat=len(names)))


@dataclass
class Nba:
    """Nondeterministic Büchi automaton over 2^(I∪O).

    States are 0..n_states-1; ``initial`` is None for the empty automaton.
    ``edges`` maps (src, dst) to a satisfiable Bdd over the unprimed
    variables; parallel transitions are merged by disjunction.
    """

    manager: BddManager
    inputs: tuple
    outputs: tuple
    n_states: int
    initial: object
    accepting: frozenset
    edges: dict

    @property
    def variables(self):
        return tuple(self.inputs) + tuple(self.outputs)

    def var(self, name):
        return self.manager.var_id(name)

    def prime(self, name):
        return self.manager.var_id(name + PRIME_SUFFIX)

    def unprimed_ids(self):
        return [self.var(n) for n in self.variables]

    @property
    def is_empty(self):
        return self.initial is None

    def out_edges(self, s):
        return [(t, b) for (p, t), b in self.edges.items() if p == s]

    def in_edges(self, s):
        return [(p, b) for (p, t), b in self.edges.items() if t == s]

    def successors(self, s, assignment):
        """Explicit successors of s under a {name: bool} assignment."""
        mgr = self.manager
        return [
            t
            for (p, t), b in self.edges.items()
            if p == s and mgr.evaluate(b, assignment)
        ]

    @property
    def n_edges(self):
        return len(self.edges)


# -- LTL -> NBA translation ------------------------------------------------

def _is_propositional(formula):
    s = specmod
    seen = set()

    def walk(f):
        if id(f) in seen:
            return True
        seen.add(id(f))
        if isinstance(f, (s.Atom, s.Const)):
            return True
        if isinstance(f, (s.Next, s.Until, s.Release, s.Eventually, s.Always)):
            return False
        if isinstance(f, s.Not):
            return walk(f.operand)
        return walk(f.left) and walk(f.right)

    return walk(formula)


def _skeleton(formula, neg, mgr):
    """Negation-normal temporal skeleton with maximal propositional
    subformulas collapsed into BDD literals ('lit', node)."""
    s = specmod
    if _is_propositional(formula):
        b = formula_to_bdd(formula, mgr)
        if neg:
            b = ~b
        return ("lit", b.node)
    if isinstance(formula, s.Not):
        return _skeleton(formula.operand, not neg, mgr)
    if isinstance(formula, s.And):
        op = "or" if neg else "and"
        return (op, _skeleton(formula.left, neg, mgr), _skeleton(formula.right, neg, mgr))
    if isinstance(formula, s.Or):
        op = "and" if neg else "or"
        return (op, _skeleton(formula.left, neg, mgr), _skeleton(formula.right, neg, mgr))
    if isinstance(formula, s.Implies):
        if neg:
            return (
                "and",
                _skeleton(formula.left, False, mgr),
                _skeleton(formula.right, True, mgr),
            )
        return (
            "or",
            _skeleton(formula.left, True, mgr),
            _skeleton(formula.right, False, mgr),
        )
    if isinstance(formula, s.Iff):
        a_pos = _skeleton(formula.left, False, mgr)
        a_neg = _skeleton(formula.left, True, mgr)
        b_pos = _skeleton(formula.right, neg, mgr)
        b_neg = _skeleton(formula.right, not neg, mgr)
        return ("or", ("and", a_pos, b_pos), ("and", a_neg, b_neg))
    if isinstance(formula, s.Next):
        return ("X", _skeleton(formula.operand, neg, mgr))
    if isinstance(formula, s.Until):
        op = "R" if neg else "U"
        return (op, _skeleton(formula.left, neg, mgr), _skeleton(formula.right, neg, mgr))
    if isinstance(formula, s.Release):
        op = "U" if neg else "R"
        return (op, _skeleton(formula.left, neg, mgr), _skeleton(formula.right, neg, mgr))
    if isinstance(formula, s.Eventually):
        if neg:
            return ("R", ("lit", 0), _skeleton(formula.operand, True, mgr))
        return ("U", ("lit", 1), _skeleton(formula.operand, False, mgr))
    if isinstance(formula, s.Always):
        if neg:
            return ("U", ("lit", 1), _skeleton(formula.operand, True, mgr))
        return ("R", ("lit", 0), _skeleton(formula.operand, False, mgr))
    raise TypeError(f"unknown formula node {formula!r}")


class _Node:
    __slots__ = ("name", "incoming", "new", "old", "next", "label")

    def __init__(self, name, incoming, new, old, nxt, label):
        self.name = name
        self.incoming = incoming
        self.new = new
        self.old = old
        self.next = nxt
        self.label = label  # conjunction of processed literals (node id)


def _expand(spec_skeleton, mgr, state_cap):
    """Tableau expansion; returns the node list (generalized automaton)."""
    core = mgr._core
    nodes = []
    by_key = {}
    counter = itertools.count(1)

    stack = [
        _Node(next(counter), {"init"}, {spec_skeleton}, set(), set(), 1)
    ]
    while stack:
        q = stack.pop()
        if len(nodes) > state_cap:
            raise ResourceBudgetError(
                f"tableau exceeded the state cap of {state_cap}"
            )
        if not q.new:
            key = (frozenset(q.old), frozenset(q.next))
            existing = by_key.get(key)
            if existing is not None:
                existing.incoming |= q.incoming
                continue
            by_key[key] = q
            nodes.append(q)
            stack.append(
                _Node(next(counter), {q.name}, set(q.next), set(), set(), 1)
            )
            continue
        f = q.new.pop()
        if f in q.old:
            stack.append(q)
            continue
        kind = f[0]
        if kind == "lit":
            label = core.conj(q.label, f[1])
            if label == 0:
                continue  # contradictory node
            q.old.add(f)
            q.label = label
            stack.append(q)
        elif kind == "and":
            q.old.add(f)
            q.new.update((f[1], f[2]))
            stack.append(q)
        elif kind == "or":
            q1 = _Node(
                next(counter), set(q.incoming), set(q.new) | {f[1]},
                set(q.old) | {f}, set(q.next), q.label,
            )
            q2 = _Node(
                next(counter), set(q.incoming), set(q.new) | {f[2]},
                set(q.old) | {f}, set(q.next), q.label,
            )
            stack.extend((q1, q2))
        elif kind == "X":
            q.old.add(f)
            q.next.add(f[1])
            stack.append(q)
        elif kind == "U":
            q1 = _Node(
                next(counter), set(q.incoming), set(q.new) | {f[1]},
                set(q.old) | {f}, set(q.next) | {f}, q.label,
            )
            q2 = _Node(
                next(counter), set(q.incoming), set(q.new) | {f[2]},
                set(q.old) | {f}, set(q.next), q.label,
            )
            stack.extend((q1, q2))
        elif kind == "R":
            q1 = _Node(
                next(counter), set(q.incoming), set(q.new) | {f[2]},
                set(q.old) | {f}, set(q.next) | {f}, q.label,
            )
            q2 = _Node(
                next(counter), set(q.incoming), set(q.new) | {f[1], f[2]},
                set(q.old) | {f}, set(q.next), q.label,
            )
            stack.extend((q1, q2))
        else:
            raise AssertionError(kind)
    return nodes


def translate(sp, state_cap=5000):
    """Language-equivalent trimmed NBA of the spec's formula."""
    mgr = make_manager(sp.inputs, sp.outputs)
    skeleton = _skeleton(sp.formula, False, mgr)
    nodes = _expand(skeleton, mgr, state_cap)

    untils = sorted(
        {f for nd in nodes for f in nd.old if f[0] == "U"},
        key=repr,
    )
    m = len(untils)

    # Acceptance set for until u = (a U b): nodes with u unprocessed or b held.
    def in_accept(nd, u):
        return u not in nd.old or u[2] in nd.old

    succ_of = {}
    for nd in nodes:
        for src in nd.incoming:
            succ_of.setdefault(src, []).append(nd)

    # Degeneralize with a counter over the acceptance sets.
    def advance(base, nd):
        j = base
        while j < m and in_accept(nd, untils[j]):
            j += 1
        return j

    # BFS over (node, counter) pairs of the degeneralization.
    init_key = ("init", 0)
    index = {init_key: 0}
    states = [init_key]
    edges = {}
    accepting = set()
    work = [init_key]
    seen = {init_key}
    while work:
        src_key = work.pop()
        src_name, j = src_key
        base = 0 if j == m else j
        for nd in succ_of.get(src_name, []):
            jj = advance(base, nd)
            dst_key = (nd.name, jj)
            if dst_key not in seen:
                seen.add(dst_key)
                index[dst_key] = len(states)
                states.append(dst_key)
                work.append(dst_key)
                if jj == m:
                    accepting.add(index[dst_key])
            pair = (index[src_key], index[dst_key])
            label = Bdd(mgr, nd.label)
            prev = edges.get(pair)
            edges[pair] = label if prev is None else (prev | label)
    if m == 0:
        accepting = set(range(len(states)))
    edges = {k: b for k, b in edges.items() if mgr.is_sat(b)}
    nba = Nba(
        manager=mgr,
        inputs=tuple(sp.inputs),
        outputs=tuple(sp.outputs),
        n_states=len(states),
        initial=0,
        accepting=frozenset(accepting),
        edges=edges,
    )
    return _merge_initial(trim(nba))


def _merge_initial(nba):
    """Fold the initial state into a twin with identical outgoing edges.

    Only applies when nothing re-enters the initial state, so the merge
    cannot change the accepted language.
    """
    q0 = nba.initial
    if q0 is None or nba.n_states < 2:
        return nba
    if any(t == q0 for (_, t) in nba.edges):
        return nba
    out0 = {t: b for (s, t), b in nba.edges.items() if s == q0}
    twin = None
    for cand in range(nba.n_states):
        if cand == q0:
            continue
        outc = {t: b for (s, t), b in nba.edges.items() if s == cand}
        if outc == out0:
            twin = cand
            break
    if twin is None:
        return nba
    keep = [s for s in range(nba.n_states) if s != q0]
    remap = {s: i for i, s in enumerate(keep)}
    return Nba(
        manager=nba.manager,
        inputs=nba.inputs,
        outputs=nba.outputs,
        n_states=len(keep),
        initial=remap[twin],
        accepting=frozenset(remap[s] for s in nba.accepting if s in remap),
        edges={(remap[s], remap[t]): b for (s, t), b in nba.edges.items() if s in remap},
    )


# -- trimming --------------------------------------------------------------

def _sccs(n_states, edge_pairs):
    """Tarjan; returns list of lists of states."""
    adj = {}
    for s, t in edge_pairs:
        adj.setdefault(s, []).append(t)
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = itertools.count()

    for root in range(n_states):
        if root in index:
            continue
        work = [(root, iter(adj.get(root, ())))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj.get(w, ()))))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def trim(nba):
    """Keep exactly the states/edges lying on some accepting run."""
    if nba.initial is None:
        return nba
    pairs = list(nba.edges.keys())
    # forward reachability
    adj = {}
    radj = {}
    for s, t in pairs:
        adj.setdefault(s, []).append(t)
        radj.setdefault(t, []).append(s)
    reach = set()
    work = [nba.initial]
    while work:
        s = work.pop()
        if s in reach:
            continue
        reach.add(s)
        work.extend(adj.get(s, ()))

    # states inside an accepting cycle
    edge_set = set(pairs)
    core = set()
    for comp in _sccs(nba.n_states, pairs):
        compset = set(comp)
        has_cycle = len(comp) > 1 or (comp[0], comp[0]) in edge_set
        if has_cycle and compset & nba.accepting:
            core |= compset
    # co-reachable to an accepting cycle
    good = set()
    work = list(core)
    while work:
        s = work.pop()
        if s in good:
            continue
        good.add(s)
        work.extend(radj.get(s, ()))

    keep = sorted(reach & good)
    if nba.initial not in set(keep):
        return Nba(
            manager=nba.manager,
            inputs=nba.inputs,
            outputs=nba.outputs,
            n_states=0,
            initial=None,
            accepting=frozenset(),
            edges={},
        )
    remap = {s: i for i, s in enumerate(keep)}
    new_edges = {
        (remap[s], remap[t]): b
        for (s, t), b in nba.edges.items()
        if s in remap and t in remap
    }
    return Nba(
        manager=nba.manager,
        inputs=nba.inputs,
        outputs=nba.outputs,
        n_states=len(keep),
        initial=remap[nba.initial],
        accepting=frozenset(remap[s] for s in nba.accepting if s in remap),
        edges=new_edges,
    )


# -- HOA v1 subset ---------------------------------------------------------

def emit_hoa(nba):
    aps = list(nba.variables)
    lines = [
        "HOA: v1",
        f"States: {nba.n_states}",
    ]
    if nba.initial is not None:
        lines.append(f"Start: {nba.initial}")
    lines.append("AP: %d %s" % (len(aps), " ".join(f'"{a}"' for a in aps)))
    if nba.outputs:
        idx = [str(aps.index(o)) for o in nba.outputs]
        lines.append("controllable-AP: " + " ".join(idx))
    lines.append("acc-name: Buchi")
    lines.append("Acceptance: 1 Inf(0)")
    lines.append("--BODY--")
    mgr = nba.manager
    ap_ids = {i: nba.var(a) for i, a in enumerate(aps)}
    for s in range(nba.n_states):
        mark = " {0}" if s in nba.accepting else ""
        lines.append(f"State: {s}{mark}")
        for t, b in sorted(nba.out_edges(s)):
            lines.append(f"[{_bdd_to_hoa_expr(mgr, b, aps, ap_ids)}] {t}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


def _bdd_to_hoa_expr(mgr, b, aps, ap_ids):
    if b == mgr.true:
        return "t"
    if b == mgr.false:
        return "f"
    id_to_ap = {v: i for i, v in ap_ids.items()}
    disjuncts = []
    for cube in mgr.cubes(b):
        lits = [
            ("" if val else "!") + str(id_to_ap[v])
            for v, val in sorted(cube.items())
        ]
        disjuncts.append("&".join(lits))
    return " | ".join(disjuncts)


def _parse_hoa_label(expr, mgr, ap_names, loc):
    expr = expr.strip()
    toks = re.findall(r"\d+|[tf()!&|]", expr)
    if "".join(toks).replace(" ", "") != expr.replace(" ", ""):
        raise HoaFormatError(f"bad label expression {expr!r} ({loc})")
    pos = [0]

    def parse_or():
        f = parse_and()
        while pos[0] < len(toks) and toks[pos[0]] == "|":
            pos[0] += 1
            f = f | parse_and()
        return f

    def parse_and():
        f = parse_unary()
        while pos[0] < len(toks) and toks[pos[0]] == "&":
            pos[0] += 1
            f = f & parse_unary()
        return f

    def parse_unary():
        if pos[0] >= len(toks):
            raise HoaFormatError(f"truncated label {expr!r} ({loc})")
        t = toks[pos[0]]
        pos[0] += 1
        if t == "!":
            return ~parse_unary()
        if t == "(":
            f = parse_or()
            if pos[0] >= len(toks) or toks[pos[0]] != ")":
                raise HoaFormatError(f"unbalanced parens in {expr!r} ({loc})")
            pos[0] += 1
            return f
        if t == "t":
            return mgr.true
        if t == "f":
            return mgr.false
        if t.isdigit():
            i = int(t)
            if i >= len(ap_names):
                raise HoaFormatError(f"AP index {i} out of range ({loc})")
            return mgr.var(ap_names[i])
        raise HoaFormatError(f"bad token {t!r} in label ({loc})")

    f = parse_or()
    if pos[0] != len(toks):
        raise HoaFormatError(f"trailing tokens in label {expr!r} ({loc})")
    return f


def parse_hoa(text, inputs=None, outputs=None):
    """Parse a HOA v1 automaton with state-based Büchi acceptance.

    The I/O partition comes from a ``controllable-AP:`` header or from the
    explicit inputs/outputs arguments.
    """
    header, _, body = text.partition("--BODY--")
    if not body:
        raise HoaFormatError("missing --BODY--")
    body = body.split("--END--")[0]

    n_states = None
    start = None
    aps = None
    controllable = None
    acceptance = None
    for line in header.splitlines():
        line = line.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "HOA":
            if rest != "v1":
                raise HoaFormatError(f"unsupported HOA version {rest!r}")
        elif key == "States":
            n_states = int(rest)
        elif key == "Start":
            start = int(rest)
        elif key == "AP":
            parts = rest.split()
            count = int(parts[0])
            aps = re.findall(r'"([^"]*)"', rest)
            if len(aps) != count:
                raise HoaFormatError("AP count mismatch")
        elif key == "controllable-AP":
            controllable = [int(x) for x in rest.split()] if rest else []
        elif key == "Acceptance":
            acceptance = rest
    if acceptance is None or re.sub(r"\s+", "", acceptance) != "1Inf(0)":
        raise HoaFormatError(
            f"unsupported acceptance condition {acceptance!r}; need Buchi Inf(0)"
        )
    if aps is None or n_states is None:
        raise HoaFormatError("missing AP: or States: header")

    if outputs is None:
        if controllable is None:
            raise HoaFormatError(
                "no controllable-AP header and no explicit partition given"
            )
        outputs = tuple(aps[i] for i in controllable)
    if inputs is None:
        inputs = tuple(a for a in aps if a not in set(outputs))
    mgr = make_manager(inputs, outputs)

    edges = {}
    accepting = set()
    current = None
    for raw in body.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("State:"):
            rest = line[len("State:"):].strip()
            m = re.match(r"(\d+)\s*(\{([\d\s]*)\})?$", rest)
            if not m:
                raise HoaFormatError(f"bad State line {line!r}")
            current = int(m.group(1))
            if current >= n_states:
                raise HoaFormatError(f"state id {current} out of range")
            if m.group(3) and "0" in m.group(3).split():
                accepting.add(current)
        elif line.startswith("["):
            if current is None:
                raise HoaFormatError("edge before any State line")
            m = re.match(r"\[(.*)\]\s*(\d+)\s*(\{[\d\s]*\})?$", line)
            if not m:
                raise HoaFormatError(f"bad edge line {line!r}")
            label = _parse_hoa_label(m.group(1), mgr, aps, f"state {current}")
            dst = int(m.group(2))
            if mgr.is_sat(label):
                pair = (current, dst)
                prev = edges.get(pair)
                edges[pair] = label if prev is None else (prev | label)
        else:
            raise HoaFormatError(f"unsupported body line {line!r}")

    return Nba(
        manager=mgr,
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        n_states=n_states,
        initial=start,
        accepting=frozenset(accepting),
        edges=edges,
    )


# -- emptiness of controller x NBA ----------------------------------------

def product_empty(controller, nba):
    """True iff no run of the controller produces a word accepted by nba.

    The controller must expose initial_state()/step(state, input_dict) and
    declare matching variable names.  A controller ⊥ (dead latch state)
    raises ControllerIncompleteError.
    """
    if tuple(controller.inputs) != tuple(nba.inputs) or tuple(
        controller.outputs
    ) != tuple(nba.outputs):
        raise AlphabetMismatchError(
            f"controller alphabet ({controller.inputs}/{controller.outputs}) "
            f"!= automaton alphabet ({nba.inputs}/{nba.outputs})"
        )
    if nba.is_empty:
        return True
    in_letters = all_letters(nba.inputs)

    # Explore the reachable product graph.
    start_nodes = [(controller.initial_state(), nba.initial)]
    index = {}
    nodes = []
    edges = []
    work = []

    def intern(node):
        key = node
        if key not in index:
            index[key] = len(nodes)
            nodes.append(key)
            work.append(key)
        return index[key]

    for n in start_nodes:
        intern(n)
    # the same controller state is stepped once per product automaton
    # state, so cache the (state, letter) step results
    step_memo = {}

    def ctrl_step(cstate, letter):
        key = (cstate, letter)
        hit = step_memo.get(key)
        if hit is None:
            sigma_i = dict(zip(nba.inputs, letter))
            nstate, out = controller.step(cstate, sigma_i)
            if out is None:
                raise ControllerIncompleteError(
                    "controller produced no output on a reachable input"
                )
            assignment = dict(sigma_i)
            assignment.update(out)
            hit = (nstate, assignment)
            step_memo[key] = hit
        return hit

    while work:
        cstate, q = work.pop()
        src = index[(cstate, q)]
        for letter in in_letters:
            nstate, assignment = ctrl_step(cstate, letter)
            for q2 in nba.successors(q, assignment):
                edges.append((src, intern((nstate, q2))))

    acc_nodes = {i for i, (c, q) in enumerate(nodes) if q in nba.accepting}
    edge_set = set(edges)
    for comp in _sccs(len(nodes), edges):
        compset = set(comp)
        has_cycle = len(comp) > 1 or (comp[0], comp[0]) in edge_set
        if has_cycle and compset & acc_nodes:
            return False
    return True
