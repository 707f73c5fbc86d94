"""Synthesis of the dependent outputs.

Two constructions of the same transducer T_X.  The explicit one runs the
subset construction over the letters that exclude X and reads off the
unique forced value of each dependent output; it serves as the reference
semantics.  The symbolic one compiles the edge BDDs into a sequential
circuit: one latch per automaton state, next-state functions from the
projected edges, output functions from per-edge Skolem functions, and a
`live` wire that goes low exactly when the automaton has no successor
(the ⊥ verdict).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ltldep.automata import Nba
from ltldep.errors import DependencyInvariantError


# -- explicit reference transducer -----------------------------------------

@dataclass
class ExplicitT_X:
    """Subset-construction Mealy machine for the dependent outputs."""

    y_vars: tuple          # inputs of the machine: I then O∖X
    x_vars: tuple          # produced outputs
    states: list           # frozensets of automaton states; index 0 initial
    next: dict             # (state_idx, y letter) -> state_idx or None
    out: dict              # (state_idx, y letter) -> x letter tuple or None (⊥)

    @property
    def n_states(self):
        return len(self.states)

    def run(self, word):
        """Feed y-letters; yields (x letter or None) per step, stops at ⊥."""
        s = 0
        for letter in word:
            val = self.out[(s, tuple(letter))]
            yield val
            s = self.next[(s, tuple(letter))]
            if s is None:
                return


def build_explicit_t_x(a: Nba, xs) -> ExplicitT_X:
    """Reference T_X; raises DependencyInvariantError when some reachable
    subset-state admits two distinct values for the supposedly dependent
    outputs under one non-dependent letter."""
    xs = tuple(x for x in a.outputs if x in set(xs))
    y_vars = tuple(a.inputs) + tuple(o for o in a.outputs if o not in set(xs))
    mgr = a.manager

    y_letters = list(itertools.product((False, True), repeat=len(y_vars)))
    x_letters = list(itertools.product((False, True), repeat=len(xs)))

    states = [frozenset([a.initial])]
    index = {states[0]: 0}
    nxt = {}
    out = {}
    work = [0]
    while work:
        si = work.pop()
        u = states[si]
        for yl in y_letters:
            assign = dict(zip(y_vars, yl))
            forced = None
            succ = set()
            for xl in x_letters:
                assign.update(zip(xs, xl))
                step = set()
                for q in u:
                    for t, b in a.out_edges(q):
                        if mgr.evaluate(b, assign):
                            step.add(t)
                if step:
                    if forced is not None and forced != xl:
                        raise DependencyInvariantError(
                            "outputs %r not forced at %r under %r" % (xs, sorted(u), assign))
                    forced = xl
                    succ |= step
            if forced is None:
                nxt[(si, yl)] = None
                out[(si, yl)] = None
                continue
            v = frozenset(succ)
            if v not in index:
                index[v] = len(states)
                states.append(v)
                work.append(index[v])
            nxt[(si, yl)] = index[v]
            out[(si, yl)] = forced
    return ExplicitT_X(y_vars=y_vars, x_vars=xs, states=states, next=nxt, out=out)


def bottom_reachable(a: Nba, xs) -> bool:
    """Can some word over the non-dependent variables force T_X into ⊥?

    Works on the projected labels ∃X.B, so unlike build_explicit_t_x it
    never enumerates the dependent-output letters.
    """
    xs = set(xs)
    y_vars = tuple(a.inputs) + tuple(o for o in a.outputs if o not in xs)
    mgr = a.manager
    ids = sorted(mgr.var_id(x) for x in xs)
    proj = {s: [(t, mgr.exists(b, ids)) for t, b in a.out_edges(s)]
            for s in range(a.n_states)}

    init = frozenset([a.initial])
    seen = {init}
    work = [init]
    y_letters = list(itertools.product((False, True), repeat=len(y_vars)))
    while work:
        u = work.pop()
        for yl in y_letters:
            assign = dict(zip(y_vars, yl))
            succ = set()
            for q in u:
                for t, b in proj[q]:
                    if mgr.evaluate(b, assign):
                        succ.add(t)
            if not succ:
                return True
            v = frozenset(succ)
            if v not in seen:
                seen.add(v)
                work.append(v)
    return False


# -- gate-level circuit ----------------------------------------------------

FALSE_W = 0
TRUE_W = 1


@dataclass
class Circuit:
    """And/or/not netlist with named inputs and one-hot state latches.

    Wires are integers: 0 and 1 are the constants; others index `gates`,
    each ('input', name) | ('latch', i) | ('not', w) | ('and', w, w) |
    ('or', w, w).
    """

    inputs: list = field(default_factory=list)
    gates: list = field(default_factory=list)
    latch_next: list = field(default_factory=list)
    latch_reset: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)   # name -> wire, ordered

    def __post_init__(self):
        if not self.gates:
            self.gates = [("const", False), ("const", True)]
        self._hash = {}
        self._input_wire = {}

    def _emit(self, gate):
        w = self._hash.get(gate)
        if w is None:
            w = len(self.gates)
            self.gates.append(gate)
            self._hash[gate] = w
        return w

    def input_wire(self, name):
        if name not in self._input_wire:
            self.inputs.append(name)
            self._input_wire[name] = self._emit(("input", name))
        return self._input_wire[name]

    def add_latch(self, reset):
        i = len(self.latch_next)
        self.latch_next.append(FALSE_W)
        self.latch_reset.append(bool(reset))
        return self._emit(("latch", i))

    def not_(self, a):
        if a == FALSE_W:
            return TRUE_W
        if a == TRUE_W:
            return FALSE_W
        g = self.gates[a]
        if g[0] == "not":
            return g[1]
        return self._emit(("not", a))

    def and_(self, a, b):
        if a == FALSE_W or b == FALSE_W:
            return FALSE_W
        if a == TRUE_W:
            return b
        if b == TRUE_W:
            return a
        if a == b:
            return a
        lo, hi = min(a, b), max(a, b)
        return self._emit(("and", lo, hi))

    def or_(self, a, b):
        if a == TRUE_W or b == TRUE_W:
            return TRUE_W
        if a == FALSE_W:
            return b
        if b == FALSE_W:
            return a
        if a == b:
            return a
        lo, hi = min(a, b), max(a, b)
        return self._emit(("or", lo, hi))

    def any_(self, wires):
        acc = FALSE_W
        for w in wires:
            acc = self.or_(acc, w)
        return acc

    @property
    def n_latches(self):
        return len(self.latch_next)

    def initial_latches(self):
        return list(self.latch_reset)

    def eval_wires(self, latches, assign):
        val = [False] * len(self.gates)
        for w, g in enumerate(self.gates):
            k = g[0]
            if k == "const":
                val[w] = g[1]
            elif k == "input":
                val[w] = bool(assign[g[1]])
            elif k == "latch":
                val[w] = bool(latches[g[1]])
            elif k == "not":
                val[w] = not val[g[1]]
            elif k == "and":
                val[w] = val[g[1]] and val[g[2]]
            else:
                val[w] = val[g[1]] or val[g[2]]
        return val

    def step(self, latches, assign):
        """One Mealy step: returns ({output name: bool}, next latches)."""
        val = self.eval_wires(latches, assign)
        outs = {name: val[w] for name, w in self.outputs.items()}
        return outs, [val[w] for w in self.latch_next]


def _bdd_to_gates(circ: Circuit, mgr, b, memo):
    """One mux per BDD node, shared through the circuit's gate hash."""
    def rec(n):
        if n in memo:
            return memo[n]
        if n == 0:
            w = FALSE_W
        elif n == 1:
            w = TRUE_W
        else:
            from ltldep.bdd import Bdd
            h = Bdd(mgr, n)
            vid = mgr._core.level(n)
            v = circ.input_wire(mgr.var_name(vid))
            hi = rec(mgr._core.high(n))
            lo = rec(mgr._core.low(n))
            w = circ.or_(circ.and_(v, hi), circ.and_(circ.not_(v), lo))
        memo[n] = w
        return w
    return rec(b.node)


def _state_wires(circ: Circuit, a: Nba):
    return [circ.add_latch(s == a.initial) for s in range(a.n_states)]


def build_delta_circuit(a: Nba, xs) -> Circuit:
    """Next-state part alone; latch i's next = ⋁ over incoming edges of
    (source latch ∧ projected edge constraint)."""
    circ = Circuit()
    _attach_delta(circ, a, xs, _state_wires(circ, a), {})
    return circ


def _attach_delta(circ, a, xs, p, memo):
    mgr = a.manager
    xids = sorted(mgr.var_id(x) for x in xs)
    for s in range(a.n_states):
        terms = []
        for (src, t), b in a.edges.items():
            if t != s:
                continue
            guard = _bdd_to_gates(circ, mgr, mgr.exists(b, xids), memo)
            terms.append(circ.and_(p[src], guard))
        circ.latch_next[s] = circ.any_(terms)
    circ.outputs["__live"] = circ.any_(circ.latch_next)


def build_lambda_circuit(a: Nba, xs) -> Circuit:
    """Output part alone; see build_t_x_circuit."""
    circ = Circuit()
    _attach_lambda(circ, a, xs, _state_wires(circ, a), {})
    return circ


def _attach_lambda(circ, a, xs, p, memo):
    mgr = a.manager
    xs = [x for x in a.outputs if x in set(xs)]
    xids = [mgr.var_id(x) for x in xs]
    terms = {x: [] for x in xs}
    for (src, t), b in a.edges.items():
        fs = mgr.skolem(b, xids)
        # B with X replaced by its Skolem functions equals exists X B, and
        # the latter is the same guard the delta pass builds, so the gate
        # memo shares it between the two
        fire = circ.and_(p[src], _bdd_to_gates(circ, mgr, mgr.exists(b, xids), memo))
        for x, f in zip(xs, fs):
            terms[x].append(circ.and_(fire, _bdd_to_gates(circ, mgr, f, memo)))
    for x in xs:
        circ.outputs[x] = circ.any_(terms[x])


def build_t_x_circuit(a: Nba, xs) -> Circuit:
    """Full T_X circuit: dependent outputs plus the `live` wire.

    Latches one-hot encode the automaton state, reset at the initial
    state.  Output values are only meaningful while `live` is high; a low
    `live` means the automaton rejected the history (⊥).
    """
    circ = Circuit()
    p = _state_wires(circ, a)
    memo = {}
    _attach_lambda(circ, a, xs, p, memo)
    _attach_delta(circ, a, xs, p, memo)
    # declaration order: dependent outputs first, live last
    live = circ.outputs.pop("__live")
    circ.outputs["__live"] = live
    return circ
