"""Classical synthesis for the outputs that remain after projection.

The projected automaton is determinized to a parity automaton with
compact history trees, turned into a bipartite game between environment
(input picker) and system (output picker), and solved with Zielonka's
recursive algorithm.  The winning strategy becomes a Mealy machine over
the non-dependent outputs.

Letters are enumerated explicitly; after projecting out dependent
variables the remaining alphabet is small in the intended workloads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ltldep.automata import Nba
from ltldep.errors import ResourceBudgetError, UnrealizableError


# -- deterministic parity automaton ----------------------------------------

@dataclass
class Dpa:
    """Total DPA over explicit letters; max parity, even accepts."""

    variables: tuple
    letters: list
    n_states: int
    initial: int
    # (state, letter_index) -> state
    trans: dict
    priority: list

    def accepts_lasso(self, stem, cycle):
        s = self.initial
        for li in stem:
            s = self.trans[(s, li)]
        seen = {}
        path = []      # states at cycle boundaries
        visited = []   # all states touched while applying each full cycle
        while s not in seen:
            seen[s] = len(path)
            path.append(s)
            touched = []
            for li in cycle:
                s = self.trans[(s, li)]
                touched.append(s)
            visited.append(touched)
        loop_states = set()
        for touched in visited[seen[s]:]:
            loop_states.update(touched)
        return max(self.priority[t] for t in loop_states) % 2 == 0


def _letter_tuples(variables):
    return list(itertools.product((False, True), repeat=len(variables)))


def _successor_table(a: Nba, variables, letters):
    """per state: list over letter index of the successor state set"""
    mgr = a.manager
    table = []
    for s in range(a.n_states):
        row = []
        out = a.out_edges(s)
        for letter in letters:
            assign = dict(zip(variables, letter))
            row.append(frozenset(t for t, b in out if mgr.evaluate(b, assign)))
        table.append(row)
    return table


class _TreeKey:
    """Canonical nested-tuple form of a compact history tree."""

    @staticmethod
    def freeze(labels, kids, root):
        def rec(v):
            return (v, labels[v], tuple(rec(c) for c in kids[v]))
        return rec(root)

    @staticmethod
    def thaw(key):
        labels = {}
        kids = {}
        def rec(node):
            v, lab, children = node
            labels[v] = lab
            kids[v] = [c[0] for c in children]
            for c in children:
                rec(c)
            return v
        root = rec(key)
        return labels, kids, root


_DEAD = "dead"


def _tree_step(key, succ_row_for, acc):
    """One history-tree transition; returns (new key, min-parity priority).

    Bad event: the lowest-named node emptied out (odd priority).
    Good event: the lowest-named node whose label was fully covered by
    its children, which are then discarded (even priority).
    """
    labels, kids, root = _TreeKey.thaw(key)
    names = sorted(labels)

    stepped = {v: frozenset().union(*(succ_row_for(q) for q in labels[v]))
               if labels[v] else frozenset() for v in names}
    if not stepped[root]:
        return _DEAD, 1

    labels = dict(stepped)
    fresh = names[-1] + 1
    for v in list(names):
        spawn = labels[v] & acc
        if spawn:
            labels[fresh] = spawn
            kids[fresh] = []
            kids[v].append(fresh)
            fresh += 1

    # older siblings keep shared states; strip them from younger subtrees
    def strip(v, banned):
        labels[v] = labels[v] - banned
        for c in kids[v]:
            strip(c, banned)

    def dedup(v):
        claimed = frozenset()
        for c in kids[v]:
            strip(c, claimed)
            claimed = claimed | labels[c]
            dedup(c)
    dedup(root)

    # drop emptied nodes, whole subtrees at once
    emptied = []
    shed = []

    def collect(v, into):
        into.append(v)
        for c in kids[v]:
            collect(c, into)

    def sweep(v):
        kept = []
        for c in kids[v]:
            if labels[c]:
                sweep(c)
                kept.append(c)
            else:
                collect(c, emptied)
        kids[v] = kept
    sweep(root)

    # nodes whose children jointly cover them shed all descendants;
    # the shed names are part of the good event, not a bad one
    green = []
    for v in sorted(labels):
        if v not in emptied and v not in shed and kids[v]:
            if frozenset().union(*(labels[c] for c in kids[v])) == labels[v]:
                green.append(v)
                for c in kids[v]:
                    collect(c, shed)
                kids[v] = []

    for v in emptied + shed:
        labels.pop(v, None)
        kids.pop(v, None)

    return _finish(labels, kids, root, emptied, green)


def _finish(labels, kids, root, removed_names, green_names):
    rename = {v: i + 1 for i, v in enumerate(sorted(labels))}
    labels2 = {rename[v]: labels[v] for v in labels}
    kids2 = {rename[v]: [rename[c] for c in kids[v]] for v in kids}
    key = _TreeKey.freeze(labels2, kids2, rename[root])

    e = min(removed_names, default=None)
    f = min(green_names, default=None)
    if e is None and f is None:
        prio = None
    elif f is not None and (e is None or f < e):
        prio = 2 * f
    else:
        prio = 2 * e - 1
    return key, prio


def determinize(a: Nba, variables=None, letter_cap=1024, state_cap=200000) -> Dpa:
    """History-tree determinization of a Buchi automaton.

    `variables` selects which atomic propositions the explicit alphabet
    ranges over; labels must not depend on anything outside it.
    """
    if variables is None:
        variables = a.inputs + a.outputs
    variables = tuple(variables)
    if 2 ** len(variables) > letter_cap:
        raise ResourceBudgetError(
            "alphabet 2^%d exceeds cap %d" % (len(variables), letter_cap))
    letters = _letter_tuples(variables)

    if a.is_empty:
        return Dpa(variables=variables, letters=letters, n_states=1, initial=0,
                   trans={(0, li): 0 for li in range(len(letters))}, priority=[1])

    succ = _successor_table(a, variables, letters)
    acc = frozenset(a.accepting)

    init_key = (1, frozenset([a.initial]), ())
    states = [init_key]
    raw = {}
    neutral_marker = object()
    dead_idx = None
    # min-parity priority of the transition entering each state
    in_prio = {0: neutral_marker}

    def intern(key, prio):
        nonlocal dead_idx
        if key == _DEAD:
            if dead_idx is None:
                dead_idx = len(states)
                states.append(_DEAD)
                in_prio[dead_idx] = 1
                for li in range(len(letters)):
                    raw[(dead_idx, li)] = dead_idx
            return dead_idx
        full = (key, prio if prio is not None else neutral_marker)
        if full not in index:
            if len(states) >= state_cap:
                raise ResourceBudgetError("determinization exceeded %d states" % state_cap)
            index[full] = len(states)
            states.append(key)
            in_prio[index[full]] = full[1]
            work.append(full)
        return index[full]

    # worklist over (tree, entering-priority) pairs
    index = {(init_key, neutral_marker): 0}
    work = [(init_key, neutral_marker)]
    step_cache = {}
    while work:
        full = work.pop()
        key = full[0]
        src = index[full]
        for li in range(len(letters)):
            cached = step_cache.get((key, li))
            if cached is None:
                cached = _tree_step(key, lambda q: succ[q][li], acc)
                step_cache[(key, li)] = cached
            nkey, prio = cached
            raw[(src, li)] = intern(nkey, prio)

    # convert entering-transition min parity to state-based max parity
    numeric = [p for p in in_prio.values() if p is not neutral_marker]
    top = max(numeric, default=0)
    ceil = top + 1 if top % 2 == 1 else top + 2  # even constant above all
    neutral_val = 1  # odd, dominated by everything
    priority = []
    for i in range(len(states)):
        p = in_prio[i]
        priority.append(neutral_val if p is neutral_marker else ceil - p)

    return Dpa(variables=variables, letters=letters, n_states=len(states),
               initial=0, trans=raw, priority=priority)


# -- parity game -----------------------------------------------------------

@dataclass
class ParityGame:
    nodes: list
    owner: dict        # node -> 0 system / 1 environment
    priority: dict
    succ: dict         # node -> list of successors
    moves: dict = field(default_factory=dict)  # (node, succ) -> letter info


def build_game(d: Dpa, inputs, out_nondep) -> ParityGame:
    """Bipartite arena: environment fixes inputs, then system fixes the
    non-dependent outputs; the automaton advances on the joint letter."""
    inputs = tuple(inputs)
    out_nondep = tuple(out_nondep)
    pos = {v: i for i, v in enumerate(d.variables)}
    for v in inputs + out_nondep:
        if v not in pos:
            raise ValueError("variable %r not in DPA alphabet" % (v,))

    in_letters = _letter_tuples(inputs)
    out_letters = _letter_tuples(out_nondep)

    def joint_index(sig_i, sig_o):
        vals = [False] * len(d.variables)
        for v, b in zip(inputs, sig_i):
            vals[pos[v]] = b
        for v, b in zip(out_nondep, sig_o):
            vals[pos[v]] = b
        return d.letters.index(tuple(vals))

    joint = {
        (ii, oi): joint_index(in_letters[ii], out_letters[oi])
        for ii in range(len(in_letters))
        for oi in range(len(out_letters))
    }

    nodes = []
    owner = {}
    priority = {}
    succ = {}
    moves = {}
    for s in range(d.n_states):
        env = ("env", s)
        nodes.append(env)
        owner[env] = 1
        priority[env] = d.priority[s]
        succ[env] = []
        for ii in range(len(in_letters)):
            sysn = ("sys", s, ii)
            nodes.append(sysn)
            owner[sysn] = 0
            priority[sysn] = 0
            succ[env].append(sysn)
            moves[(env, sysn)] = ii
            succ[sysn] = []
            for oi in range(len(out_letters)):
                t = d.trans[(s, joint[(ii, oi)])]
                tgt = ("env", t)
                if tgt not in succ[sysn]:
                    succ[sysn].append(tgt)
                # keep the first output choice reaching each target
                moves.setdefault((sysn, tgt), oi)
    g = ParityGame(nodes=nodes, owner=owner, priority=priority, succ=succ, moves=moves)
    g.in_letters = in_letters
    g.out_letters = out_letters
    g.inputs = inputs
    g.out_nondep = out_nondep
    return g


def _attractor(game, region, target, player):
    """Player-`player` attractor of target within region; also returns the
    attracting move for that player's nodes."""
    region = set(region)
    pred = {v: [] for v in region}
    for v in region:
        for w in game.succ[v]:
            if w in region:
                pred[w].append(v)
    count = {
        v: sum(1 for w in game.succ[v] if w in region)
        for v in region
    }
    attr = set(t for t in target if t in region)
    strat = {}
    work = list(attr)
    while work:
        w = work.pop()
        for v in pred[w]:
            if v in attr:
                continue
            if game.owner[v] == player:
                attr.add(v)
                strat[v] = w
                work.append(v)
            else:
                count[v] -= 1
                if count[v] == 0:
                    attr.add(v)
                    work.append(v)
    return attr, strat


def _zielonka(game, region):
    if not region:
        return set(), set(), {}, {}
    p = max(game.priority[v] for v in region)
    player = p % 2
    top = {v for v in region if game.priority[v] == p}
    attr, astrat = _attractor(game, region, top, player)
    w0, w1, s0, s1 = _zielonka(game, region - attr)
    wins = (w0, w1)
    strats = (s0, s1)
    opp = 1 - player
    if not wins[opp]:
        mine = dict(strats[player])
        mine.update(astrat)
        for v in top:
            if game.owner[v] == player and v not in mine:
                for w in game.succ[v]:
                    if w in region:
                        mine[v] = w
                        break
        if player == 0:
            return set(region), set(), mine, {}
        return set(), set(region), {}, mine
    battr, bstrat = _attractor(game, region, wins[opp], opp)
    w0b, w1b, s0b, s1b = _zielonka(game, region - battr)
    theirs = dict(strats[opp])
    theirs.update(bstrat)
    theirs.update((s0b, s1b)[opp])
    if opp == 0:
        return w0b | battr, w1b, theirs, s1b
    return w0b, w1b | battr, s0b, theirs


def solve_parity(game: ParityGame):
    """Winning regions for both players and a positional system strategy."""
    w0, w1, s0, _ = _zielonka(game, set(game.nodes))
    return w0, w1, s0


# -- strategy extraction ---------------------------------------------------

@dataclass
class MealyT_Y:
    """Mealy machine over the non-dependent outputs."""

    inputs: tuple
    outputs: tuple
    n_states: int
    initial: int
    next: dict    # (state, input letter tuple) -> state
    out: dict     # (state, input letter tuple) -> output letter tuple

    def run_step(self, state, sig_i):
        key = (state, tuple(sig_i))
        return self.next[key], self.out[key]


def extract_t_y(game: ParityGame, strategy, d: Dpa) -> MealyT_Y:
    """Reachable fragment of the DPA under the positional strategy."""
    init = ("env", d.initial)
    index = {init: 0}
    order = [init]
    nxt = {}
    out = {}
    work = [init]
    while work:
        env = work.pop()
        s = index[env]
        for sysn in game.succ[env]:
            ii = game.moves[(env, sysn)]
            if sysn not in strategy:
                raise UnrealizableError("no winning move at %r" % (sysn,))
            tgt = strategy[sysn]
            oi = game.moves[(sysn, tgt)]
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
                work.append(tgt)
            key = (s, game.in_letters[ii])
            nxt[key] = index[tgt]
            out[key] = game.out_letters[oi]
    return MealyT_Y(inputs=game.inputs, outputs=game.out_nondep,
                    n_states=len(order), initial=0, next=nxt, out=out)


def realizable(a: Nba, inputs, out_nondep, letter_cap=1024, state_cap=200000):
    """Solve the synthesis game for the projected automaton.

    Returns (verdict, MealyT_Y or None).
    """
    if a.is_empty:
        return False, None
    variables = tuple(inputs) + tuple(out_nondep)
    d = determinize(a, variables, letter_cap=letter_cap, state_cap=state_cap)
    game = build_game(d, inputs, out_nondep)
    w0, w1, strat = solve_parity(game)
    if ("env", d.initial) not in w0:
        return False, None
    return True, extract_t_y(game, strat, d)
