"""Controller composition, verification, and AIGER interchange.

The final controller pairs the Mealy machine for the non-dependent
outputs with the dependent-output circuit.  Per step it reads the
inputs, lets the Mealy machine fix the non-dependent outputs, and feeds
both into the circuit, which produces the dependent outputs and a live
flag; a low live flag is the ⊥ verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from ltldep.automata import translate, product_empty
from ltldep.dep_synth import Circuit, FALSE_W, TRUE_W
from ltldep.errors import AlphabetMismatchError
from ltldep.nondep_synth import MealyT_Y
from ltldep.spec import Spec, negate


@dataclass
class Controller:
    inputs: tuple
    outputs: tuple            # all spec outputs, declaration order
    t_y: MealyT_Y = None      # absent when every output is dependent
    t_x: Circuit = None       # absent when X is empty

    def __post_init__(self):
        have = set(self.t_y.outputs) if self.t_y else set()
        have |= set(self.t_x.outputs) - {"__live"} if self.t_x else set()
        if have != set(self.outputs):
            raise AlphabetMismatchError(
                "parts produce %r, controller declares %r" % (sorted(have), self.outputs))

    def initial_state(self):
        sy = self.t_y.initial if self.t_y else 0
        latches = tuple(self.t_x.initial_latches()) if self.t_x else ()
        return (sy, latches)

    def step(self, state, sigma_i):
        """Returns (next state, output dict) or (state, None) on ⊥."""
        sy, latches = state
        assign = dict(sigma_i)
        if self.t_y:
            key = tuple(bool(sigma_i[v]) for v in self.t_y.inputs)
            sy2, oy = self.t_y.run_step(sy, key)
            assign.update(zip(self.t_y.outputs, oy))
        else:
            sy2 = sy
        if self.t_x:
            vals, nl = self.t_x.step(list(latches), assign)
            if not vals["__live"]:
                return state, None
            assign.update((k, v) for k, v in vals.items() if k != "__live")
            latches = tuple(nl)
        out = {o: bool(assign[o]) for o in self.outputs}
        return (sy2, latches), out


def compose(t_y, t_x, inputs, outputs) -> Controller:
    return Controller(inputs=tuple(inputs), outputs=tuple(outputs), t_y=t_y, t_x=t_x)


def simulate(c: Controller, word):
    """Outputs per input letter; a trailing None marks ⊥ and stops the run."""
    state = c.initial_state()
    res = []
    for sigma_i in word:
        state, out = c.step(state, sigma_i)
        res.append(out)
        if out is None:
            break
    return res


def verify(c: Controller, sp: Spec) -> bool:
    """True iff no controller run satisfies the negated requirement."""
    return product_empty(c, translate(negate(sp)))


# -- flattening to a single netlist ----------------------------------------

def _flatten(c: Controller) -> Circuit:
    """Single circuit equivalent to the composed controller.

    The Mealy machine is binary-encoded into extra latches; its next-state
    and output functions become sums of state-and-input minterms.
    """
    full = Circuit()
    for name in c.inputs:
        full.input_wire(name)
    wires = {name: full.input_wire(name) for name in c.inputs}

    if c.t_y:
        n = c.t_y.n_states
        bits = max(1, (n - 1).bit_length())
        # initial state is index 0: all-zero reset
        state_w = [full.add_latch(False) for _ in range(bits)]

        def state_eq(s):
            acc = TRUE_W
            for j in range(bits):
                bit = (s >> j) & 1
                acc = full.and_(acc, state_w[j] if bit else full.not_(state_w[j]))
            return acc

        def inputs_eq(letter):
            acc = TRUE_W
            for v, b in zip(c.t_y.inputs, letter):
                w = wires[v]
                acc = full.and_(acc, w if b else full.not_(w))
            return acc

        next_terms = [[] for _ in range(bits)]
        out_terms = {o: [] for o in c.t_y.outputs}
        for (s, letter), t in c.t_y.next.items():
            cond = full.and_(state_eq(s), inputs_eq(letter))
            for j in range(bits):
                if (t >> j) & 1:
                    next_terms[j].append(cond)
            for o, b in zip(c.t_y.outputs, c.t_y.out[(s, letter)]):
                if b:
                    out_terms[o].append(cond)
        for j in range(bits):
            full.latch_next[j] = full.any_(next_terms[j])
        for o in c.t_y.outputs:
            wires[o] = full.any_(out_terms[o])

    if c.t_x:
        remap = {FALSE_W: FALSE_W, TRUE_W: TRUE_W}
        latch_base = full.n_latches
        for i in range(c.t_x.n_latches):
            full.add_latch(c.t_x.latch_reset[i])
        for w, g in enumerate(c.t_x.gates):
            if w in remap:
                continue
            k = g[0]
            if k == "input":
                remap[w] = wires[g[1]]
            elif k == "latch":
                remap[w] = full._emit(("latch", latch_base + g[1]))
            elif k == "not":
                remap[w] = full.not_(remap[g[1]])
            elif k == "and":
                remap[w] = full.and_(remap[g[1]], remap[g[2]])
            else:
                remap[w] = full.or_(remap[g[1]], remap[g[2]])
        for i in range(c.t_x.n_latches):
            full.latch_next[latch_base + i] = remap[c.t_x.latch_next[i]]
        for name, w in c.t_x.outputs.items():
            if name != "__live":
                wires[name] = remap[w]
        live = remap[c.t_x.outputs["__live"]]
    else:
        live = TRUE_W

    for o in c.outputs:
        full.outputs[o] = wires[o]
    full.outputs["__live"] = live
    return full


# -- AIGER ASCII -----------------------------------------------------------

def emit_aiger(c: Controller) -> str:
    """ASCII aag with explicit latch resets; outputs are the controller
    outputs in declaration order followed by the `__live` flag."""
    circ = _flatten(c)
    n_in = len(c.inputs)
    n_latch = circ.n_latches
    lit_of = {FALSE_W: 0, TRUE_W: 1}
    next_var = 1
    in_lit = {}
    for idx, name in enumerate(c.inputs):
        in_lit[name] = 2 * next_var
        next_var += 1
    latch_lit = []
    for i in range(n_latch):
        latch_lit.append(2 * next_var)
        next_var += 1

    ands = []

    def _and_lit(a, b):
        nonlocal next_var
        out = 2 * next_var
        next_var += 1
        ands.append((out, a, b))
        return out

    # gates are stored in topological order
    for w, g in enumerate(circ.gates):
        if w in lit_of:
            continue
        k = g[0]
        if k == "input":
            lit_of[w] = in_lit[g[1]]
        elif k == "latch":
            lit_of[w] = latch_lit[g[1]]
        elif k == "not":
            lit_of[w] = lit_of[g[1]] ^ 1
        elif k == "and":
            lit_of[w] = _and_lit(lit_of[g[1]], lit_of[g[2]])
        else:
            lit_of[w] = _and_lit(lit_of[g[1]] ^ 1, lit_of[g[2]] ^ 1) ^ 1

    out_names = list(c.outputs) + ["__live"]
    out_lits = [lit_of[circ.outputs[name]] for name in out_names]
    next_lits = [lit_of[circ.latch_next[i]] for i in range(n_latch)]

    lines = ["aag %d %d %d %d %d" % (next_var - 1, n_in, n_latch, len(out_names), len(ands))]
    for name in c.inputs:
        lines.append(str(in_lit[name]))
    for i in range(n_latch):
        lines.append("%d %d %d" % (latch_lit[i], next_lits[i], 1 if circ.latch_reset[i] else 0))
    lines.extend(str(x) for x in out_lits)
    lines.extend("%d %d %d" % a for a in ands)
    for idx, name in enumerate(c.inputs):
        lines.append("i%d %s" % (idx, name))
    for i in range(n_latch):
        lines.append("l%d s%d" % (i, i))
    for idx, name in enumerate(out_names):
        lines.append("o%d %s" % (idx, name))
    return "\n".join(lines) + "\n"


class AigController:
    """Executable view of a parsed aag file; same step interface as
    Controller, with ⊥ read off the `__live` output."""

    def __init__(self, inputs, latches, outputs, ands, symbols):
        self._in_lits = inputs
        self._latches = latches          # list of (lit, next_lit, reset)
        self._out_lits = outputs
        self._ands = ands                # list of (out, a, b)
        names = [symbols.get("i%d" % k, "i%d" % k) for k in range(len(inputs))]
        onames = [symbols.get("o%d" % k, "o%d" % k) for k in range(len(outputs))]
        self.inputs = tuple(names)
        self._out_names = onames
        self.outputs = tuple(n for n in onames if n != "__live")
        self._live_pos = onames.index("__live") if "__live" in onames else None

    def initial_state(self):
        return tuple(bool(r) for (_, _, r) in self._latches)

    def _eval(self, state, sigma_i):
        val = {0: False, 1: True}
        for name, l in zip(self.inputs, self._in_lits):
            val[l] = bool(sigma_i[name])
            val[l ^ 1] = not val[l]
        for (l, _, _), s in zip(self._latches, state):
            val[l] = bool(s)
            val[l ^ 1] = not val[l]
        for out, a, b in self._ands:
            val[out] = val[a] and val[b]
            val[out ^ 1] = not val[out]
        return val

    def step(self, state, sigma_i):
        val = self._eval(state, sigma_i)
        if self._live_pos is not None and not val[self._out_lits[self._live_pos]]:
            return state, None
        nxt = tuple(val[n] for (_, n, _) in self._latches)
        out = {
            name: val[l]
            for name, l in zip(self._out_names, self._out_lits)
            if name != "__live"
        }
        return nxt, out


def parse_aiger(text: str) -> AigController:
    lines = [ln.rstrip("\n") for ln in text.strip().split("\n")]
    header = lines[0].split()
    if header[0] != "aag":
        raise ValueError("only ASCII aag format is supported")
    _, _, n_in, n_latch, n_out, n_and = header[:6]
    n_in, n_latch, n_out, n_and = int(n_in), int(n_latch), int(n_out), int(n_and)
    pos = 1
    inputs = [int(lines[pos + k]) for k in range(n_in)]
    pos += n_in
    latches = []
    for k in range(n_latch):
        parts = lines[pos + k].split()
        lit, nxt = int(parts[0]), int(parts[1])
        reset = int(parts[2]) if len(parts) > 2 else 0
        latches.append((lit, nxt, reset))
    pos += n_latch
    outputs = [int(lines[pos + k]) for k in range(n_out)]
    pos += n_out
    ands = []
    for k in range(n_and):
        a, b, cc = lines[pos + k].split()
        ands.append((int(a), int(b), int(cc)))
    pos += n_and
    symbols = {}
    for ln in lines[pos:]:
        if ln.startswith("c"):
            break
        if " " in ln:
            key, name = ln.split(" ", 1)
            symbols[key] = name
    return AigController(inputs, latches, outputs, ands, symbols)
