"""LTL front-end: formula AST, spec file parser, pretty-printer.

Spec file format (UTF-8):

    INPUTS a, b;
    OUTPUTS c;
    LTL G (c <-> (a & b));

Operators: ``! & | -> <-> X U R F G``, parentheses, ``true``/``false``
constants, ``#`` line comments.  Precedence (tightest first): unary,
U/R (right-assoc), &, |, -> (right-assoc), <->.
"""

import re
from dataclasses import dataclass

from ltldep.errors import SpecSyntaxError


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    operand: Formula


@dataclass(frozen=True)
class Always(Formula):
    operand: Formula


TRUE = Const(True)
FALSE = Const(False)


# Constant-folding constructors; used by generated formulas so that
# degenerate cases (adding zero bits, etc.) collapse.

def f_not(a):
    if isinstance(a, Const):
        return Const(not a.value)
    if isinstance(a, Not):
        return a.operand
    return Not(a)


def f_and(a, b):
    if isinstance(a, Const):
        return b if a.value else FALSE
    if isinstance(b, Const):
        return a if b.value else FALSE
    return And(a, b)


def f_or(a, b):
    if isinstance(a, Const):
        return TRUE if a.value else b
    if isinstance(b, Const):
        return TRUE if b.value else a
    return Or(a, b)


def f_iff(a, b):
    if isinstance(a, Const):
        return b if a.value else f_not(b)
    if isinstance(b, Const):
        return a if b.value else f_not(a)
    return Iff(a, b)


def f_xor(a, b):
    if isinstance(a, Const):
        return f_not(b) if a.value else b
    if isinstance(b, Const):
        return f_not(a) if b.value else a
    return Not(Iff(a, b))


def atoms(formula):
    """Set of atom names occurring in the formula (DAG-aware)."""
    seen = set()
    out = set()

    def walk(f):
        if id(f) in seen:
            return
        seen.add(id(f))
        if isinstance(f, Atom):
            out.add(f.name)
        elif isinstance(f, (Not, Next, Eventually, Always)):
            walk(f.operand)
        elif isinstance(f, (And, Or, Implies, Iff, Until, Release)):
            walk(f.left)
            walk(f.right)

    walk(formula)
    return out


def formula_size(formula):
    """Number of distinct subformulas."""
    seen = {}

    def walk(f):
        if id(f) in seen:
            return
        seen[id(f)] = f
        if isinstance(f, (Not, Next, Eventually, Always)):
            walk(f.operand)
        elif isinstance(f, (And, Or, Implies, Iff, Until, Release)):
            walk(f.left)
            walk(f.right)

    walk(formula)
    # Structurally identical shared nodes may have distinct ids; dedupe.
    return len(set(map(_shape_key, seen.values())))


def _shape_key(f, memo=None):
    if memo is None:
        memo = {}
    k = memo.get(id(f))
    if k is not None:
        return k
    if isinstance(f, Atom):
        k = ("atom", f.name)
    elif isinstance(f, Const):
        k = ("const", f.value)
    elif isinstance(f, (Not, Next, Eventually, Always)):
        k = (type(f).__name__, _shape_key(f.operand, memo))
    else:
        k = (type(f).__name__, _shape_key(f.left, memo), _shape_key(f.right, memo))
    memo[id(f)] = k
    return k


# -- pretty printing -------------------------------------------------------

_PREC_IFF, _PREC_IMPL, _PREC_OR, _PREC_AND, _PREC_UNTIL, _PREC_UNARY = range(6)


def format_formula(formula):
    def go(f, ctx):
        if isinstance(f, Atom):
            return f.name
        if isinstance(f, Const):
            return "true" if f.value else "false"
        if isinstance(f, Not):
            return "!" + go(f.operand, _PREC_UNARY)
        if isinstance(f, Next):
            return "X " + go(f.operand, _PREC_UNARY)
        if isinstance(f, Eventually):
            return "F " + go(f.operand, _PREC_UNARY)
        if isinstance(f, Always):
            return "G " + go(f.operand, _PREC_UNARY)
        if isinstance(f, Until):
            s = go(f.left, _PREC_UNARY) + " U " + go(f.right, _PREC_UNTIL)
            prec = _PREC_UNTIL
        elif isinstance(f, Release):
            s = go(f.left, _PREC_UNARY) + " R " + go(f.right, _PREC_UNTIL)
            prec = _PREC_UNTIL
        elif isinstance(f, And):
            s = go(f.left, _PREC_AND) + " & " + go(f.right, _PREC_AND)
            prec = _PREC_AND
        elif isinstance(f, Or):
            s = go(f.left, _PREC_OR) + " | " + go(f.right, _PREC_OR)
            prec = _PREC_OR
        elif isinstance(f, Implies):
            s = go(f.left, _PREC_IMPL + 1) + " -> " + go(f.right, _PREC_IMPL)
            prec = _PREC_IMPL
        elif isinstance(f, Iff):
            s = go(f.left, _PREC_IFF) + " <-> " + go(f.right, _PREC_IFF + 1)
            prec = _PREC_IFF
        else:
            raise TypeError(f"unknown formula node {f!r}")
        return "(" + s + ")" if prec < ctx else s

    return go(formula, 0)


@dataclass(frozen=True)
class Spec:
    """A reactive synthesis problem: formula plus the I/O partition."""

    formula: Formula
    inputs: tuple
    outputs: tuple

    @property
    def variables(self):
        return tuple(self.inputs) + tuple(self.outputs)


def format_spec(spec):
    parts = []
    if spec.inputs:
        parts.append("INPUTS " + ", ".join(spec.inputs) + ";")
    else:
        parts.append("INPUTS;")
    if spec.outputs:
        parts.append("OUTPUTS " + ", ".join(spec.outputs) + ";")
    else:
        parts.append("OUTPUTS;")
    parts.append("LTL " + format_formula(spec.formula) + ";")
    return "\n".join(parts) + "\n"


def negate(spec):
    """Same partition, complemented formula."""
    return Spec(f_not(spec.formula), spec.inputs, spec.outputs)


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#[^\n]*)
      | (?P<nl>\n)
      | (?P<arrow><->|->)
      | (?P<punct>[()!&|;,])
      | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"INPUTS", "OUTPUTS", "LTL"}
_UNARY = {"X": Next, "F": Eventually, "G": Always}


class _Tokens:
    def __init__(self, text):
        self.toks = []
        line, col = 1, 1
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise SpecSyntaxError(
                    f"unexpected character {text[pos]!r}", line, col
                )
            kind = m.lastgroup
            val = m.group()
            if kind == "nl":
                line += 1
                col = 1
            else:
                if kind not in ("ws", "comment"):
                    self.toks.append((val, line, col))
                col += len(val)
            pos = m.end()
        self.toks.append((None, line, col))
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def loc(self):
        return self.toks[self.i][1], self.toks[self.i][2]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t[0]

    def expect(self, val):
        if self.peek() != val:
            line, col = self.loc()
            raise SpecSyntaxError(
                f"expected {val!r}, found {self.peek()!r}", line, col
            )
        return self.next()


def parse_formula_text(text):
    toks = _Tokens(text)
    f = _parse_iff(toks)
    if toks.peek() is not None:
        line, col = toks.loc()
        raise SpecSyntaxError(f"trailing input {toks.peek()!r}", line, col)
    return f


def _parse_iff(toks):
    f = _parse_impl(toks)
    while toks.peek() == "<->":
        toks.next()
        f = Iff(f, _parse_impl(toks))
    return f


def _parse_impl(toks):
    f = _parse_or(toks)
    if toks.peek() == "->":
        toks.next()
        return Implies(f, _parse_impl(toks))
    return f


def _parse_or(toks):
    f = _parse_and(toks)
    while toks.peek() == "|":
        toks.next()
        f = Or(f, _parse_and(toks))
    return f


def _parse_and(toks):
    f = _parse_until(toks)
    while toks.peek() == "&":
        toks.next()
        f = And(f, _parse_until(toks))
    return f


def _parse_until(toks):
    f = _parse_unary(toks)
    if toks.peek() == "U":
        toks.next()
        return Until(f, _parse_until(toks))
    if toks.peek() == "R":
        toks.next()
        return Release(f, _parse_until(toks))
    return f


def _parse_unary(toks):
    t = toks.peek()
    if t == "!":
        toks.next()
        return Not(_parse_unary(toks))
    if t in _UNARY:
        toks.next()
        return _UNARY[t](_parse_unary(toks))
    if t == "(":
        toks.next()
        f = _parse_iff(toks)
        toks.expect(")")
        return f
    if t == "true":
        toks.next()
        return TRUE
    if t == "false":
        toks.next()
        return FALSE
    if t is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t):
        toks.next()
        return Atom(t)
    line, col = toks.loc()
    raise SpecSyntaxError(f"expected a formula, found {t!r}", line, col)


def _parse_name_list(toks):
    names = []
    while toks.peek() != ";":
        t = toks.peek()
        if t is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t):
            line, col = toks.loc()
            raise SpecSyntaxError(f"expected a variable name, found {t!r}", line, col)
        names.append(toks.next())
        if toks.peek() == ",":
            toks.next()
    toks.expect(";")
    return names


def parse_spec(text):
    """Parse the spec file format into a Spec; validates the partition."""
    toks = _Tokens(text)
    toks.expect("INPUTS")
    inputs = _parse_name_list(toks)
    toks.expect("OUTPUTS")
    outputs = _parse_name_list(toks)
    toks.expect("LTL")
    formula = _parse_iff(toks)
    toks.expect(";")
    if toks.peek() is not None:
        line, col = toks.loc()
        raise SpecSyntaxError(f"trailing input {toks.peek()!r}", line, col)

    overlap = set(inputs) & set(outputs)
    if overlap:
        raise SpecSyntaxError(
            "variables declared both input and output: " + ", ".join(sorted(overlap))
        )
    for names in (inputs, outputs):
        if len(set(names)) != len(names):
            raise SpecSyntaxError("duplicate variable declaration")
    declared = set(inputs) | set(outputs)
    undeclared = atoms(formula) - declared
    if undeclared:
        raise SpecSyntaxError("undeclared atoms: " + ", ".join(sorted(undeclared)))
    return Spec(formula, tuple(inputs), tuple(outputs))


# -- generated families ----------------------------------------------------

def gen_midbit_spec(n):
    """Multiplier family: o_{n+1} must equal the n-th least significant bit
    of the unsigned product of inputs i_1..i_n and outputs o_1..o_n.

    The constraint's BDD is exponential in n under any order, while its
    projection on the free variables is constant True, which makes the
    family a stress test for projection.
    """
    if not 1 <= n <= 12:
        raise ValueError("n must be in 1..12")
    inputs = tuple(f"i{k}" for k in range(1, n + 1))
    outputs = tuple(f"o{k}" for k in range(1, n + 2))
    ivars = [Atom(name) for name in inputs]
    ovars = [Atom(name) for name in outputs[:n]]

    # Schoolbook product, keeping only bits 0..n-1 (bit n-1 is the target).
    acc = [FALSE] * n
    for k in range(n):  # row k: (o * i_{k+1}) << k
        carry = FALSE
        for j in range(n - k):
            pos = k + j
            bit = f_and(ivars[k], ovars[j])
            s1 = f_xor(acc[pos], bit)
            c1 = f_and(acc[pos], bit)
            s2 = f_xor(s1, carry)
            c2 = f_and(s1, carry)
            acc[pos] = s2
            carry = f_or(c1, c2)
    midbit = acc[n - 1]
    formula = Always(f_iff(Atom(outputs[n]), midbit))
    return Spec(formula, inputs, outputs)
