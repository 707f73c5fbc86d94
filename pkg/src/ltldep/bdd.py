"""Named-variable BDD manager built on the kernel.

The hot node-level operations live in a kernel module with two
interchangeable implementations: a Cython extension (``_bddcore_c``) and a
pure-Python fallback (``_bddcore``).  Set ``LTLDEP_PURE_BDD=1`` to force
the fallback; ``KERNEL`` reports which one is active.
"""

import os

from ltldep.errors import (
    DuplicateVariableError,
    ManagerMismatchError,
    UnknownVariableError,
)

if os.environ.get("LTLDEP_PURE_BDD"):
    from ltldep import _bddcore as _kernel
else:
    try:
        from ltldep import _bddcore_c as _kernel
    except ImportError:
        from ltldep import _bddcore as _kernel

KERNEL = _kernel.KERNEL_NAME

_OPS = ("and", "or", "xor", "implies", "iff")


class Bdd:
    """Canonical handle into a manager's unique table.

    Equality is handle equality, which by reduction is function equality
    for Bdds of the same manager.
    """

    __slots__ = ("manager", "node")

    def __init__(self, manager, node):
        self.manager = manager
        self.node = node

    def __eq__(self, other):
        return (
            isinstance(other, Bdd)
            and self.manager is other.manager
            and self.node == other.node
        )

    def __hash__(self):
        return hash((id(self.manager), self.node))

    def __and__(self, other):
        return self.manager.apply("and", self, other)

    def __or__(self, other):
        return self.manager.apply("or", self, other)

    def __xor__(self, other):
        return self.manager.apply("xor", self, other)

    def __invert__(self):
        return self.manager.negate(self)

    def __repr__(self):
        m = self.manager
        if self.node == 0:
            return "Bdd(False)"
        if self.node == 1:
            return "Bdd(True)"
        names = sorted(m.var_name(v) for v in m.support(self))
        return f"Bdd(node={self.node}, support={names})"


class BddManager:
    """Owns the variable order, unique table and caches of one session."""

    def __init__(self):
        self._core = _kernel.Core()
        self._names = []
        self._index = {}

    # -- variables ---------------------------------------------------------

    def new_var(self, name):
        """Append a fresh named variable at the end of the order."""
        if name in self._index:
            raise DuplicateVariableError(f"variable {name!r} already exists")
        v = self._core.new_var()
        self._names.append(name)
        self._index[name] = v
        return v

    def var_id(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def var_name(self, v):
        return self._names[v]

    @property
    def var_names(self):
        return list(self._names)

    def var(self, v):
        """Bdd for a variable given by id or name."""
        if isinstance(v, str):
            v = self.var_id(v)
        self._check_var(v)
        return Bdd(self, self._core.var_node(v))

    @property
    def true(self):
        return Bdd(self, 1)

    @property
    def false(self):
        return Bdd(self, 0)

    def _check(self, *bdds):
        for b in bdds:
            if b.manager is not self:
                raise ManagerMismatchError("Bdd belongs to a different manager")

    def _check_var(self, v):
        """Resolve a variable given by id or name; returns the id."""
        if isinstance(v, str):
            return self.var_id(v)
        if not 0 <= v < self._core.nvars:
            raise UnknownVariableError(f"no variable with id {v}")
        return v

    # -- operations --------------------------------------------------------

    def apply(self, op, a, b):
        self._check(a, b)
        if op not in _OPS:
            raise ValueError(f"unknown operator {op!r}")
        f = getattr(self._core, {"and": "conj", "or": "disj"}.get(op, op))
        return Bdd(self, f(a.node, b.node))

    def negate(self, a):
        self._check(a)
        return Bdd(self, self._core.neg(a.node))

    def ite(self, f, g, h):
        self._check(f, g, h)
        return Bdd(self, self._core.ite(f.node, g.node, h.node))

    def restrict(self, a, v, val):
        self._check(a)
        v = self._check_var(v)
        return Bdd(self, self._core.restrict(a.node, v, bool(val)))

    def exists(self, a, variables):
        self._check(a)
        vs = tuple(sorted({self._check_var(v) for v in variables}))
        return Bdd(self, self._core.exists(a.node, vs))

    def rename(self, a, mapping):
        self._check(a)
        idmap = {self._check_var(k): self._check_var(v) for k, v in mapping.items()}
        if len(set(idmap.values())) != len(idmap):
            raise ValueError("rename map must be injective")
        return Bdd(self, self._core.rename(a.node, idmap))

    def substitute(self, a, v, f):
        self._check(a, f)
        v = self._check_var(v)
        return Bdd(self, self._core.compose(a.node, v, f.node))

    # -- queries -----------------------------------------------------------

    def is_sat(self, a):
        self._check(a)
        return a.node != 0

    def node_count(self, a):
        """Distinct nodes reachable from a, terminals included."""
        self._check(a)
        return self._core.count_nodes(a.node)

    def internal_node_count(self, a):
        """node_count minus the reachable terminals (size for stats)."""
        self._check(a)
        n = self._core.count_nodes(a.node)
        terms = 1 if a.node < 2 else 2
        return n - terms

    def support(self, a):
        self._check(a)
        return self._core.support(a.node)

    def evaluate(self, a, assignment):
        """assignment maps var ids (or names) to bools."""
        self._check(a)
        values = {}
        for k, v in assignment.items():
            values[self.var_id(k) if isinstance(k, str) else k] = bool(v)
        return self._core.evaluate(a.node, values)

    def cubes(self, a):
        """Yield the root-to-True paths of a as dicts {var_id: bool}."""
        self._check(a)
        core = self._core

        def walk(n, partial):
            if n == 0:
                return
            if n == 1:
                yield dict(partial)
                return
            v = core.level(n)
            partial[v] = False
            yield from walk(core.low(n), partial)
            partial[v] = True
            yield from walk(core.high(n), partial)
            del partial[v]

        yield from walk(a.node, {})

    # -- Boolean functional synthesis --------------------------------------

    def skolem(self, b, xs):
        """Functions F (one per x in xs, xs-free) with ∃xs b → b[xs↦F] valid.

        Cofactor-based extraction: with xs processed innermost-last, each
        F_i is the positive cofactor of ∃xs[i+1:] b at x_i; dependence of
        F_i on earlier xs is removed by substituting the already-final
        functions back in.
        """
        self._check(b)
        xs = [self._check_var(x) for x in xs]
        n = len(xs)
        layered = [None] * n  # layered[i] = ∃ xs[i+1:] b
        cur = b.node
        for i in range(n - 1, -1, -1):
            layered[i] = cur
            cur = self._core.exists(cur, (xs[i],))
        fs = []
        for i in range(n):
            f = self._core.restrict(layered[i], xs[i], True)
            for j in range(i):
                f = self._core.compose(f, xs[j], fs[j].node)
            fs.append(Bdd(self, f))
        return fs

    # -- debugging ---------------------------------------------------------

    def to_dot(self, a, name="bdd"):
        self._check(a)
        core = self._core
        lines = [f"digraph {name} {{"]
        seen = set()
        stack = [a.node]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            if u < 2:
                lines.append(f'  n{u} [shape=box, label="{u}"];')
                continue
            lines.append(f'  n{u} [label="{self.var_name(core.level(u))}"];')
            lines.append(f"  n{u} -> n{core.low(u)} [style=dashed];")
            lines.append(f"  n{u} -> n{core.high(u)};")
            stack.append(core.low(u))
            stack.append(core.high(u))
        lines.append("}")
        return "\n".join(lines)
