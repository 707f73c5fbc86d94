"""Reduced ordered BDD kernel, pure-Python implementation.

Node handles are plain ints into per-manager node tables: 0 is the False
terminal, 1 is the True terminal.  Variables are identified by their level
(position in the fixed global order).  All operations keep the diagram
reduced, so handle equality is function equality.

A Cython-compiled twin of this module (``ltldep._bddcore_c``) implements
the same interface; ``ltldep.bdd`` picks whichever is available.
"""

KERNEL_NAME = "pure"

_TERMINAL_LEVEL = 1 << 30


class Core:
    """Unique table, operation caches and the raw node-level operations."""

    def __init__(self):
        # Slots 0 and 1 are the terminals; their child fields are unused.
        self._level = [_TERMINAL_LEVEL, _TERMINAL_LEVEL]
        self._lo = [0, 1]
        self._hi = [0, 1]
        self._unique = {}
        self._ite_cache = {}
        self._exists_cache = {}
        self.nvars = 0

    # -- structure ---------------------------------------------------------

    def new_var(self):
        v = self.nvars
        self.nvars += 1
        return v

    def var_node(self, v):
        return self._mk(v, 0, 1)

    def level(self, u):
        return self._level[u]

    def low(self, u):
        return self._lo[u]

    def high(self, u):
        return self._hi[u]

    def num_nodes(self):
        return len(self._level)

    def _mk(self, level, lo, hi):
        if lo == hi:
            return lo
        key = (level, lo, hi)
        n = self._unique.get(key)
        if n is None:
            n = len(self._level)
            self._level.append(level)
            self._lo.append(lo)
            self._hi.append(hi)
            self._unique[key] = n
        return n

    # -- core operations ---------------------------------------------------

    def ite(self, f, g, h):
        if f == 1:
            return g
        if f == 0:
            return h
        if g == h:
            return g
        if g == 1 and h == 0:
            return f
        key = (f, g, h)
        r = self._ite_cache.get(key)
        if r is not None:
            return r
        lv = self._level
        top = lv[f]
        if lv[g] < top:
            top = lv[g]
        if lv[h] < top:
            top = lv[h]
        f0, f1 = (f, f) if lv[f] != top else (self._lo[f], self._hi[f])
        g0, g1 = (g, g) if lv[g] != top else (self._lo[g], self._hi[g])
        h0, h1 = (h, h) if lv[h] != top else (self._lo[h], self._hi[h])
        r = self._mk(top, self.ite(f0, g0, h0), self.ite(f1, g1, h1))
        self._ite_cache[key] = r
        return r

    def neg(self, a):
        return self.ite(a, 0, 1)

    def conj(self, a, b):
        return self.ite(a, b, 0)

    def disj(self, a, b):
        return self.ite(a, 1, b)

    def xor(self, a, b):
        return self.ite(a, self.ite(b, 0, 1), b)

    def implies(self, a, b):
        return self.ite(a, b, 1)

    def iff(self, a, b):
        return self.ite(a, b, self.ite(b, 0, 1))

    def restrict(self, u, var, val):
        if self._level[u] > var:
            return u
        if self._level[u] == var:
            return self._hi[u] if val else self._lo[u]
        # Memoize through ite by rebuilding with the branch variable.
        key = (u, var, 2 if val else 3, 0)
        r = self._ite_cache.get(key)
        if r is None:
            r = self._mk(
                self._level[u],
                self.restrict(self._lo[u], var, val),
                self.restrict(self._hi[u], var, val),
            )
            self._ite_cache[key] = r
        return r

    def exists(self, u, varstuple):
        """Existentially quantify the (sorted) tuple of variables in u."""
        if u < 2 or not varstuple:
            return u
        lv = self._level[u]
        i = 0
        n = len(varstuple)
        while i < n and varstuple[i] < lv:
            i += 1
        if i:
            varstuple = varstuple[i:]
            if not varstuple:
                return u
        key = (u, varstuple)
        r = self._exists_cache.get(key)
        if r is not None:
            return r
        if varstuple[0] == lv:
            rest = varstuple[1:]
            r = self.disj(self.exists(self._lo[u], rest), self.exists(self._hi[u], rest))
        else:
            r = self._mk(
                lv,
                self.exists(self._lo[u], varstuple),
                self.exists(self._hi[u], varstuple),
            )
        self._exists_cache[key] = r
        return r

    def rename(self, u, mapping):
        """Substitute variables per an injective dict {var: var}.

        Implemented by rebuilding through ite, so arbitrary injective maps
        are handled, not only order-preserving ones.
        """
        memo = {}

        def walk(n):
            if n < 2:
                return n
            r = memo.get(n)
            if r is not None:
                return r
            v = self._level[n]
            t = mapping.get(v, v)
            r = self.ite(self.var_node(t), walk(self._hi[n]), walk(self._lo[n]))
            memo[n] = r
            return r

        return walk(u)

    def compose(self, u, var, f):
        """Substitute function f for variable var in u."""
        memo = {}

        def walk(n):
            if self._level[n] > var:
                return n
            r = memo.get(n)
            if r is not None:
                return r
            if self._level[n] == var:
                r = self.ite(f, self._hi[n], self._lo[n])
            else:
                r = self.ite(
                    self.var_node(self._level[n]), walk(self._hi[n]), walk(self._lo[n])
                )
            memo[n] = r
            return r

        return walk(u)

    # -- queries -----------------------------------------------------------

    def support(self, u):
        seen = set()
        out = set()
        stack = [u]
        while stack:
            n = stack.pop()
            if n < 2 or n in seen:
                continue
            seen.add(n)
            out.add(self._level[n])
            stack.append(self._lo[n])
            stack.append(self._hi[n])
        return out

    def count_nodes(self, u):
        """Distinct reachable nodes, terminals included."""
        seen = set()
        stack = [u]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            if n >= 2:
                stack.append(self._lo[n])
                stack.append(self._hi[n])
        return len(seen)

    def evaluate(self, u, values):
        """values: dict {var: bool}; unmentioned vars may not be in support."""
        while u >= 2:
            u = self._hi[u] if values[self._level[u]] else self._lo[u]
        return u == 1
