# cython: language_level=3, boundscheck=False, wraparound=False
"""Reduced ordered BDD kernel, Cython implementation.

Same interface and semantics as ``ltldep._bddcore``; node handles are ints,
0/1 are the terminals.  Hot paths (ite, exists) use typed C arrays for the
node tables and dict-based caches.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Realloc, PyMem_Free

KERNEL_NAME = "compiled"

cdef long _TERMINAL_LEVEL = 1 << 30


cdef class Core:
    cdef long* _lv
    cdef long* _lon
    cdef long* _hin
    cdef long _n
    cdef long _cap
    cdef dict _unique
    cdef dict _ite_cache
    cdef dict _exists_cache
    cdef public long nvars

    def __cinit__(self):
        self._cap = 1024
        self._lv = <long*> PyMem_Malloc(self._cap * sizeof(long))
        self._lon = <long*> PyMem_Malloc(self._cap * sizeof(long))
        self._hin = <long*> PyMem_Malloc(self._cap * sizeof(long))
        if not self._lv or not self._lon or not self._hin:
            raise MemoryError()
        self._lv[0] = _TERMINAL_LEVEL
        self._lv[1] = _TERMINAL_LEVEL
        self._lon[0] = 0
        self._lon[1] = 1
        self._hin[0] = 0
        self._hin[1] = 1
        self._n = 2
        self._unique = {}
        self._ite_cache = {}
        self._exists_cache = {}
        self.nvars = 0

    def __dealloc__(self):
        PyMem_Free(self._lv)
        PyMem_Free(self._lon)
        PyMem_Free(self._hin)

    # -- structure ---------------------------------------------------------

    def new_var(self):
        cdef long v = self.nvars
        self.nvars += 1
        return v

    cpdef long var_node(self, long v):
        return self._mk(v, 0, 1)

    def level(self, long u):
        return self._lv[u]

    def low(self, long u):
        return self._lon[u]

    def high(self, long u):
        return self._hin[u]

    def num_nodes(self):
        return self._n

    cdef long _grow(self) except -1:
        self._cap *= 2
        self._lv = <long*> PyMem_Realloc(self._lv, self._cap * sizeof(long))
        self._lon = <long*> PyMem_Realloc(self._lon, self._cap * sizeof(long))
        self._hin = <long*> PyMem_Realloc(self._hin, self._cap * sizeof(long))
        if not self._lv or not self._lon or not self._hin:
            raise MemoryError()
        return 0

    cdef long _mk(self, long level, long lo, long hi):
        if lo == hi:
            return lo
        key = (level, lo, hi)
        n = self._unique.get(key)
        if n is not None:
            return <long> n
        if self._n >= self._cap:
            self._grow()
        cdef long idx = self._n
        self._lv[idx] = level
        self._lon[idx] = lo
        self._hin[idx] = hi
        self._n += 1
        self._unique[key] = idx
        return idx

    # -- core operations ---------------------------------------------------

    cpdef long ite(self, long f, long g, long h):
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
            return <long> r
        cdef long top = self._lv[f]
        if self._lv[g] < top:
            top = self._lv[g]
        if self._lv[h] < top:
            top = self._lv[h]
        cdef long f0, f1, g0, g1, h0, h1
        if self._lv[f] == top:
            f0 = self._lon[f]
            f1 = self._hin[f]
        else:
            f0 = f
            f1 = f
        if self._lv[g] == top:
            g0 = self._lon[g]
            g1 = self._hin[g]
        else:
            g0 = g
            g1 = g
        if self._lv[h] == top:
            h0 = self._lon[h]
            h1 = self._hin[h]
        else:
            h0 = h
            h1 = h
        cdef long res = self._mk(top, self.ite(f0, g0, h0), self.ite(f1, g1, h1))
        self._ite_cache[key] = res
        return res

    cpdef long neg(self, long a):
        return self.ite(a, 0, 1)

    cpdef long conj(self, long a, long b):
        return self.ite(a, b, 0)

    cpdef long disj(self, long a, long b):
        return self.ite(a, 1, b)

    cpdef long xor(self, long a, long b):
        return self.ite(a, self.ite(b, 0, 1), b)

    cpdef long implies(self, long a, long b):
        return self.ite(a, b, 1)

    cpdef long iff(self, long a, long b):
        return self.ite(a, b, self.ite(b, 0, 1))

    cpdef long restrict(self, long u, long var, bint val):
        if self._lv[u] > var:
            return u
        if self._lv[u] == var:
            return self._hin[u] if val else self._lon[u]
        key = (u, var, 2 if val else 3, 0)
        r = self._ite_cache.get(key)
        if r is not None:
            return <long> r
        cdef long res = self._mk(
            self._lv[u],
            self.restrict(self._lon[u], var, val),
            self.restrict(self._hin[u], var, val),
        )
        self._ite_cache[key] = res
        return res

    cpdef long exists(self, long u, tuple varstuple):
        if u < 2 or not varstuple:
            return u
        cdef long lv = self._lv[u]
        cdef Py_ssize_t i = 0, n = len(varstuple)
        while i < n and <long> varstuple[i] < lv:
            i += 1
        if i:
            varstuple = varstuple[i:]
            if not varstuple:
                return u
        key = (u, varstuple)
        r = self._exists_cache.get(key)
        if r is not None:
            return <long> r
        cdef long res
        if <long> varstuple[0] == lv:
            rest = varstuple[1:]
            res = self.disj(self.exists(self._lon[u], rest), self.exists(self._hin[u], rest))
        else:
            res = self._mk(
                lv,
                self.exists(self._lon[u], varstuple),
                self.exists(self._hin[u], varstuple),
            )
        self._exists_cache[key] = res
        return res

    def rename(self, long u, dict mapping):
        cdef dict memo = {}
        return self._rename(u, mapping, memo)

    cdef long _rename(self, long n, dict mapping, dict memo):
        if n < 2:
            return n
        r = memo.get(n)
        if r is not None:
            return <long> r
        cdef long v = self._lv[n]
        cdef long t = <long> mapping.get(v, v)
        cdef long res = self.ite(
            self.var_node(t),
            self._rename(self._hin[n], mapping, memo),
            self._rename(self._lon[n], mapping, memo),
        )
        memo[n] = res
        return res

    def compose(self, long u, long var, long f):
        cdef dict memo = {}
        return self._compose(u, var, f, memo)

    cdef long _compose(self, long n, long var, long f, dict memo):
        if self._lv[n] > var:
            return n
        r = memo.get(n)
        if r is not None:
            return <long> r
        cdef long res
        if self._lv[n] == var:
            res = self.ite(f, self._hin[n], self._lon[n])
        else:
            res = self.ite(
                self.var_node(self._lv[n]),
                self._compose(self._hin[n], var, f, memo),
                self._compose(self._lon[n], var, f, memo),
            )
        memo[n] = res
        return res

    # -- queries -----------------------------------------------------------

    def support(self, long u):
        cdef set seen = set()
        cdef set out = set()
        cdef list stack = [u]
        cdef long n
        while stack:
            n = <long> stack.pop()
            if n < 2 or n in seen:
                continue
            seen.add(n)
            out.add(self._lv[n])
            stack.append(self._lon[n])
            stack.append(self._hin[n])
        return out

    def count_nodes(self, long u):
        cdef set seen = set()
        cdef list stack = [u]
        cdef long n
        while stack:
            n = <long> stack.pop()
            if n in seen:
                continue
            seen.add(n)
            if n >= 2:
                stack.append(self._lon[n])
                stack.append(self._hin[n])
        return len(seen)

    def evaluate(self, long u, dict values):
        while u >= 2:
            u = self._hin[u] if values[self._lv[u]] else self._lon[u]
        return u == 1
