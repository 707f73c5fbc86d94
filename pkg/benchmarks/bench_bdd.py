"""Compare the compiled BDD kernel against the pure-Python fallback.

Two workloads drive each core through the identical operation stream:

* ``product``: builds the multiplier-family edge constraints, the pattern
  that dominates dependency analysis on the stress corpus.
* ``random-ops``: a mixed stream of conj/disj/xor/exists/compose calls on
  random cube unions, approximating the collision-formula workload.

Usage: python3 benchmarks/bench_bdd.py [--repeat N] [--size N]
"""

import argparse
import random
import time

from ltldep import _bddcore as pure_core

try:
    from ltldep import _bddcore_c as compiled_core
except ImportError:
    compiled_core = None


def bench_product(core_mod, n):
    """Schoolbook product of two n-bit vectors, bit by bit."""
    core = core_mod.Core()
    a = [core.var_node(core.new_var()) for _ in range(n)]
    b = [core.var_node(core.new_var()) for _ in range(n)]
    acc = [0] * n
    for k in range(n):
        carry = 0
        for j in range(n - k):
            pos = k + j
            bit = core.conj(a[k], b[j])
            s1 = core.xor(acc[pos], bit)
            c1 = core.conj(acc[pos], bit)
            s2 = core.xor(s1, carry)
            c2 = core.conj(s1, carry)
            acc[pos] = s2
            carry = core.disj(c1, c2)
    return core.count_nodes(acc[n - 1])


def bench_random_ops(core_mod, n_vars, n_ops, seed):
    rng = random.Random(seed)
    core = core_mod.Core()
    nodes = [core.var_node(core.new_var()) for _ in range(n_vars)]
    checksum = 0
    for _ in range(n_ops):
        op = rng.choice(["conj", "disj", "xor", "exists", "compose", "neg"])
        x = rng.choice(nodes)
        y = rng.choice(nodes)
        if op == "neg":
            r = core.neg(x)
        elif op == "exists":
            vs = tuple(sorted(rng.sample(range(n_vars), 2)))
            r = core.exists(x, vs)
        elif op == "compose":
            r = core.compose(x, rng.randrange(n_vars), y)
        else:
            r = getattr(core, op)(x, y)
        nodes.append(r)
        if len(nodes) > 200:
            nodes = nodes[-100:]
        checksum ^= r
    return checksum


def timed(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=8, help="product bit width")
    ap.add_argument("--ops", type=int, default=1500, help="random op count")
    args = ap.parse_args()

    kernels = [("pure", pure_core)]
    if compiled_core is not None:
        kernels.append(("compiled", compiled_core))
    else:
        print("compiled kernel unavailable, benchmarking the fallback only")

    rows = []
    for wl_name, fn in [
        ("product", lambda m: bench_product(m, args.size)),
        ("random-ops", lambda m: bench_random_ops(m, 10, args.ops, 97)),
    ]:
        results = {}
        for k_name, mod in kernels:
            secs, check = timed(lambda: fn(mod), args.repeat)
            results[k_name] = (secs, check)
        checks = {c for _, c in results.values()}
        assert len(checks) == 1, "kernels disagree on %s: %r" % (wl_name, results)
        rows.append((wl_name, results))

    print("%-12s %12s %12s %9s" % ("workload", "pure (ms)", "compiled (ms)", "speedup"))
    for wl_name, results in rows:
        p = results["pure"][0] * 1000
        if "compiled" in results:
            c = results["compiled"][0] * 1000
            print("%-12s %12.1f %12.1f %8.1fx" % (wl_name, p, c, p / c))
        else:
            print("%-12s %12.1f %12s %9s" % (wl_name, p, "-", "-"))


if __name__ == "__main__":
    main()
