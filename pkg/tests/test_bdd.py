import itertools
import random

import pytest

from ltldep.bdd import BddManager, KERNEL
from ltldep.errors import DuplicateVariableError, ManagerMismatchError, UnknownVariableError


def fresh(names="abcdef"):
    mgr = BddManager()
    vs = {n: mgr.new_var(n) for n in names}
    return mgr, vs


def test_terminals_and_vars():
    mgr, _ = fresh("ab")
    assert mgr.true.node == 1 and mgr.false.node == 0
    assert mgr.is_sat(mgr.var("a"))
    assert not mgr.is_sat(mgr.false)
    assert mgr.var("a") == mgr.var(0)


def test_duplicate_and_unknown_vars():
    mgr, _ = fresh("a")
    with pytest.raises(DuplicateVariableError):
        mgr.new_var("a")
    with pytest.raises(UnknownVariableError):
        mgr.var("zz")
    with pytest.raises(UnknownVariableError):
        mgr.var(99)


def test_manager_mismatch():
    m1, _ = fresh("a")
    m2, _ = fresh("a")
    with pytest.raises(ManagerMismatchError):
        m1.apply("and", m1.var("a"), m2.var("a"))


def eval_all(mgr, b, names):
    out = {}
    for bits in itertools.product([False, True], repeat=len(names)):
        out[bits] = mgr.evaluate(b, dict(zip(names, bits)))
    return out


def test_apply_against_python_semantics():
    mgr, _ = fresh("abc")
    a, b = mgr.var("a"), mgr.var("b")
    table = {
        "and": lambda x, y: x and y,
        "or": lambda x, y: x or y,
        "xor": lambda x, y: x != y,
        "implies": lambda x, y: (not x) or y,
        "iff": lambda x, y: x == y,
    }
    for op, fn in table.items():
        got = mgr.apply(op, a, b)
        for x in (False, True):
            for y in (False, True):
                assert mgr.evaluate(got, {"a": x, "b": y, "c": False}) == fn(x, y)


def test_operators_and_negation():
    mgr, _ = fresh("ab")
    a, b = mgr.var("a"), mgr.var("b")
    assert (a & b) == mgr.apply("and", a, b)
    assert (a | b) == mgr.apply("or", a, b)
    assert (a ^ b) == mgr.apply("xor", a, b)
    assert ~a == mgr.negate(a)
    assert ~~a == a
    assert (a & ~a) == mgr.false
    assert (a | ~a) == mgr.true


def test_ite_and_restrict():
    mgr, _ = fresh("abc")
    a, b, c = mgr.var("a"), mgr.var("b"), mgr.var("c")
    f = mgr.ite(a, b, c)
    assert mgr.restrict(f, "a", True) == b
    assert mgr.restrict(f, "a", False) == c


def test_exists_by_names_and_ids():
    mgr, _ = fresh("ab")
    f = mgr.var("a") & mgr.var("b")
    assert mgr.exists(f, ["a"]) == mgr.var("b")
    assert mgr.exists(f, [0, 1]) == mgr.true


def test_rename_swap():
    mgr, _ = fresh("ab")
    f = mgr.var("a") & ~mgr.var("b")
    g = mgr.rename(f, {"a": "b", "b": "a"})
    assert g == (mgr.var("b") & ~mgr.var("a"))
    mgr2, _ = fresh("abc")
    with pytest.raises(ValueError):
        mgr2.rename(mgr2.var("a"), {"a": "c", "b": "c"})


def test_substitute():
    mgr, _ = fresh("abc")
    f = mgr.var("a") | mgr.var("c")
    g = mgr.substitute(f, "a", mgr.var("b") & mgr.var("c"))
    assert g == ((mgr.var("b") & mgr.var("c")) | mgr.var("c"))


def test_node_count_conventions():
    mgr, _ = fresh("ab")
    assert mgr.node_count(mgr.true) == 1
    assert mgr.node_count(mgr.false) == 1
    assert mgr.internal_node_count(mgr.true) == 0
    a = mgr.var("a")
    assert mgr.node_count(a) == 3
    assert mgr.internal_node_count(a) == 1


def test_support_and_cubes():
    mgr, _ = fresh("abc")
    f = (mgr.var("a") & mgr.var("c")) | (~mgr.var("a") & mgr.var("b"))
    assert set(mgr.support(f)) == {0, 1, 2}
    cubes = list(mgr.cubes(f))
    for cube in cubes:
        assign = {i: cube.get(i, False) for i in range(3)}
        assert mgr.evaluate(f, assign)


def test_random_formula_equivalence():
    """BDD ops agree with direct truth-table evaluation."""
    rng = random.Random(0)
    mgr, _ = fresh("abcde")
    names = list("abcde")

    def rand_expr(depth):
        if depth == 0 or rng.random() < 0.3:
            return ("v", rng.choice(names))
        op = rng.choice(["and", "or", "xor", "not"])
        if op == "not":
            return ("not", rand_expr(depth - 1))
        return (op, rand_expr(depth - 1), rand_expr(depth - 1))

    def to_bdd(e):
        if e[0] == "v":
            return mgr.var(e[1])
        if e[0] == "not":
            return ~to_bdd(e[1])
        return mgr.apply(e[0], to_bdd(e[1]), to_bdd(e[2]))

    def to_py(e, env):
        if e[0] == "v":
            return env[e[1]]
        if e[0] == "not":
            return not to_py(e[1], env)
        x, y = to_py(e[1], env), to_py(e[2], env)
        return {"and": x and y, "or": x or y, "xor": x != y}[e[0]]

    for _ in range(60):
        e = rand_expr(4)
        b = to_bdd(e)
        for bits in itertools.product([False, True], repeat=5):
            env = dict(zip(names, bits))
            assert mgr.evaluate(b, env) == to_py(e, env)


def test_skolem_contract_random():
    """∀(∃X b -> b[X↦F]) must be a tautology; F must be X-free."""
    rng = random.Random(7)
    for trial in range(40):
        mgr = BddManager()
        n = rng.randint(2, 8)
        names = ["v%d" % k for k in range(n)]
        for nm in names:
            mgr.new_var(nm)
        b = mgr.false
        for _ in range(rng.randint(1, 6)):
            cube = mgr.true
            for nm in rng.sample(names, rng.randint(1, n)):
                v = mgr.var(nm)
                cube &= v if rng.random() < 0.5 else ~v
            b |= cube
        k = rng.randint(1, n - 1)
        xs = [mgr.var_id(nm) for nm in rng.sample(names, k)]
        fs = mgr.skolem(b, xs)
        sub = b
        for x, f in zip(xs, fs):
            assert not (set(mgr.support(f)) & set(xs))
            sub = mgr.substitute(sub, x, f)
        ex = mgr.exists(b, xs)
        assert mgr.apply("implies", ex, sub) == mgr.true
        # and substitution cannot overshoot: b[X↦F] -> ∃X b
        assert mgr.apply("implies", sub, ex) == mgr.true


def test_kernel_name_exposed():
    assert KERNEL in ("pure", "compiled")
