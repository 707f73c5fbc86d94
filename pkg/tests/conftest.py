import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ltldep.automata import Nba, make_manager

CORPUS = os.path.join(os.path.dirname(__file__), os.pardir, "corpus")


def letter_bdd(mgr, assigns):
    """Disjunction of full assignments given as dicts."""
    acc = mgr.false
    for a in assigns:
        cube = mgr.true
        for name, val in a.items():
            v = mgr.var(name)
            cube &= v if val else mgr.negate(v)
        acc |= cube
    return acc


def build_two_state_example():
    """Two-state automaton over (i, o1 o2) where o1 is forced by (i, o2).

    q0 self-loops on (0,11),(1,10); q0->q1 on (1,11),(0,00);
    q1->q0 on (0,00),(0,11); q1 self-loops on (1,11),(0,00); q1 accepts.
    """
    mgr = make_manager(["i"], ["o1", "o2"])

    def L(*t):
        return [{"i": a, "o1": b, "o2": c} for a, b, c in t]

    edges = {
        (0, 0): letter_bdd(mgr, L((0, 1, 1), (1, 1, 0))),
        (0, 1): letter_bdd(mgr, L((1, 1, 1), (0, 0, 0))),
        (1, 0): letter_bdd(mgr, L((0, 0, 0), (0, 1, 1))),
        (1, 1): letter_bdd(mgr, L((1, 1, 1), (0, 0, 0))),
    }
    return Nba(manager=mgr, inputs=("i",), outputs=("o1", "o2"), n_states=2,
               initial=0, accepting=frozenset({1}), edges=edges)


@pytest.fixture
def two_state_example():
    return build_two_state_example()


def corpus_path(name):
    return os.path.join(CORPUS, name)
