import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracle import naive_grundy_of
from wak.core import GamePosition, Outcome
from wak.errors import PreconditionError
from wak.solver import outcome
from wak.tree2 import (SpiderForm, loop_grundy, loop_plus_twoloops_outcome, loop_position, p4_loop_outcome,
                       p4_loop_position, path_outcome, spider_position, spider_to_path, tree2_outcome,
                       tree_root, twoloops_grundy, twoloops_position)


def nat(g):
    return Outcome.P if g == 0 else Outcome.N


def test_loop_and_twoloops_closed_forms():
    for a in range(8):
        assert loop_grundy(a) == naive_grundy_of(loop_position(a))
        for b in range(8):
            assert twoloops_grundy(a, b) == naive_grundy_of(twoloops_position(a, b))
    assert [twoloops_grundy(1, b) for b in range(5)] == [1, 2, 3, 2, 3]


def test_loop_plus_twoloops():
    for a, b, c in itertools.product(range(6), repeat=3):
        g = loop_grundy(a) ^ twoloops_grundy(b, c)
        assert loop_plus_twoloops_outcome(a, b, c) == nat(g)


def test_p4_examples():
    assert p4_loop_outcome(2, 3, 2, 1) == Outcome.P
    assert p4_loop_outcome(2, 3, 1, 1) == Outcome.N
    assert p4_loop_outcome(0, 1, 1, 1) == Outcome.N
    with pytest.raises(PreconditionError):
        p4_loop_outcome(1, 1, 5, 1)


def test_p4_exhaustive():
    for a, b, c, d in itertools.product(range(6), repeat=4):
        if c < b + d:
            assert p4_loop_outcome(a, b, c, d) == nat(naive_grundy_of(p4_loop_position(a, b, c, d)))


def test_path_outcome_exhaustive():
    for a, c, x, y in itertools.product(range(6), repeat=4):
        expected = nat(naive_grundy_of(p4_loop_position(a, c, x, y)))
        assert path_outcome(a, c, x, y) == expected, (a, c, x, y)


def test_path_outcome_examples():
    assert path_outcome(2, 3, 5, 2) == Outcome.N
    assert path_outcome(1, 10, 2, 1) == Outcome.N
    assert path_outcome(2, 3, 2, 2) == Outcome.P
    trace = []
    path_outcome(2, 3, 5, 2, trace)
    assert trace and "twoloops" in trace[0]


def test_spider():
    s = SpiderForm(2, 3, ((2, 1), (3, 1)))
    assert spider_to_path(s) == (2, 3, 5, 2)
    assert path_outcome(*spider_to_path(s)) == Outcome.N == outcome(spider_position(s))
    assert spider_to_path(SpiderForm(1, 2)) == (1, 2, 0, 0)
    with pytest.raises(PreconditionError):
        spider_to_path(SpiderForm(1, 1, ((2, 2),)))
    with pytest.raises(ValueError):
        SpiderForm(-1, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3),
       st.lists(st.tuples(st.integers(1, 3), st.integers(0, 2)).filter(lambda b: b[0] > b[1]), max_size=2))
def test_spider_collapse_preserves_outcome(a, c, branches):
    s = SpiderForm(a, c, tuple(branches))
    assert path_outcome(*spider_to_path(s)) == nat(naive_grundy_of(spider_position(s)))


def random_tree2(rng, max_children=3, max_grand=2, max_weight=3, min_weight=0):
    weights = {"r": rng.randint(min_weight, max_weight)}
    edges = []
    for i in range(rng.randint(1, max_children)):
        x = f"x{i}"
        weights[x] = rng.randint(min_weight, max_weight)
        edges.append(("r", x))
        for j in range(rng.randint(0, max_grand)):
            y = f"y{i}_{j}"
            weights[y] = rng.randint(min_weight, max_weight)
            edges.append((x, y))
    return GamePosition(weights, edges)


def test_tree_root():
    p = GamePosition({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c")])
    assert tree_root(p) == "b"
    assert tree_root(GamePosition({"a": 1, "b": 1}, [("a", "b")])) == "a"
    with pytest.raises(PreconditionError):
        tree_root(GamePosition({"a": 1}, loops=["a"]))
    with pytest.raises(PreconditionError):
        tree_root(GamePosition({"a": 1, "b": 1}))
    with pytest.raises(PreconditionError):  # path on 6 vertices has depth 3 from every root
        tree_root(GamePosition({f"v{i}": 1 for i in range(6)}, [(f"v{i}", f"v{i + 1}") for i in range(5)]))


def test_tree2_examples():
    star = GamePosition({"r": 5, "a": 1, "b": 2, "c": 3}, [("r", "a"), ("r", "b"), ("r", "c")])
    assert tree2_outcome(star) == Outcome.N
    p = GamePosition({"b": 2, "c": 2, "d": 1}, [("b", "c"), ("c", "d")])
    assert tree2_outcome(p) == Outcome.P
    assert tree2_outcome(GamePosition({"a": 0})) == Outcome.P
    trace = []
    tree2_outcome(star, trace)
    assert any("root" in line for line in trace)


def test_tree2_random_against_oracle():
    rng = random.Random(11)
    for _ in range(400):
        t = random_tree2(rng)
        assert tree2_outcome(t) == nat(naive_grundy_of(t)), t


def test_tree2_larger_weights_against_solver():
    rng = random.Random(5)
    for _ in range(60):
        t = random_tree2(rng, max_children=3, max_grand=2, max_weight=9, min_weight=1)
        assert tree2_outcome(t) == outcome(t)


def test_tree2_huge_weights_fast():
    big = 2 ** 31
    t = GamePosition({"r": big + 1, "x": big, "y": 3, "z": big - 7},
                     [("r", "x"), ("x", "y"), ("r", "z")])
    assert tree2_outcome(t) in (Outcome.P, Outcome.N)
