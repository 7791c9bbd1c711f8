import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import positions
from oracle import naive_grundy, naive_grundy_of
from wak.core import GamePosition, relabel
from wak.corpus import random_position
from wak.errors import CertificateTooLarge
from wak.reduce import (ReductionKind, canonicalize, certificate, find_false_twins, find_heavy,
                        find_useless, is_canonical, reduce_once)
from wak.tree2 import p4_loop_position


def star(center, leaves, looped_leaves=False):
    weights = {"v": center, **{f"u{i}": x for i, x in enumerate(leaves, 1)}}
    edges = [("v", f"u{i}") for i in range(1, len(leaves) + 1)]
    loops = [f"u{i}" for i in range(1, len(leaves) + 1)] if looped_leaves else []
    return GamePosition(weights, edges, loops)


def test_find_useless():
    assert find_useless(star(3, [1, 2, 1, 1, 2], looped_leaves=True)) == ["v"]
    assert find_useless(GamePosition({"a": 2})) == ["a"]
    assert find_useless(GamePosition({"a": 1, "b": 1}, [("a", "b")])) == []


def test_find_heavy():
    assert find_heavy(GamePosition({"a": 6, "b": 5}, [("a", "b")])) == ["a"]
    # a depth-2 leaf as heavy as its parent
    p = GamePosition({"r": 9, "x": 4, "y": 4}, [("r", "x"), ("x", "y")])
    assert "y" in find_heavy(p)
    assert find_heavy(GamePosition({"a": 100}, loops=["a"])) == []


def test_find_false_twins():
    assert find_false_twins(star(1, [1, 1])) == [("u1", "u2")]
    # adjacent vertices with the same other neighbours are not false twins
    tri = GamePosition({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("a", "c"), ("b", "c")])
    assert find_false_twins(tri) == []
    p = GamePosition({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c")], ["a"])
    assert find_false_twins(p) == []


def test_reduce_once_heavy():
    p = star(10, [1, 2, 1, 3, 2])
    q, step = reduce_once(p)
    assert step.kind == ReductionKind.HEAVY_DELETE and step.subject == ("v",)
    assert q.vertices == ("u1", "u2", "u3", "u4", "u5")
    assert q.loops == set(q.vertices) and not q.edges
    assert set(step.loops_added) == set(q.vertices)


def test_reduce_once_twins():
    e = [("v1", "x"), ("v1", "y"), ("v2", "x"), ("v2", "y")]
    p = GamePosition({"v1": 2, "v2": 3, "x": 3, "y": 4}, e)
    q, step = reduce_once(p)
    assert step.kind == ReductionKind.TWIN_MERGE and step.subject == ("v1", "v2")
    assert q.weights == {"v1": 5, "x": 3, "y": 4}
    assert naive_grundy_of(p) == naive_grundy_of(q)


def test_reduce_once_priority_and_irreducible():
    # v is both useless and heavy; useless wins
    p = star(100, [1, 1], looped_leaves=True)
    assert reduce_once(p)[1].kind == ReductionKind.USELESS_DELETE
    assert reduce_once(p4_loop_position(2, 3, 2, 1)) is None


def test_canonicalize_star():
    p = star(5, [1, 2, 3])
    q, steps = canonicalize(p)
    assert q == GamePosition({"v": 5}, loops=["v"])
    assert [s.kind for s in steps] == [ReductionKind.TWIN_MERGE, ReductionKind.TWIN_MERGE,
                                       ReductionKind.HEAVY_DELETE]
    assert naive_grundy_of(p) == naive_grundy_of(q) == 1


def test_canonicalize_fixed_point_and_empty():
    p = p4_loop_position(2, 3, 2, 1)
    assert canonicalize(p) == (p, [])
    assert is_canonical(p)
    empty = GamePosition({})
    assert canonicalize(empty)[0] == empty


def test_canonicalize_drops_dead_without_loops():
    # deleting the dead vertex as "heavy" would put a playable loop on b
    p = GamePosition({"a": 0, "b": 2, "c": 2}, [("a", "b"), ("b", "c")])
    q, _ = canonicalize(p)
    assert naive_grundy_of(q) == naive_grundy_of(p) == 0


@settings(max_examples=300, deadline=None)
@given(positions(max_vertices=6, max_weight=3))
def test_canonicalize_preserves_grundy(p):
    q, steps = canonicalize(p)
    assert naive_grundy_of(q) == naive_grundy_of(p)
    assert len(steps) <= len(p)
    assert not find_useless(q) and not find_heavy(q) and not find_false_twins(q)


@given(positions(max_vertices=6))
def test_reduce_once_shrinks(p):
    r = reduce_once(p)
    if r is not None:
        assert len(r[0]) == len(p) - 1


# -- certificates ---------------------------------------------------------

def brute_isomorphic(p, q):
    if len(p) != len(q) or sorted(p.w) != sorted(q.w) or len(p.edges) != len(q.edges):
        return False
    for perm in itertools.permutations(q.vertices):
        f = dict(zip(p.vertices, perm))
        if all(p.weight(v) == q.weight(f[v]) and p.has_loop(v) == q.has_loop(f[v]) for v in p.vertices) \
                and {tuple(sorted((f[a], f[b]))) for a, b in p.edges} == q.edges:
            return True
    return False


def test_certificate_relabel_invariance():
    rng = random.Random(7)
    for _ in range(100):
        p = random_position(rng, 8, 3)
        names = list(p.vertices)
        shuffled = names[:]
        rng.shuffle(shuffled)
        q = relabel(p, {a: "z" + b for a, b in zip(names, shuffled)})
        assert certificate(p) == certificate(q)


def test_certificate_distinguishes_weights():
    p = GamePosition({"a": 1, "b": 2}, [("a", "b")])
    assert certificate(p) != certificate(p.with_weights({"a": 3}))


def test_certificate_paths():
    p = GamePosition({"a": 1, "b": 2, "c": 1}, [("a", "b"), ("b", "c")])
    q = GamePosition({"a": 2, "b": 1, "c": 1}, [("a", "b"), ("b", "c")])
    assert not brute_isomorphic(p, q)
    assert certificate(p) != certificate(q)


@settings(max_examples=300, deadline=None)
@given(positions(max_vertices=5, max_weight=2), positions(max_vertices=5, max_weight=2))
def test_certificate_iff_isomorphic(p, q):
    assert (certificate(p) == certificate(q)) == brute_isomorphic(p, q)


def test_certificate_symmetric_graph_is_cheap():
    # a star with many identical leaves is handled by the interchangeable-vertex pruning
    p = star(3, [1] * 20)
    assert certificate(p) == certificate(relabel(p, lambda v: v + "_x"))


def test_certificate_too_large():
    p = GamePosition({f"v{i}": 1 for i in range(30)})
    with pytest.raises(CertificateTooLarge):
        certificate(p)
