import pytest
from hypothesis import given, settings

from conftest import positions
from oracle import naive_grundy_of
from wak.core import GameMove, GamePosition, apply_move, connected_components
from wak.errors import PreconditionError
from wak.family import build_family, expand_to_arc_kayles, verify_family
from wak.reduce import canonicalize
from wak.solver import grundy


def test_family_sizes_and_shape():
    for n in range(1, 7):
        fam = build_family(n)
        assert len(fam.position) == 3 ** (n - 1)
        assert set(fam.position.w) == {1}
        assert fam.root == f"u{n}" and fam.position.has_loop(fam.root)


def test_small_members():
    assert build_family(1).position == GamePosition({"u1": 1}, loops=["u1"])
    g2 = build_family(2).position
    assert g2 == GamePosition({"u2": 1, "p1.u1": 1, "pp1.u1": 1}, [("u2", "p1.u1")], ["u2", "p1.u1", "pp1.u1"])
    assert len(connected_components(g2)) == 2
    with pytest.raises(PreconditionError):
        build_family(0)
    with pytest.raises(PreconditionError):
        build_family(7)
    assert len(build_family(7, max_n=7).position) == 729


def test_verify_family_small():
    r = verify_family(3)
    assert r.grundy == [1, 3, 2]
    assert r.loop_move_grundy == [0, 0, 0]
    assert r.edge_move_grundy == {(2, 1): 1, (3, 1): 1, (3, 2): 3}
    assert r.distinct and r.ok and r.exhausted_at is None and r.verified == 3


def test_verify_family_reports_budget():
    r = verify_family(4, budget=2)
    assert r.exhausted_at is not None and r.verified == r.exhausted_at - 1


def test_g2_oracle():
    assert naive_grundy_of(build_family(2).position) == 3


def test_expand_examples():
    e = expand_to_arc_kayles(GamePosition({"a": 1}, loops=["a"]))
    assert e == GamePosition({"a": 1, "a.loop": 1}, [("a", "a.loop")])
    e = expand_to_arc_kayles(GamePosition({"u": 3, "b": 1}, [("u", "b")]))
    assert e.edges == {("b", "u.1"), ("b", "u.2"), ("b", "u.3")}
    p = GamePosition({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c")])
    assert expand_to_arc_kayles(p) == p


def test_expand_looped_heavy_vertex():
    # each looped copy keeps its own pendant
    p = GamePosition({"a": 2}, loops=["a"])
    e = expand_to_arc_kayles(p)
    assert len(e) == 4 and grundy(e) == grundy(p) == 0


def test_expand_cap():
    with pytest.raises(PreconditionError):
        expand_to_arc_kayles(GamePosition({"a": 20000}))


@settings(max_examples=150, deadline=None)
@given(positions(max_vertices=4, max_weight=3))
def test_expand_preserves_grundy(p):
    e = expand_to_arc_kayles(p)
    assert not e.loops and set(e.w) <= {1}
    g = grundy(p)
    assert grundy(e) == g
    assert grundy(canonicalize(e)[0]) == g


def test_edge_option_matches_smaller_member():
    fam = build_family(3)
    q = apply_move(fam.position, GameMove.of("u3", "p2.u2"))
    assert grundy(q) == grundy(build_family(2).position)
