"""Closed forms for small looped graphs and the outcome algorithm for
loopless trees of depth at most two.

The tree algorithm only ever needs parities and a handful of comparisons
between weight sums, so it runs in time polynomial in the number of
vertices and the bit length of the weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GamePosition, Outcome, connected_components, iter_bits, strip_dead_vertices
from .errors import PreconditionError


def _outcome(p_position: bool) -> Outcome:
    return Outcome.P if p_position else Outcome.N


def loop_grundy(a: int) -> int:
    return a % 2


def twoloops_grundy(a: int, b: int) -> int:
    """Grundy value of an edge whose two endpoints both carry a loop."""
    return (a + b) % 2 + 2 * (min(a, b) % 2)


def loop_plus_twoloops_outcome(a: int, b: int, c: int) -> Outcome:
    """Outcome of loop(a) + twoloops(b, c)."""
    lo, hi = min(b, c), max(b, c)
    if a % 2 == 0 and b % 2 == 0 and c % 2 == 0:
        return Outcome.P
    return _outcome(a % 2 == 1 and hi % 2 == 1 and lo % 2 == 0)


def p4_loop_outcome(a: int, b: int, c: int, d: int) -> Outcome:
    """Outcome of the path loop(a)-b-c-d, valid whenever c < b + d.

    Every canonical instance satisfies that inequality; the parity rule
    holds on the whole region, degenerate zero weights included.
    """
    if not c < b + d:
        raise PreconditionError(f"path ({a},{b},{c},{d}) needs c < b + d; reduce the heavy vertex first")
    return _outcome((a + c) % 2 == 0)


@dataclass(frozen=True)
class SpiderForm:
    """Root ``c`` joined to a looped vertex ``a`` and to branch tops ``x``, each with a pendant ``y``."""

    a: int
    c: int
    branches: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(tuple(b) for b in self.branches))
        if min((self.a, self.c) + tuple(x for b in self.branches for x in b), default=0) < 0:
            raise ValueError("weights must be nonnegative")


def spider_to_path(s: SpiderForm) -> tuple[int, int, int, int]:
    """Collapse the branches into a single one: returns ``(a, c, X, Y)``."""
    for x, y in s.branches:
        if not x > y:
            raise PreconditionError(f"branch ({x},{y}) has a heavy pendant; reduce it first")
    return s.a, s.c, sum(x for x, _ in s.branches), sum(y for _, y in s.branches)


def path_outcome(a: int, c: int, X: int, Y: int, trace: list | None = None) -> Outcome:
    """Outcome of loop(a)-c-X-Y."""
    if X >= Y + c:
        # X is heavy: the path splits into twoloops(a, c) + loop(Y)
        if trace is not None:
            trace.append(f"X={X} >= Y+c={Y + c}: loop({Y}) + twoloops({a},{c})")
        return loop_plus_twoloops_outcome(Y, a, c)
    if c >= a + X:
        # c is heavy, then Y becomes useless: loop(a) + loop(X)
        if trace is not None:
            trace.append(f"c={c} >= a+X={a + X}: loop({a}) + loop({X})")
        return _outcome((a + X) % 2 == 0)
    if trace is not None:
        trace.append(f"canonical path: parity of a+X={a + X}")
    return p4_loop_outcome(a, c, X, Y)


# -- position builders ------------------------------------------------------

def loop_position(a: int, name: str = "a") -> GamePosition:
    return GamePosition({name: a}, loops=[name])


def twoloops_position(a: int, b: int) -> GamePosition:
    return GamePosition({"a": a, "b": b}, [("a", "b")], ["a", "b"])


def p4_loop_position(a: int, b: int, c: int, d: int) -> GamePosition:
    return GamePosition({"a": a, "b": b, "c": c, "d": d}, [("a", "b"), ("b", "c"), ("c", "d")], ["a"])


def spider_position(s: SpiderForm) -> GamePosition:
    weights = {"a": s.a, "c": s.c}
    edges = [("a", "c")]
    for k, (x, y) in enumerate(s.branches):
        weights[f"x{k}"], weights[f"y{k}"] = x, y
        edges += [("c", f"x{k}"), (f"x{k}", f"y{k}")]
    return GamePosition(weights, edges, ["a"])


# -- trees of depth <= 2 ------------------------------------------------------

def _eccentricities(p: GamePosition) -> list[int]:
    n = len(p.ids)
    out = []
    for s in range(n):
        seen = frontier = 1 << s
        depth = 0
        while True:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= p.adj[i]
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            depth += 1
        out.append(depth)
    return out


def tree_root(p: GamePosition) -> str:
    """Lexicographically smallest vertex of minimum eccentricity; must be at most 2."""
    if len(p.ids) == 0:
        raise PreconditionError("empty graph is not a tree")
    if p.loopmask:
        raise PreconditionError("tree must be loopless")
    if len(p.edges) != len(p.ids) - 1 or len(connected_components(p)) != 1:
        raise PreconditionError("graph is not a tree")
    ecc = _eccentricities(p)
    best = min(ecc)
    if best > 2:
        raise PreconditionError(f"tree has depth {best} from every root; at most 2 is supported")
    return p.ids[ecc.index(best)]


def _star_grundy(p: GamePosition) -> int:
    # twin leaves merge into one, then the heavier endpoint of the edge goes
    n = len(p.ids)
    for i in range(n):
        if bin(p.adj[i]).count("1") == n - 1:
            return min(p.w[i], sum(p.w) - p.w[i]) % 2
    raise PreconditionError("component is not a star")


def tree2_outcome(p: GamePosition, trace: list | None = None) -> Outcome:
    """Outcome of WAK on a loopless tree of depth at most 2 (no game-tree search).

    Pass a list as ``trace`` to collect a human-readable account of the
    reduction pipeline.
    """
    tree_root(p)
    live = strip_dead_vertices(p)
    comps = [c for c in connected_components(live) if len(c) > 1]
    if len(live) < len(p) and trace is not None:
        trace.append(f"removed {len(p) - len(live)} exhausted vertices")
    if not comps:
        if trace is not None:
            trace.append("no playable edge")
        return Outcome.P
    if len(comps) > 1:
        # only an exhausted root disconnects the tree, leaving stars
        g = 0
        for c in comps:
            g ^= _star_grundy(c)
        if trace is not None:
            trace.append(f"exhausted root: {len(comps)} stars, nim-sum {g}")
        return _outcome(g == 0)
    return _tree_pipeline(comps[0], trace)


def _tree_pipeline(t: GamePosition, trace: list | None) -> Outcome:
    def note(msg):
        if trace is not None:
            trace.append(msg)

    root = tree_root(t)
    c = t.weight(root)
    note(f"root {root} (weight {c})")
    looped = 0
    branches = []
    leaf_sum = 0
    leaf_names = []
    for x in t.neighbors(root):
        kids = [y for y in t.neighbors(x) if y != root]
        wx = t.weight(x)
        if not kids:
            leaf_sum += wx
            leaf_names.append(x)
            continue
        wy = sum(t.weight(y) for y in kids)
        if len(kids) > 1:
            note(f"merge twin leaves {' '.join(kids)} under {x} -> weight {wy}")
        if wy >= wx:
            note(f"heavy leaf under {x} ({wy} >= {wx}): delete, loop on {x}")
            looped += wx
        else:
            branches.append((wx, wy))
    if len(leaf_names) > 1:
        note(f"merge twin leaves {' '.join(leaf_names)} under root -> weight {leaf_sum}")
    if leaf_names:
        note(f"pendant of weight 0 attached to root leaf of weight {leaf_sum}")
        branches.append((leaf_sum, 0))
    note(f"looped vertices merged: a={looped}")
    spider = SpiderForm(looped, c, tuple(branches))
    a, c, X, Y = spider_to_path(spider)
    note(f"spider -> path loop({a})-{c}-{X}-{Y}")
    return path_outcome(a, c, X, Y, trace)
