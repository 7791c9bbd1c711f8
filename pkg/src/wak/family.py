"""A family of weight-1 forests with pairwise distinct Grundy values, and the
expansion of any WAK position into an Arc-Kayles position.

``G_1`` is a single looped vertex.  ``G_{n+1}`` holds two copies of each of
``G_1..G_n``; a new looped vertex ``u<n+1>`` is joined to the distinguished
vertex of every first copy.  Copy vertices are named ``p<i>.<inner>`` and
``pp<i>.<inner>``, so ``G_n`` has 3^(n-1) vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GameMove, GamePosition, apply_move, check_vertex_id
from .errors import BudgetExhausted, PreconditionError
from .solver import DEFAULT_BUDGET, Solver, TranspositionTable

DEFAULT_MAX_INDEX = 6
DEFAULT_MAX_EXPANSION = 10_000


@dataclass(frozen=True)
class FamilyGraph:
    n: int
    position: GamePosition
    root: str


def _family_parts(n, cache):
    if n in cache:
        return cache[n]
    root = f"u{n}"
    weights = {root: 1}
    edges, loops = [], [root]
    for i in range(1, n):
        w, e, lp, r = _family_parts(i, cache)
        for tag in (f"p{i}", f"pp{i}"):
            weights.update({f"{tag}.{v}": x for v, x in w.items()})
            edges += [(f"{tag}.{a}", f"{tag}.{b}") for a, b in e]
            loops += [f"{tag}.{v}" for v in lp]
        edges.append((root, f"p{i}.{r}"))
    cache[n] = (weights, edges, loops, root)
    return cache[n]


def build_family(n: int, max_n: int = DEFAULT_MAX_INDEX) -> FamilyGraph:
    if not 1 <= n <= max_n:
        raise PreconditionError(f"family index must lie in 1..{max_n}, got {n}")
    weights, edges, loops, root = _family_parts(n, {})
    return FamilyGraph(n, GamePosition(weights, edges, loops), root)


@dataclass
class FamilyReport:
    grundy: list = field(default_factory=list)          # G(G_1), G(G_2), ... for the verified prefix
    loop_move_grundy: list = field(default_factory=list)  # Grundy value after playing the loop at u_n
    edge_move_grundy: dict = field(default_factory=dict)  # (n, i) -> value after playing (u_n, p<i>.u_i)
    exhausted_at: int | None = None

    @property
    def verified(self) -> int:
        return len(self.grundy)

    @property
    def distinct(self) -> bool:
        return len(set(self.grundy)) == len(self.grundy)

    @property
    def ok(self) -> bool:
        edge_ok = all(v == self.grundy[i - 1] for (n, i), v in self.edge_move_grundy.items())
        return self.distinct and all(v == 0 for v in self.loop_move_grundy) and edge_ok


def verify_family(n_max: int, budget: int = DEFAULT_BUDGET, max_n: int = DEFAULT_MAX_INDEX,
                  table: TranspositionTable | None = None) -> FamilyReport:
    """Solve G_1..G_{n_max}; stops at the first index that exceeds the budget."""
    report = FamilyReport()
    table = table if table is not None else TranspositionTable()
    for n in range(1, n_max + 1):
        fam = build_family(n, max_n)
        solver = Solver(table=table, budget=budget)
        try:
            g = solver.grundy(fam.position)
            after_loop = solver.grundy(apply_move(fam.position, GameMove(fam.root, fam.root)))
            edges = {(n, i): solver.grundy(apply_move(fam.position, GameMove.of(fam.root, f"p{i}.u{i}")))
                     for i in range(1, n)}
        except BudgetExhausted:
            report.exhausted_at = n
            break
        report.grundy.append(g)
        report.loop_move_grundy.append(after_loop)
        report.edge_move_grundy.update(edges)
    return report


def expand_to_arc_kayles(p: GamePosition, max_vertices: int = DEFAULT_MAX_EXPANSION) -> GamePosition:
    """Loopless, all-weight-1 position with the same Grundy value.

    A vertex ``u`` of weight w > 1 becomes false twins ``u.1 .. u.w``; then
    each looped copy loses its loop and gains its own weight-1 pendant
    ``<copy>.loop``.  Dead vertices vanish.
    """
    size = sum(p.w) + sum(x for v, x in zip(p.ids, p.w) if p.has_loop(v))
    if size > max_vertices:
        raise PreconditionError(f"expansion would have {size} vertices (limit {max_vertices})")
    copies = {}
    for v, x in zip(p.ids, p.w):
        copies[v] = [v] if x == 1 else [f"{v}.{k}" for k in range(1, x + 1)]
    weights, edges = {}, []
    for v in p.ids:
        for c in copies[v]:
            weights[c] = 1
    for a, b in p.edges:
        edges += [(x, y) for x in copies[a] for y in copies[b]]
    for v in p.loops:
        for c in copies[v]:
            pendant = f"{c}.loop"
            weights[pendant] = 1
            edges.append((c, pendant))
    if len(weights) != size:
        raise ValueError("expanded vertex names collide with existing ids")
    for v in weights:
        check_vertex_id(v)
    return GamePosition(weights, edges)
