"""Exact Grundy values and outcomes by memoized game-tree search.

Each position is split into connected components (dead vertices removed)
and component values are combined with XOR.  With reductions enabled, a
component is canonicalized before lookup; the memo key is the isomorphism
certificate of the component, or its exact structure when the component
is too large to certify.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager

from .core import GameMove, GamePosition, Outcome, apply_move, component_indices, induced, legal_moves
from .errors import BudgetExhausted, CertificateTooLarge, PreconditionError
from .reduce import DEFAULT_CERT_VERTEX_BOUND, canonicalize, certificate

DEFAULT_BUDGET = 50_000_000

__all__ = [
    "DEFAULT_BUDGET", "Outcome", "Solver", "TranspositionTable",
    "best_moves", "grundy", "grundy_of_sum", "mex", "outcome",
]


def mex(values) -> int:
    bits = 0
    for g in values:
        bits |= 1 << g
    return (~bits & (bits + 1)).bit_length() - 1


class TranspositionTable:
    """Grundy values keyed by component certificate (or exact structure).

    A second map keyed by exact structure sits in front of it so repeated
    states skip reduction and certification.  Safe to share between
    solvers and across calls, whatever their options.
    """

    def __init__(self):
        self.values: dict = {}
        self.exact: dict = {}
        self.wins: dict = {}
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self.values)

    def stats(self) -> dict:
        return {"entries": len(self.values), "hits": self.hits, "misses": self.misses}


@contextmanager
def _deep_recursion(limit=100_000):
    old = sys.getrecursionlimit()
    if old < limit:
        sys.setrecursionlimit(limit)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _live_components(p: GamePosition) -> list[GamePosition]:
    comps = component_indices(p, live_only=True)
    if len(comps) == 1 and len(comps[0]) == len(p.ids):
        return [p]
    return [induced(p, c) for c in comps]


class Solver:
    def __init__(self, use_reductions: bool = True, table: TranspositionTable | None = None,
                 budget: int = DEFAULT_BUDGET, cert_bound: int = DEFAULT_CERT_VERTEX_BOUND):
        self.use_reductions = use_reductions
        self.table = table if table is not None else TranspositionTable()
        self.budget = budget
        self.cert_bound = cert_bound
        self.expanded = 0

    # -- public API --------------------------------------------------------

    def grundy(self, p: GamePosition) -> int:
        self.expanded = 0
        with _deep_recursion():
            return self._value(p)

    def outcome(self, p: GamePosition) -> Outcome:
        self.expanded = 0
        with _deep_recursion():
            return Outcome.N if self._wins(p) else Outcome.P

    def best_moves(self, p: GamePosition) -> list[GameMove]:
        self.expanded = 0
        with _deep_recursion():
            moves = [m for m in legal_moves(p) if not self._wins(apply_move(p, m))]
        if not moves:
            raise PreconditionError("P-position: no winning move")
        return moves

    # -- internals ---------------------------------------------------------

    def _key(self, comp: GamePosition):
        if len(comp.ids) <= self.cert_bound:
            try:
                return certificate(comp, self.cert_bound)
            except CertificateTooLarge:
                pass
        return comp.key()

    def _expand(self):
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExhausted(self.budget)

    def _value(self, p: GamePosition) -> int:
        # the exact map accepts whole (possibly disconnected) positions too
        ekey = p.key()
        v = self.table.exact.get(ekey)
        if v is not None:
            self.table.hits += 1
            return v
        total = 0
        for comp in _live_components(p):
            total ^= self._component_value(comp)
        self.table.exact[ekey] = total
        return total

    def _reduced_parts(self, comp: GamePosition) -> list[GamePosition]:
        if not self.use_reductions:
            return [comp]
        reduced, _ = canonicalize(comp, record=False)
        if reduced is comp:
            return [comp]
        return _live_components(reduced)

    def _component_value(self, comp: GamePosition) -> int:
        table = self.table
        ekey = comp.key()
        v = table.exact.get(ekey)
        if v is not None:
            table.hits += 1
            return v
        v = 0
        for part in self._reduced_parts(comp):
            v ^= self._core_value(part)
        table.exact[ekey] = v
        return v

    def _core_value(self, comp: GamePosition) -> int:
        table = self.table
        key = self._key(comp)
        v = table.values.get(key)
        if v is not None:
            table.hits += 1
            return v
        table.misses += 1
        self._expand()
        bits = 0
        for m in legal_moves(comp):
            bits |= 1 << self._value(apply_move(comp, m))
        v = (~bits & (bits + 1)).bit_length() - 1
        table.values[key] = v
        return v

    def _wins(self, p: GamePosition) -> bool:
        """True iff the player to move wins ``p`` (an N-position)."""
        comps = _live_components(p)
        if len(comps) == 1:
            parts = self._reduced_parts(comps[0])
            if len(parts) == 1:
                return self._component_wins(parts[0])
            comps = parts
        if not comps:
            return False
        return _xor(self._component_value(c) for c in comps) != 0

    def _component_wins(self, comp: GamePosition) -> bool:
        table = self.table
        ekey = comp.key()
        v = table.exact.get(ekey)
        if v is not None:
            table.hits += 1
            return v != 0
        key = self._key(comp)
        v = table.values.get(key)
        if v is not None:
            table.hits += 1
            return v != 0
        r = table.wins.get(key)
        if r is not None:
            table.hits += 1
            return r
        table.misses += 1
        self._expand()
        r = False
        for m in legal_moves(comp):
            if not self._wins(apply_move(comp, m)):
                r = True
                break
        table.wins[key] = r
        return r


def _xor(values) -> int:
    t = 0
    for v in values:
        t ^= v
    return t


def grundy(p: GamePosition, use_reductions: bool = True, table: TranspositionTable | None = None,
           budget: int = DEFAULT_BUDGET) -> int:
    return Solver(use_reductions, table, budget).grundy(p)


def outcome(p: GamePosition, use_reductions: bool = True, table: TranspositionTable | None = None,
            budget: int = DEFAULT_BUDGET) -> Outcome:
    return Solver(use_reductions, table, budget).outcome(p)


def best_moves(p: GamePosition, use_reductions: bool = True, table: TranspositionTable | None = None,
               budget: int = DEFAULT_BUDGET) -> list[GameMove]:
    """Every move leading to a P-position, in legal-move order."""
    return Solver(use_reductions, table, budget).best_moves(p)


def grundy_of_sum(ps, use_reductions: bool = True, table: TranspositionTable | None = None,
                  budget: int = DEFAULT_BUDGET) -> int:
    s = Solver(use_reductions, table, budget)
    return _xor(s.grundy(p) for p in ps)
