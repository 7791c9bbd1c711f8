"""Outcome and Grundy sequences in one varying looped weight, and period detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import GamePosition, Outcome
from .errors import NoPeriodFound, PreconditionError
from .solver import DEFAULT_BUDGET, Solver, TranspositionTable


@dataclass(frozen=True)
class OutcomeSequence:
    skeleton: GamePosition
    vertex: str
    fixed: dict
    values: tuple

    @property
    def omega(self) -> int:
        return sum(self.fixed.values())

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class PeriodReport:
    preperiod: int
    period: int
    certified_up_to: int


def default_x_max(omega: int) -> int:
    return 2 * omega + 12


def _prepare(g: GamePosition, v1: str, fixed: Mapping[str, int] | None, x_max: int | None):
    if v1 not in g.index:
        raise PreconditionError(f"unknown vertex {v1!r}")
    if not g.has_loop(v1):
        raise PreconditionError(f"varied vertex {v1!r} must carry a loop")
    weights = {v: x for v, x in g.weights.items() if v != v1}
    if fixed:
        for v, x in fixed.items():
            if v == v1 or v not in weights:
                raise PreconditionError(f"cannot fix weight of {v!r}")
            weights[v] = x
    omega = sum(weights.values())
    if x_max is None:
        x_max = default_x_max(omega)
    if x_max < 2 * omega + 4:
        raise PreconditionError(f"x_max={x_max} is below 2*Omega+4={2 * omega + 4}")
    return g.with_weights(weights), weights, x_max


def _sequence(g, v1, fixed, x_max, budget, table, f):
    g, weights, x_max = _prepare(g, v1, fixed, x_max)
    solver = Solver(table=table if table is not None else TranspositionTable(), budget=budget)
    values = tuple(f(solver, g.with_weights({v1: x})) for x in range(x_max + 1))
    return OutcomeSequence(g, v1, weights, values)


def outcome_sequence(g: GamePosition, v1: str, x_max: int | None = None,
                     fixed: Mapping[str, int] | None = None, budget: int = DEFAULT_BUDGET,
                     table: TranspositionTable | None = None) -> OutcomeSequence:
    """Outcomes of ``g`` with the weight of looped ``v1`` set to x = 0..x_max.

    The other weights come from ``g``, overridden by ``fixed``.
    """
    return _sequence(g, v1, fixed, x_max, budget, table, Solver.outcome)


def grundy_sequence(g: GamePosition, v1: str, x_max: int | None = None,
                    fixed: Mapping[str, int] | None = None, budget: int = DEFAULT_BUDGET,
                    table: TranspositionTable | None = None) -> OutcomeSequence:
    return _sequence(g, v1, fixed, x_max, budget, table, Solver.grundy)


def _min_preperiod(values: Sequence, period: int) -> int:
    n = len(values)
    pre = n - period
    while pre > 0 and values[pre - 1] == values[pre - 1 + period]:
        pre -= 1
    return max(pre, 0)


def detect_period(s: OutcomeSequence | Sequence, window: int | None = None) -> PeriodReport:
    """Smallest period in {1, 2}, then smallest preperiod, confirmed by the data.

    A candidate only counts when its periodic tail holds at least ``window``
    terms beyond one period (default ``max(2*Omega, 4)``).
    """
    if isinstance(s, OutcomeSequence):
        values, omega = s.values, s.omega
    else:
        values, omega = tuple(s), 0
    if window is None:
        window = max(2 * omega, 4)
    n = len(values)
    for period in (1, 2):
        pre = _min_preperiod(values, period)
        if n - pre >= window + period:
            return PeriodReport(pre, period, n - 1)
    raise NoPeriodFound(f"no period <= 2 confirmed over {window} terms in a sequence of length {n}")
