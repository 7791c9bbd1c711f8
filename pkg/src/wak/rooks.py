"""The non-attacking rooks placement game and its translation to WAK.

Boards are text grids over ``.`` (empty), ``#`` (hole) and ``R`` (rook),
row 0 at the top.  Rooks attack along rows and columns but not through
holes.  A player who cannot place a rook loses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import GamePosition, Outcome
from .errors import BudgetExhausted, ParseError
from .solver import DEFAULT_BUDGET, mex

EMPTY, HOLE, ROOK = ".", "#", "R"


@dataclass(frozen=True)
class Board:
    cells: tuple[str, ...]

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def __getitem__(self, rc):
        r, c = rc
        return self.cells[r][c]

    def place(self, r: int, c: int) -> "Board":
        row = self.cells[r]
        cells = list(self.cells)
        cells[r] = row[:c] + ROOK + row[c + 1:]
        return Board(tuple(cells))

    def __str__(self):
        return "\n".join(self.cells)

    @classmethod
    def empty(cls, rows: int, cols: int) -> "Board":
        return cls(tuple(EMPTY * cols for _ in range(rows)))


def _attacks(b: Board, r: int, c: int) -> bool:
    """Whether a rook already on the board sees cell (r, c)."""
    for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
        rr, cc = r + dr, c + dc
        while 0 <= rr < b.rows and 0 <= cc < b.cols:
            x = b.cells[rr][cc]
            if x == HOLE:
                break
            if x == ROOK:
                return True
            rr, cc = rr + dr, cc + dc
    return False


def parse_board(text: str) -> Board:
    lines = [line.rstrip() for line in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    while lines and not lines[0]:
        lines.pop(0)
    if not lines:
        raise ParseError("empty board")
    width = len(lines[0])
    for i, line in enumerate(lines, 1):
        if len(line) != width:
            raise ParseError(f"ragged board: expected {width} cells, got {len(line)}", i, min(len(line), width) + 1)
        for j, ch in enumerate(line, 1):
            if ch not in (EMPTY, HOLE, ROOK):
                raise ParseError(f"invalid board character {ch!r}", i, j)
    b = Board(tuple(lines))
    for r in range(b.rows):
        for c in range(b.cols):
            if b.cells[r][c] == ROOK and _attacks(b, r, c):
                raise ParseError("rooks attack each other", r + 1, c + 1)
    return b


def rook_moves(b: Board) -> list[tuple[int, int]]:
    return [(r, c) for r in range(b.rows) for c in range(b.cols)
            if b.cells[r][c] == EMPTY and not _attacks(b, r, c)]


# -- rectangle covers -----------------------------------------------------

class Orientation(str, enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


@dataclass(frozen=True, order=True)
class Rectangle:
    top: int
    left: int
    bottom: int
    right: int

    @property
    def height(self) -> int:
        return self.bottom - self.top + 1

    @property
    def width(self) -> int:
        return self.right - self.left + 1

    def cells(self):
        for r in range(self.top, self.bottom + 1):
            for c in range(self.left, self.right + 1):
                yield r, c

    def intersects(self, other: "Rectangle") -> bool:
        return not (self.bottom < other.top or other.bottom < self.top
                    or self.right < other.left or other.right < self.left)

    def transpose(self) -> "Rectangle":
        return Rectangle(self.left, self.top, self.right, self.bottom)


@dataclass(frozen=True)
class RectCover:
    orientation: Orientation
    rectangles: tuple[Rectangle, ...]


def _transpose(b: Board) -> Board:
    return Board(tuple("".join(b.cells[r][c] for r in range(b.rows)) for c in range(b.cols)))


def _column_runs(b: Board, c: int) -> list[tuple[int, int]]:
    runs, start = [], None
    for r in range(b.rows):
        if b.cells[r][c] != HOLE:
            if start is None:
                start = r
        elif start is not None:
            runs.append((start, r - 1))
            start = None
    if start is not None:
        runs.append((start, b.rows - 1))
    return runs


def _vertical_rects(b: Board, merge: bool) -> list[Rectangle]:
    done: list[Rectangle] = []
    open_: dict[tuple[int, int], int] = {}   # row span -> left column of the rectangle being grown
    for c in range(b.cols):
        spans = _column_runs(b, c)
        nxt = {}
        for span in spans:
            if merge and span in open_:
                nxt[span] = open_.pop(span)
            else:
                nxt[span] = c
        for (top, bottom), left in open_.items():
            done.append(Rectangle(top, left, bottom, c - 1))
        open_ = nxt
    for (top, bottom), left in open_.items():
        done.append(Rectangle(top, left, bottom, b.cols - 1))
    return sorted(done, key=lambda r: (r.left, r.top))


def vertical_cover(b: Board, merge: bool = True) -> RectCover:
    """Maximal column runs between holes, side-by-side runs with equal row span merged.

    ``merge=False`` keeps one rectangle per column run (still a valid cover).
    """
    return RectCover(Orientation.VERTICAL, tuple(_vertical_rects(b, merge)))


def horizontal_cover(b: Board, merge: bool = True) -> RectCover:
    rects = [r.transpose() for r in _vertical_rects(_transpose(b), merge)]
    return RectCover(Orientation.HORIZONTAL, tuple(sorted(rects, key=lambda r: (r.top, r.left))))


def validate_cover(b: Board, cover: RectCover) -> list[str]:
    """Violations of the cover conditions; empty means valid."""
    out = []
    seen: dict[tuple[int, int], int] = {}
    for k, rect in enumerate(cover.rectangles):
        if rect.top < 0 or rect.left < 0 or rect.bottom >= b.rows or rect.right >= b.cols \
                or rect.top > rect.bottom or rect.left > rect.right:
            out.append(f"OutOfBounds: rectangle {k} {rect}")
            continue
        for r, c in rect.cells():
            if b.cells[r][c] == HOLE:
                out.append(f"ContainsHole: rectangle {k} at ({r},{c})")
            if (r, c) in seen:
                out.append(f"Overlap: rectangles {seen[(r, c)]} and {k} at ({r},{c})")
            else:
                seen[(r, c)] = k
        if cover.orientation == Orientation.VERTICAL:
            border = [(rect.top - 1, c) for c in range(rect.left, rect.right + 1)] + \
                     [(rect.bottom + 1, c) for c in range(rect.left, rect.right + 1)]
        else:
            border = [(r, rect.left - 1) for r in range(rect.top, rect.bottom + 1)] + \
                     [(r, rect.right + 1) for r in range(rect.top, rect.bottom + 1)]
        for r, c in border:
            if 0 <= r < b.rows and 0 <= c < b.cols and b.cells[r][c] != HOLE:
                out.append(f"OpenBorder: rectangle {k} next to ({r},{c})")
    for r in range(b.rows):
        for c in range(b.cols):
            if b.cells[r][c] != HOLE and (r, c) not in seen:
                out.append(f"CoverageGap: ({r},{c})")
    return out


def _rooks_in(b: Board, rect: Rectangle) -> int:
    return sum(b.cells[r][c] == ROOK for r, c in rect.cells())


def board_to_wak(b: Board, vertical: RectCover | None = None,
                 horizontal: RectCover | None = None) -> GamePosition:
    """Vertices ``V<k>`` (free columns) and ``H<k>`` (free rows), edges between intersecting rectangles."""
    vertical = vertical or vertical_cover(b)
    horizontal = horizontal or horizontal_cover(b)
    weights, edges = {}, []
    for k, rv in enumerate(vertical.rectangles, 1):
        weights[f"V{k}"] = rv.width - _rooks_in(b, rv)
    for k, rh in enumerate(horizontal.rectangles, 1):
        weights[f"H{k}"] = rh.height - _rooks_in(b, rh)
    for i, rv in enumerate(vertical.rectangles, 1):
        for j, rh in enumerate(horizontal.rectangles, 1):
            if rv.intersects(rh):
                edges.append((f"V{i}", f"H{j}"))
    return GamePosition(weights, edges)


# -- board search -----------------------------------------------------------

class _BoardSearch:
    """Memoized search over rook placements.

    By default the memo key is the vector of free columns / rows per cover
    rectangle: which square inside a rectangle intersection holds a rook
    does not matter.  ``paranoid=True`` keys on the raw board instead.
    """

    def __init__(self, b: Board, paranoid: bool, budget: int):
        self.paranoid = paranoid
        self.budget = budget
        self.expanded = 0
        self.memo: dict = {}
        if not paranoid:
            self.vrects = vertical_cover(b).rectangles
            self.hrects = horizontal_cover(b).rectangles

    def key(self, b: Board):
        if self.paranoid:
            return b.cells
        return (tuple(_rooks_in(b, r) for r in self.vrects), tuple(_rooks_in(b, r) for r in self.hrects))

    def tick(self):
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExhausted(self.budget)

    def grundy(self, b: Board) -> int:
        k = self.key(b)
        v = self.memo.get(k)
        if v is None:
            self.tick()
            v = mex({self.grundy(b.place(r, c)) for r, c in rook_moves(b)})
            self.memo[k] = v
        return v

    def wins(self, b: Board) -> bool:
        k = self.key(b)
        v = self.memo.get(k)
        if v is None:
            self.tick()
            v = any(not self.wins(b.place(r, c)) for r, c in rook_moves(b))
            self.memo[k] = v
        return v


def rooks_grundy(b: Board, paranoid: bool = False, budget: int = DEFAULT_BUDGET) -> int:
    return _BoardSearch(b, paranoid, budget).grundy(b)


def rooks_outcome(b: Board, paranoid: bool = False, budget: int = DEFAULT_BUDGET) -> Outcome:
    return Outcome.N if _BoardSearch(b, paranoid, budget).wins(b) else Outcome.P
