"""Seeded random positions and boards for property checks."""

from __future__ import annotations

import random

from .core import GamePosition
from .rooks import Board


def random_position(rng: random.Random, max_vertices: int = 5, max_weight: int = 3,
                    loop_prob: float = 0.3, edge_prob: float = 0.5, min_weight: int = 0,
                    min_vertices: int = 1, prefix: str = "v") -> GamePosition:
    n = rng.randint(min_vertices, max_vertices)
    names = [f"{prefix}{i}" for i in range(n)]
    weights = {v: rng.randint(min_weight, max_weight) for v in names}
    edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob]
    loops = [v for v in names if rng.random() < loop_prob]
    return GamePosition(weights, edges, loops)


def random_board(rng: random.Random, rows: int, cols: int, max_holes: int, rook_prob: float = 0.0) -> Board:
    """Board with up to ``max_holes`` holes and, optionally, a few non-attacking rooks."""
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    holes = set(rng.sample(cells, rng.randint(0, min(max_holes, len(cells)))))
    b = Board(tuple("".join("#" if (r, c) in holes else "." for c in range(cols)) for r in range(rows)))
    if rook_prob:
        from .rooks import rook_moves
        for _ in range(rows * cols):
            moves = rook_moves(b)
            if not moves or rng.random() >= rook_prob:
                break
            b = b.place(*rng.choice(moves))
    return b
