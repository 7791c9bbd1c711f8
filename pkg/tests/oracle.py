"""Naive reference solver used as an independent oracle in tests.

Plain recursion over weight vectors: no component splitting, no
reductions, no certificates.  Only suitable for tiny positions.
"""

from functools import lru_cache


def naive_grundy(weights, edges, loops):
    """weights: dict id -> int; edges: iterable of (u, v); loops: iterable of ids."""
    names = sorted(weights)
    idx = {v: i for i, v in enumerate(names)}
    moves = [(idx[u], idx[v]) for u, v in edges] + [(idx[u], idx[u]) for u in loops]

    @lru_cache(maxsize=None)
    def g(w):
        seen = set()
        for i, j in moves:
            if w[i] > 0 and w[j] > 0:
                nw = list(w)
                nw[i] -= 1
                if j != i:
                    nw[j] -= 1
                seen.add(g(tuple(nw)))
        m = 0
        while m in seen:
            m += 1
        return m

    return g(tuple(weights[v] for v in names))


def naive_grundy_of(p):
    return naive_grundy(p.weights, p.edges, p.loops)


def path(*ws, loops=()):
    """Weights and edges of a path v0-v1-...; ``loops`` lists indices."""
    weights = {f"v{i}": x for i, x in enumerate(ws)}
    edges = [(f"v{i}", f"v{i + 1}") for i in range(len(ws) - 1)]
    return weights, edges, [f"v{i}" for i in loops]
