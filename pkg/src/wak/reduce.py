"""Grundy-preserving simplifications and isomorphism certificates.

Three rules shrink a position without changing its Grundy value:

* a loopless vertex whose neighbours all carry loops can be deleted;
* a loopless vertex at least as heavy as its whole neighbourhood can be
  deleted once loops are attached to its neighbours;
* two non-adjacent vertices with equal neighbourhoods and loop status can
  be merged, adding their weights.

:func:`canonicalize` applies them to a fixpoint with a fixed priority so
results are reproducible.  Different orders may end in different (but
Grundy-equivalent) positions.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .core import GamePosition, induced, iter_bits
from .errors import CertificateTooLarge


class ReductionKind(str, enum.Enum):
    USELESS_DELETE = "UselessDelete"
    HEAVY_DELETE = "HeavyDelete"
    TWIN_MERGE = "TwinMerge"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ReductionStep:
    kind: ReductionKind
    subject: tuple[str, ...]
    loops_added: tuple[str, ...] = field(default=())

    def __str__(self):
        s = f"{self.kind} {' '.join(self.subject)}"
        if self.loops_added:
            s += " -> loops on " + " ".join(self.loops_added)
        return s


# -- detection (index based) ---------------------------------------------

def _useless(w, loopmask, adj, alive):
    for i in iter_bits(alive):
        if not (loopmask >> i & 1) and not (adj[i] & alive & ~loopmask):
            return i
    return None


def _heavy(w, loopmask, adj, alive):
    for i in iter_bits(alive):
        if loopmask >> i & 1:
            continue
        if w[i] >= sum(w[j] for j in iter_bits(adj[i] & alive)):
            return i
    return None


def _twins(w, loopmask, adj, alive):
    items = list(iter_bits(alive))
    for a, i in enumerate(items):
        ni = adj[i] & alive
        li = loopmask >> i & 1
        for j in items[a + 1:]:
            if ni >> j & 1:
                continue
            if adj[j] & alive == ni and (loopmask >> j & 1) == li:
                return i, j
    return None


def _full(p):
    return (1 << len(p.ids)) - 1


def find_useless(p: GamePosition) -> list[str]:
    alive = _full(p)
    return [p.ids[i] for i in iter_bits(alive)
            if not (p.loopmask >> i & 1) and not (p.adj[i] & ~p.loopmask)]


def find_heavy(p: GamePosition) -> list[str]:
    return [p.ids[i] for i in range(len(p.ids))
            if not (p.loopmask >> i & 1) and p.w[i] >= sum(p.w[j] for j in iter_bits(p.adj[i]))]


def find_false_twins(p: GamePosition) -> list[tuple[str, str]]:
    out = []
    n = len(p.ids)
    for i in range(n):
        for j in range(i + 1, n):
            if p.adj[i] >> j & 1:
                continue
            if p.adj[i] == p.adj[j] and (p.loopmask >> i & 1) == (p.loopmask >> j & 1):
                out.append((p.ids[i], p.ids[j]))
    return out


def is_canonical(p: GamePosition) -> bool:
    return not (find_useless(p) or find_heavy(p) or find_false_twins(p))


# -- rewriting -----------------------------------------------------------

class _Work:
    """Mutable copy of a position used while rewriting."""

    def __init__(self, p: GamePosition):
        self.p = p
        self.w = list(p.w)
        self.loopmask = p.loopmask
        self.adj = list(p.adj)
        self.alive = _full(p)

    def remove(self, i):
        self.alive &= ~(1 << i)

    def strip_dead(self):
        for i in iter_bits(self.alive):
            if self.w[i] == 0:
                self.remove(i)

    def step(self, record):
        """Apply one rule (useless > heavy > twins); return the step, True, or None."""
        ids = self.p.ids
        args = (self.w, self.loopmask, self.adj, self.alive)
        i = _useless(*args)
        if i is not None:
            self.remove(i)
            return ReductionStep(ReductionKind.USELESS_DELETE, (ids[i],)) if record else True
        i = _heavy(*args)
        if i is not None:
            nbrs = self.adj[i] & self.alive
            self.remove(i)
            added = nbrs & ~self.loopmask
            self.loopmask |= nbrs
            if not record:
                return True
            return ReductionStep(ReductionKind.HEAVY_DELETE, (ids[i],),
                                 tuple(ids[j] for j in iter_bits(added)))
        pair = _twins(*args)
        if pair is not None:
            i, j = pair
            self.w[i] += self.w[j]
            self.remove(j)
            return ReductionStep(ReductionKind.TWIN_MERGE, (ids[i], ids[j])) if record else True
        return None

    def result(self) -> GamePosition:
        if self.alive == _full(self.p) and self.loopmask == self.p.loopmask and tuple(self.w) == self.p.w:
            return self.p
        return induced(self.p, list(iter_bits(self.alive)), self.w, self.loopmask)


def reduce_once(p: GamePosition):
    """Apply exactly one reduction rule.

    Returns ``(position, step)``, or ``None`` when the position is irreducible.
    Ties go to the smallest vertex id.
    """
    work = _Work(p)
    step = work.step(record=True)
    if step is None:
        return None
    return work.result(), step


def canonicalize(p: GamePosition, record: bool = True):
    """Reduce to a fixpoint, deleting dead vertices before every rule scan.

    Returns ``(canonical_position, steps)``; ``steps`` is empty when ``record`` is false.
    """
    work = _Work(p)
    steps = []
    while True:
        work.strip_dead()
        step = work.step(record)
        if step is None:
            break
        if record:
            steps.append(step)
    return work.result(), steps


# -- certificates --------------------------------------------------------

DEFAULT_CERT_VERTEX_BOUND = 24
DEFAULT_CERT_LEAF_BOUND = 20000


def _refine(adj, colors):
    """Colour refinement to an equitable partition. Colours are dense ranks."""
    n = len(colors)
    ncells = len(set(colors))
    while True:
        sigs = [(colors[i], tuple(sorted(colors[j] for j in iter_bits(adj[i])))) for i in range(n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncells:
            return colors
        ncells = len(ranks)


def certificate(p: GamePosition, max_vertices: int = DEFAULT_CERT_VERTEX_BOUND,
                max_leaves: int = DEFAULT_CERT_LEAF_BOUND) -> bytes:
    """Byte string equal for two positions iff they are isomorphic (weights and loops included).

    Colour refinement followed by individualisation over the first
    non-singleton cell; the lexicographically least adjacency encoding over
    all leaves of the search tree is the certificate.  Interchangeable
    vertices (same weight, loop and neighbourhood apart from each other) are
    branched on only once.
    """
    n = len(p.ids)
    if n > max_vertices:
        raise CertificateTooLarge(f"{n} vertices exceeds certificate bound {max_vertices}")
    w, lm, adj = p.w, p.loopmask, p.adj
    init = [(w[i], lm >> i & 1, bin(adj[i]).count("1")) for i in range(n)]
    ranks = {s: r for r, s in enumerate(sorted(set(init)))}
    colors = [ranks[s] for s in init]
    best = None
    leaves = 0

    def encode(colors):
        order = sorted(range(n), key=colors.__getitem__)
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        rows = []
        for v in order:
            m = 0
            for j in iter_bits(adj[v]):
                m |= 1 << pos[j]
            rows.append(m)
        return tuple((w[v], lm >> v & 1) for v in order), tuple(rows)

    def search(colors):
        nonlocal best, leaves
        colors = _refine(adj, colors)
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            leaves += 1
            if leaves > max_leaves:
                raise CertificateTooLarge("certificate search tree too large")
            enc = encode(colors)
            if best is None or enc < best:
                best = enc
            return
        members = cells[target]
        reps = []
        for v in members:
            if not any((adj[v] & ~(1 << r)) == (adj[r] & ~(1 << v)) for r in reps):
                reps.append(v)
        for v in reps:
            nc = [2 * c + (c >= target) for c in colors]
            nc[v] = 2 * target
            search(nc)

    search(colors)
    labels, rows = best
    return json.dumps([n, labels, rows], separators=(",", ":")).encode()
