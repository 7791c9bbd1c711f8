"""Weighted Arc-Kayles positions: the data model, moves and file formats.

A position is a simple undirected graph whose vertices carry a counter
(weight) and optionally a loop.  Vertices are stored in lexicographic id
order and addressed internally by index; adjacency is kept as one integer
bitmask per vertex so the search code can copy and compare states cheaply.
"""

from __future__ import annotations

import enum
import json
import re
from typing import Iterable, Mapping, NamedTuple

from .errors import IllegalMoveError, ParseError

MAX_WEIGHT = 2**32 - 1
_ID_RE = re.compile(r"[A-Za-z0-9_.]{1,64}\Z")


class Outcome(str, enum.Enum):
    P = "P"
    N = "N"

    def __str__(self):
        return self.value


class GameMove(NamedTuple):
    """An edge selection; ``u == v`` denotes the loop on ``u``."""

    u: str
    v: str

    @classmethod
    def of(cls, u: str, v: str | None = None) -> "GameMove":
        if v is None:
            v = u
        return cls(u, v) if u <= v else cls(v, u)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


def check_vertex_id(v) -> str:
    if not isinstance(v, str) or not _ID_RE.match(v):
        raise ValueError(f"invalid vertex id {v!r}")
    return v


class GamePosition:
    """Immutable WAK position.

    Build one from a weight mapping plus edge and loop collections::

        GamePosition({"a": 2, "b": 5, "c": 1}, edges=[("a", "b"), ("b", "c")], loops=["b"])

    An edge ``(u, u)`` is accepted as a loop.  Equality and hashing are
    structural, including vertex ids.
    """

    __slots__ = ("ids", "w", "loopmask", "adj", "_index", "_hash")

    def __init__(self, weights: Mapping[str, int], edges: Iterable = (), loops: Iterable[str] = ()):
        ids = tuple(sorted(weights))
        for v in ids:
            check_vertex_id(v)
        index = {v: i for i, v in enumerate(ids)}
        w = []
        for v in ids:
            x = weights[v]
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"weight of {v!r} must be an integer, got {x!r}")
            if x < 0 or x > MAX_WEIGHT:
                raise ValueError(f"weight of {v!r} out of range: {x}")
            w.append(x)
        adj = [0] * len(ids)
        loopmask = 0
        loop_items = [(v, v) for v in loops]
        for u, v in list(edges) + loop_items:
            for x in (u, v):
                if x not in index:
                    raise ValueError(f"undeclared vertex {x!r}")
            i, j = index[u], index[v]
            if i == j:
                if loopmask >> i & 1:
                    raise ValueError(f"duplicate loop on {u!r}")
                loopmask |= 1 << i
            else:
                if adj[i] >> j & 1:
                    raise ValueError(f"duplicate edge {u!r}-{v!r}")
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        self._set(ids, tuple(w), loopmask, tuple(adj), index)

    def _set(self, ids, w, loopmask, adj, index=None):
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "loopmask", loopmask)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, ids, w, loopmask, adj) -> "GamePosition":
        # trusted constructor: ids sorted, masks symmetric
        obj = object.__new__(cls)
        obj._set(ids, w, loopmask, adj)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GamePosition is immutable")

    # -- accessors -------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.ids

    @property
    def index(self) -> dict[str, int]:
        if self._index is None:
            object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.ids)})
        return self._index

    @property
    def weights(self) -> dict[str, int]:
        return dict(zip(self.ids, self.w))

    def weight(self, v: str) -> int:
        return self.w[self.index[v]]

    def has_loop(self, v: str) -> bool:
        return bool(self.loopmask >> self.index[v] & 1)

    @property
    def loops(self) -> frozenset[str]:
        return frozenset(v for i, v in enumerate(self.ids) if self.loopmask >> i & 1)

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        out = set()
        for i, m in enumerate(self.adj):
            for j in iter_bits(m):
                if i < j:
                    out.add((self.ids[i], self.ids[j]))
        return frozenset(out)

    def neighbors(self, v: str) -> list[str]:
        return [self.ids[j] for j in iter_bits(self.adj[self.index[v]])]

    def __len__(self):
        return len(self.ids)

    @property
    def total_weight(self) -> int:
        return sum(self.w)

    def key(self):
        """Structural key ignoring vertex ids (used for exact memoization)."""
        return (self.w, self.loopmask, self.adj)

    def with_weights(self, updates: Mapping[str, int]) -> "GamePosition":
        w = list(self.w)
        for v, x in updates.items():
            if x < 0 or x > MAX_WEIGHT:
                raise ValueError(f"weight of {v!r} out of range: {x}")
            w[self.index[v]] = x
        return GamePosition._make(self.ids, tuple(w), self.loopmask, self.adj)

    def __eq__(self, other):
        if not isinstance(other, GamePosition):
            return NotImplemented
        return (self.ids == other.ids and self.w == other.w
                and self.loopmask == other.loopmask and self.adj == other.adj)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ids, self.w, self.loopmask, self.adj)))
        return self._hash

    def __repr__(self):
        parts = [f"{v}({x}{',loop' if self.loopmask >> i & 1 else ''})"
                 for i, (v, x) in enumerate(zip(self.ids, self.w))]
        es = ", ".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"GamePosition([{' '.join(parts)}]; [{es}])"


def iter_bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def induced(p: GamePosition, keep: list[int], w=None, loopmask=None) -> GamePosition:
    """Subposition on the vertex indices ``keep`` (ascending), optionally with new weights/loops
    given in the *old* indexing."""
    if w is None:
        w = p.w
    if loopmask is None:
        loopmask = p.loopmask
    remap = {old: new for new, old in enumerate(keep)}
    keepmask = 0
    for old in keep:
        keepmask |= 1 << old
    adj = []
    lm = 0
    for new, old in enumerate(keep):
        m = 0
        for j in iter_bits(p.adj[old] & keepmask):
            m |= 1 << remap[j]
        adj.append(m)
        if loopmask >> old & 1:
            lm |= 1 << new
    return GamePosition._make(tuple(p.ids[i] for i in keep), tuple(w[i] for i in keep), lm, tuple(adj))


# -- moves ---------------------------------------------------------------

def legal_moves(p: GamePosition) -> list[GameMove]:
    moves = []
    ids, w = p.ids, p.w
    for i in range(len(ids)):
        if w[i] == 0:
            continue
        if p.loopmask >> i & 1:
            moves.append(GameMove(ids[i], ids[i]))
        for j in iter_bits(p.adj[i] >> (i + 1)):
            j += i + 1
            if w[j]:
                moves.append(GameMove(ids[i], ids[j]))
    return moves


def apply_move(p: GamePosition, m) -> GamePosition:
    u, v = m
    idx = p.index
    if u not in idx or v not in idx:
        raise IllegalMoveError(f"move {u} {v} names an unknown vertex")
    i, j = idx[u], idx[v]
    w = list(p.w)
    if i == j:
        if not (p.loopmask >> i & 1):
            raise IllegalMoveError(f"{u} has no loop")
        if w[i] == 0:
            raise IllegalMoveError(f"{u} has no counter left")
        w[i] -= 1
    else:
        if not (p.adj[i] >> j & 1):
            raise IllegalMoveError(f"no edge {u}-{v}")
        if w[i] == 0 or w[j] == 0:
            raise IllegalMoveError(f"edge {u}-{v} has an exhausted endpoint")
        w[i] -= 1
        w[j] -= 1
    return GamePosition._make(p.ids, tuple(w), p.loopmask, p.adj)


def component_indices(p: GamePosition, live_only=False) -> list[list[int]]:
    n = len(p.ids)
    alive = 0
    for i in range(n):
        if not live_only or p.w[i]:
            alive |= 1 << i
    comps = []
    rest = alive
    while rest:
        start = rest & -rest
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= p.adj[i]
            nxt &= alive & ~seen
            seen |= nxt
            frontier = nxt
        rest &= ~seen
        comps.append(list(iter_bits(seen)))
    return comps


def connected_components(p: GamePosition) -> list[GamePosition]:
    """Components ordered by their smallest vertex id; loops never join vertices."""
    return [induced(p, c) for c in component_indices(p)]


def strip_dead_vertices(p: GamePosition) -> GamePosition:
    keep = [i for i, x in enumerate(p.w) if x]
    if len(keep) == len(p.w):
        return p
    return induced(p, keep)


def relabel(p: GamePosition, mapping) -> GamePosition:
    """Rename vertices; ``mapping`` is a dict or a callable."""
    f = mapping if callable(mapping) else mapping.__getitem__
    names = {v: f(v) for v in p.ids}
    if len(set(names.values())) != len(names):
        raise ValueError("relabelling is not injective")
    return GamePosition({names[v]: x for v, x in zip(p.ids, p.w)},
                        edges=[(names[a], names[b]) for a, b in p.edges],
                        loops=[names[v] for v in p.loops])


def disjoint_union(*ps: GamePosition) -> GamePosition:
    weights, edges, loops = {}, [], []
    for p in ps:
        for v, x in zip(p.ids, p.w):
            if v in weights:
                raise ValueError(f"vertex {v!r} occurs in more than one summand")
            weights[v] = x
        edges.extend(p.edges)
        loops.extend(p.loops)
    return GamePosition(weights, edges, loops)


# -- text / JSON formats ---------------------------------------------------

def parse_position(text: str) -> GamePosition:
    """Parse the line-oriented graph format (or its JSON form if the text starts with ``{``)."""
    if text.lstrip().startswith("{"):
        return position_from_json(text)
    weights: dict[str, int] = {}
    loops: set[str] = set()
    edges: dict[tuple[str, str], tuple[int, int]] = {}
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not toks:
            continue
        kw, col = toks[0]
        if kw == "vertex":
            if len(toks) not in (3, 4):
                raise ParseError("expected 'vertex <id> <weight> [loop]'", lineno, col)
            vid, vcol = toks[1]
            if not _ID_RE.match(vid):
                raise ParseError(f"invalid vertex id {vid!r}", lineno, vcol)
            if vid in weights:
                raise ParseError(f"duplicate vertex {vid!r}", lineno, vcol)
            ws, wcol = toks[2]
            if not re.fullmatch(r"-?[0-9]+", ws):
                raise ParseError(f"invalid weight {ws!r}", lineno, wcol)
            x = int(ws)
            if x < 0:
                raise ParseError(f"negative weight {x}", lineno, wcol)
            if x > MAX_WEIGHT:
                raise ParseError(f"weight {x} exceeds {MAX_WEIGHT}", lineno, wcol)
            weights[vid] = x
            if len(toks) == 4:
                if toks[3][0] != "loop":
                    raise ParseError(f"unexpected token {toks[3][0]!r}", lineno, toks[3][1])
                loops.add(vid)
        elif kw == "edge":
            if len(toks) != 3:
                raise ParseError("expected 'edge <id1> <id2>'", lineno, col)
            pending.append((toks[1], toks[2], lineno))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno, col)
    for (u, ucol), (v, vcol), lineno in pending:
        for x, c in ((u, ucol), (v, vcol)):
            if x not in weights:
                raise ParseError(f"undeclared vertex {x!r}", lineno, c)
        if u == v:
            if u in loops:
                raise ParseError(f"duplicate loop on {u!r}", lineno, ucol)
            loops.add(u)
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            raise ParseError(f"duplicate edge {u}-{v}", lineno, ucol)
        edges[key] = (lineno, ucol)
    return GamePosition(weights, edges.keys(), loops)


def format_position(p: GamePosition) -> str:
    """Canonical text serialization: vertices then edges, both sorted."""
    lines = []
    for i, (v, x) in enumerate(zip(p.ids, p.w)):
        lines.append(f"vertex {v} {x}" + (" loop" if p.loopmask >> i & 1 else ""))
    for u, v in sorted(p.edges):
        lines.append(f"edge {u} {v}")
    return "".join(line + "\n" for line in lines)


def position_to_dict(p: GamePosition) -> dict:
    return {
        "vertices": [{"id": v, "weight": x, "loop": bool(p.loopmask >> i & 1)}
                     for i, (v, x) in enumerate(zip(p.ids, p.w))],
        "edges": [[u, v] for u, v in sorted(p.edges)],
    }


def position_to_json(p: GamePosition) -> str:
    return json.dumps(position_to_dict(p), separators=(",", ":"))


def position_from_json(doc) -> GamePosition:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from None
    try:
        weights, loops = {}, set()
        for item in doc["vertices"]:
            vid, x = item["id"], item["weight"]
            if vid in weights:
                raise ParseError(f"duplicate vertex {vid!r}")
            if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                raise ParseError(f"invalid weight for {vid!r}: {x!r}")
            weights[vid] = x
            if item.get("loop", False):
                loops.add(vid)
        edges = []
        for u, v in doc.get("edges", []):
            if u == v:
                if u in loops:
                    raise ParseError(f"duplicate loop on {u!r}")
                loops.add(u)
            else:
                edges.append((u, v))
        return GamePosition(weights, edges, loops)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed position document: {e}") from None
