"""Exact isolation and domination numbers, the isolating-set checker, and
the 3-colouring route to a small dominating set."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from ._kernels import SubsetSearch
from .core import Mop, SimpleGraph

PROVENANCES = ("exact", "theorem1", "theorem2-low", "theorem2-high", "manual")


@dataclass(frozen=True)
class IsolatingSet:
    """A vertex set that leaves no K_{1,k+1} behind, with where it came from."""

    members: frozenset
    k: int
    provenance: str = "manual"

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> list:
        return sorted(self.members)


@dataclass(frozen=True)
class Coloring:
    colors: tuple

    def is_proper(self, m: Mop) -> bool:
        c = self.colors
        return len(c) == m.n and all(c[a] != c[b] for a, b in m.edges())

    def classes(self) -> list:
        out = [set(), set(), set()]
        for v, col in enumerate(self.colors):
            out[col].add(v)
        return [frozenset(s) for s in out]


def contains_star(g: SimpleGraph, k: int) -> bool:
    """True iff ``g`` has K_{1,k+1} as a subgraph, i.e. a vertex of degree > k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return any(d >= k + 1 for d in g.degrees().values())


def _check_members(m: Mop, S) -> None:
    for v in S:
        if not (0 <= v < m.n):
            raise ValueError(f"vertex {v} out of range for order {m.n}")


def is_isolating_set(m: Mop, S, k: int) -> bool:
    """Linear-time test that ``m - N[S]`` has maximum degree at most ``k``."""
    _check_members(m, S)
    nbrs = m.neighbors
    gone = bytearray(m.n)
    for v in S:
        gone[v] = 1
        for w in nbrs[v]:
            gone[w] = 1
    for v in range(m.n):
        if gone[v]:
            continue
        left = 0
        for w in nbrs[v]:
            if not gone[w]:
                left += 1
        if left > k:
            return False
    return True


def dominates(m: Mop, S) -> bool:
    _check_members(m, S)
    seen = bytearray(m.n)
    for v in S:
        seen[v] = 1
        for w in m.neighbors[v]:
            seen[w] = 1
    return all(seen)


def default_cap(n: int) -> int:
    return n // 3 + 1


def _min_search(m: Mop, need: int, size_cap: int | None, backend: str | None):
    cap = default_cap(m.n) if size_cap is None else size_cap
    search = SubsetSearch(m.neighbors, backend)
    for r in range(0, min(cap, m.n) + 1):
        hit = search.first(r, need)
        if hit is not None:
            return frozenset(hit)
    return None


def iota_exact(m: Mop, k: int, size_cap: int | None = None, *, backend: str | None = None):
    """Smallest K_{1,k+1}-isolating set, or ``None`` if none fits in ``size_cap``.

    Cardinalities are tried in increasing order, so the witness is minimum;
    among minimum sets the lexicographically first is returned.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    hit = _min_search(m, k + 1, size_cap, backend)
    return None if hit is None else IsolatingSet(hit, k, "exact")


def gamma_exact(m: Mop, size_cap: int | None = None, *, backend: str | None = None):
    """Minimum dominating set as a frozenset, or ``None`` past ``size_cap``."""
    return _min_search(m, 0, size_cap, backend)


def three_color(m: Mop) -> Coloring:
    """Proper 3-colouring by peeling ears, lowest label first."""
    n = m.n
    adj = [set(row) for row in m.neighbors]
    deg = [len(row) for row in adj]
    alive = [True] * n
    heap = [v for v in range(n) if deg[v] == 2]
    heapq.heapify(heap)
    peeled = []
    remaining = n
    while remaining > 3:
        v = heapq.heappop(heap)
        if not alive[v] or deg[v] != 2:
            continue
        a, b = adj[v]
        peeled.append((v, a, b))
        alive[v] = False
        remaining -= 1
        for w in (a, b):
            adj[w].discard(v)
            deg[w] -= 1
            if deg[w] == 2:
                heapq.heappush(heap, w)
    colors = [-1] * n
    for c, v in enumerate(sorted(v for v in range(n) if alive[v])):
        colors[v] = c
    for v, a, b in reversed(peeled):
        colors[v] = 3 - colors[a] - colors[b]
    return Coloring(tuple(colors))


def dominating_by_coloring(m: Mop) -> frozenset:
    """Smallest colour class of ``three_color``; at most n/3 vertices and
    dominating, since every vertex lies on a triangle using all three colours."""
    classes = three_color(m).classes()
    return min(classes, key=lambda s: (len(s), sorted(s)))

