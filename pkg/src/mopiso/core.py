"""Maximal outerplanar graphs stored as triangulated convex polygons.

A mop of order ``n`` has vertices ``0..n-1`` listed in the order of its
unique Hamiltonian cycle, so the boundary edges ``{i, i+1 mod n}`` are
implicit and only the ``n - 3`` chords (diagonals) are stored.

Every structural operation returns a fresh ``Mop`` together with a label map
so that vertex sets computed on the result can be carried back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal

Edge = tuple[int, int]
LabelMap = tuple  # tuple indexed by old label


class InvalidMop(ValueError):
    """Raised when an operation is handed something that is not a valid mop."""


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _cyclic_adjacent(u: int, v: int, n: int) -> bool:
    d = abs(u - v)
    return d == 1 or d == n - 1


@dataclass(frozen=True)
class Mop:
    n: int
    diagonals: frozenset

    def __post_init__(self):
        norm = frozenset(_pair(int(a), int(b)) for a, b in self.diagonals)
        object.__setattr__(self, "diagonals", norm)

    @classmethod
    def _trusted(cls, n: int, diagonals: frozenset) -> "Mop":
        # Skips normalisation; callers guarantee sorted int pairs.
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "diagonals", diagonals)
        return obj

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable, check: bool = True) -> "Mop":
        m = cls(n, frozenset(tuple(p) for p in pairs))
        if check:
            problem = validate(m)
            if problem is not None:
                raise InvalidMop(problem)
        return m

    @cached_property
    def neighbors(self) -> tuple:
        n = self.n
        adj = [[(i - 1) % n, (i + 1) % n] for i in range(n)]
        for a, b in self.diagonals:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(set(row))) for row in adj)

    @cached_property
    def degrees(self) -> tuple:
        deg = [2] * self.n
        for a, b in self.diagonals:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    def hamiltonian_edges(self) -> list:
        n = self.n
        return sorted(_pair(i, (i + 1) % n) for i in range(n))

    def edges(self) -> frozenset:
        return frozenset(self.hamiltonian_edges()) | self.diagonals

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return _cyclic_adjacent(u, v, self.n) or _pair(u, v) in self.diagonals

    def is_hamiltonian_edge(self, e) -> bool:
        u, v = e
        return u != v and _cyclic_adjacent(u, v, self.n) and 0 <= min(u, v) and max(u, v) < self.n

    def to_json(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in sorted(self.diagonals)]}

    @classmethod
    def from_json(cls, obj, check: bool = True) -> "Mop":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.from_pairs(obj["n"], obj["diagonals"], check=check)

    def __repr__(self) -> str:
        return f"Mop(n={self.n}, diagonals={sorted(self.diagonals)})"


@dataclass(frozen=True)
class SimpleGraph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        verts = frozenset(self.vertices)
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in verts or v not in verts:
                raise ValueError(f"edge {{{u}, {v}}} leaves the vertex set")
            e = _pair(u, v)
            if e in edges:
                raise ValueError(f"duplicate edge {{{u}, {v}}}")
            edges.add(e)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class DiagonalPartition:
    d: Edge
    g1: Mop
    g2: Mop
    map1: tuple
    map2: tuple
    ell: int


@dataclass(frozen=True)
class FaceApex:
    edge: Edge
    apex: int


def validate(m) -> str | None:
    """Return ``None`` if ``m`` is a valid mop, else a description of the
    first invariant it breaks."""
    n = m.n
    if not isinstance(n, int) or n < 3:
        return f"order must be an integer >= 3, got {n!r}"
    diags = []
    for d in m.diagonals:
        if len(d) != 2:
            return f"diagonal {d!r} is not a vertex pair"
        a, b = d
        if not (0 <= a < n and 0 <= b < n):
            return f"diagonal {{{a}, {b}}} has an endpoint outside 0..{n - 1}"
        if a == b:
            return f"diagonal {{{a}, {b}}} is a loop"
        diags.append(_pair(a, b))
    if len(diags) != n - 3:
        return f"expected {n - 3} diagonals, found {len(diags)}"
    for a, b in sorted(diags):
        if _cyclic_adjacent(a, b, n):
            return f"{{{a}, {b}}} joins cycle-adjacent vertices"
    # Laminar check: sort by left end, longer intervals first.
    stack: list = []
    for a, b in sorted(diags, key=lambda p: (p[0], -p[1])):
        while stack and stack[-1][1] <= a:
            stack.pop()
        if stack and b > stack[-1][1]:
            c, d = stack[-1]
            return f"diagonals {{{c}, {d}}} and {{{a}, {b}}} cross"
        stack.append((a, b))
    return None


def is_valid(m) -> bool:
    return validate(m) is None


def _check_vertex(m: Mop, v: int) -> None:
    if not (0 <= v < m.n):
        raise ValueError(f"vertex {v} out of range for order {m.n}")


def degree(m: Mop, v: int) -> int:
    _check_vertex(m, v)
    return m.degrees[v]


def closed_neighborhood(m: Mop, S) -> frozenset:
    out = set()
    nbrs = m.neighbors
    for v in S:
        _check_vertex(m, v)
        out.add(v)
        out.update(nbrs[v])
    return frozenset(out)


def residual(m: Mop, S) -> SimpleGraph:
    """The graph left after deleting the closed neighbourhood of ``S``."""
    gone = closed_neighborhood(m, S)
    keep = frozenset(range(m.n)) - gone
    edges = [e for e in m.edges() if e[0] in keep and e[1] in keep]
    return SimpleGraph(keep, frozenset(edges))


def degree_two_vertices(m: Mop) -> frozenset:
    return frozenset(v for v, d in enumerate(m.degrees) if d == 2)


def relabel(m: Mop, perm) -> Mop:
    """Apply a bijection ``perm[old] = new`` that preserves the boundary cycle."""
    return Mop._trusted(
        m.n, frozenset(_pair(perm[a], perm[b]) for a, b in m.diagonals)
    )


def rotate(m: Mop, r: int) -> tuple[Mop, tuple]:
    n = m.n
    perm = tuple((i + r) % n for i in range(n))
    return relabel(m, perm), perm


def reverse_orientation(m: Mop) -> tuple[Mop, tuple]:
    n = m.n
    perm = tuple((n - i) % n for i in range(n))
    return relabel(m, perm), perm


def _arc_submop(m: Mop, a: int, b: int) -> tuple[Mop, tuple]:
    """Sub-mop cut off by the chord {a, b} on the ascending arc a..b."""
    size = b - a + 1
    diags = frozenset(
        (u - a, v - a) for u, v in m.diagonals if a <= u and v <= b and (u, v) != (a, b)
    )
    return Mop._trusted(size, diags), tuple(range(a, b + 1))


def _outer_submop(m: Mop, a: int, b: int) -> tuple[Mop, tuple]:
    """Sub-mop on the complementary arc b..n-1, 0..a (labels kept ascending)."""
    verts = tuple(range(0, a + 1)) + tuple(range(b, m.n))
    shift = b - a - 1
    diags = []
    for u, v in m.diagonals:
        if (u, v) == (a, b) or a < u < b or a < v < b:
            continue
        nu = u if u <= a else u - shift
        nv = v if v <= a else v - shift
        diags.append((nu, nv))
    return Mop._trusted(len(verts), frozenset(diags)), verts


def diagonal_partition(m: Mop, d) -> DiagonalPartition:
    a, b = _pair(*d)
    if (a, b) not in m.diagonals:
        raise ValueError(f"{{{a}, {b}}} is not a diagonal")
    g1, map1 = _arc_submop(m, a, b)
    g2, map2 = _outer_submop(m, a, b)
    return DiagonalPartition((a, b), g1, g2, map1, map2, b - a)


def _hamiltonian_check(m: Mop, e) -> Edge:
    u, v = e
    if not m.is_hamiltonian_edge((u, v)):
        raise ValueError(f"{{{u}, {v}}} is not a Hamiltonian edge of a mop of order {m.n}")
    return _pair(u, v)


def _shrink(m: Mop, old_to_new: tuple, new_n: int, extra=()) -> Mop:
    diags = set()
    for a, b in list(m.diagonals) + list(extra):
        u, v = old_to_new[a], old_to_new[b]
        if u is None or v is None or u == v or _cyclic_adjacent(u, v, new_n):
            continue
        diags.add(_pair(u, v))
    return Mop._trusted(new_n, frozenset(diags))


def contract_hamiltonian_edge(m: Mop, e) -> tuple[Mop, tuple]:
    """Merge the endpoints of a boundary edge into one vertex.

    The merged vertex keeps the smaller label of the pair (label 0 for the
    wrap-around edge ``{0, n-1}``); the returned map sends both endpoints to it.
    """
    a, b = _hamiltonian_check(m, e)
    n = m.n
    if n == 3:
        raise ValueError("cannot contract an edge of a triangle")
    if (a, b) == (0, n - 1):
        mp = tuple(range(n - 1)) + (0,)
    else:
        mp = tuple(i if i <= a else i - 1 for i in range(n))
    return _shrink(m, mp, n - 1), mp


def remove_degree2_vertex(m: Mop, v: int) -> tuple[Mop, tuple]:
    _check_vertex(m, v)
    if m.n == 3:
        raise ValueError("cannot remove a vertex of a triangle")
    if m.degrees[v] != 2:
        raise ValueError(f"vertex {v} has degree {m.degrees[v]}, not 2")
    mp = tuple(None if i == v else (i if i < v else i - 1) for i in range(m.n))
    return _shrink(m, mp, m.n - 1), mp


def add_ear(m: Mop, e) -> tuple[Mop, tuple]:
    """Glue a new degree-2 vertex onto the boundary edge ``e``.

    For ``e = {i, i+1}`` the new vertex gets label ``i+1``; for the wrap-around
    edge ``{0, n-1}`` it gets label ``n``.
    """
    a, b = _hamiltonian_check(m, e)
    n = m.n
    if (a, b) == (0, n - 1):
        mp = tuple(range(n))
    else:
        mp = tuple(i if i <= a else i + 1 for i in range(n))
    diags = {_pair(mp[u], mp[v]) for u, v in m.diagonals}
    diags.add(_pair(mp[a], mp[b]))
    return Mop._trusted(n + 1, frozenset(diags)), mp


def fan(n: int) -> Mop:
    if n < 3:
        raise ValueError(f"a fan needs at least 3 vertices, got {n}")
    return Mop._trusted(n, frozenset((0, i) for i in range(2, n - 1)))


def apex_of_edge(m: Mop, e, side: Literal["ascending", "descending"] | None = None) -> FaceApex:
    """Third vertex of the interior triangle on one side of an edge.

    ``side="ascending"`` looks at the arc strictly between the endpoints in
    increasing label order, ``"descending"`` at the complementary arc. A
    boundary edge has only one interior side and ``side`` may be omitted.
    """
    u, v = e
    if not m.has_edge(u, v):
        raise ValueError(f"{{{u}, {v}}} is not an edge")
    a, b = _pair(u, v)
    n = m.n
    inner_empty = b - a == 1  # ascending arc has no vertex
    outer_empty = (a, b) == (0, n - 1)
    if side is None:
        if inner_empty:
            side = "descending"
        elif outer_empty:
            side = "ascending"
        else:
            raise ValueError("a diagonal has two faces; choose a side")
    if side not in ("ascending", "descending"):
        raise ValueError(f"unknown side {side!r}")
    if (side == "ascending" and inner_empty) or (side == "descending" and outer_empty):
        raise ValueError(f"edge {{{a}, {b}}} has no face on the {side} side")
    nb = set(m.neighbors[b])
    for w in m.neighbors[a]:
        if w in nb and ((a < w < b) == (side == "ascending")):
            return FaceApex((a, b), w)
    raise InvalidMop(f"no triangle on the {side} side of {{{a}, {b}}}")


def faces(m: Mop) -> frozenset:
    """All interior triangles as sorted vertex triples."""
    out = set()
    n = m.n
    for a, b in m.edges():
        sides = []
        if b - a > 1:
            sides.append("ascending")
        if (a, b) != (0, n - 1):
            sides.append("descending")
        for side in sides:
            w = apex_of_edge(m, (a, b), side).apex
            out.add(tuple(sorted((a, b, w))))
    return frozenset(out)
