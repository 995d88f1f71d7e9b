"""Constructive K_{1,2}-isolating sets for mops.

Two inductive constructions are implemented:

* ``isolate_theorem1`` builds a set of size at most n/5 (n >= 5).
* ``isolate_theorem2`` builds a set of size at most (n + n2)/6 when
  n2 <= n/3 and at most (n - n2)/3 otherwise, n2 being the number of
  degree-2 vertices.

Both cut off a piece holding 5 to 8 boundary edges along a diagonal, read
the piece as x_1..x_{l+1}, pick vertices from it and recurse on the rest.
Recursion runs as a loop over a mutable copy of the instance that keeps the
caller's labels; every step records what it adds and which vertices it merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import Mop, degree_two_vertices, relabel
from .solvers import IsolatingSet, dominating_by_coloring, iota_exact


class ImpossibleInstance(RuntimeError):
    """No diagonal in the requested window. Never raised for a valid mop in
    the windows [4, 6] (n >= 8) and [5, 8] (n >= 10)."""


class CapExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class PartitionChoice:
    """A diagonal cutting off ``ell`` boundary edges of ``mop``.

    The cut-off side is read as x_1..x_{ell+1} with x_i at label
    ``start + step*(i-1) mod n`` (``step`` is +1 or -1), so the diagonal is
    x_1 x_{ell+1}. ``j`` is the position of the apex of the triangle on the
    diagonal inside the cut-off side.
    """

    d: tuple
    ell: int
    j: int
    start: int
    step: int
    mop: Mop

    def x(self, i: int) -> int:
        return (self.start + self.step * (i - 1)) % self.mop.n

    def pos(self, v: int) -> int:
        """0-based position of label ``v`` along x_1, x_2, ..."""
        return (self.step * (v - self.start)) % self.mop.n

    @property
    def order(self) -> tuple:
        return tuple(self.x(i) for i in range(1, self.mop.n + 1))

    def oriented(self) -> Mop:
        """The instance relabelled so that x_i has label i-1."""
        return relabel(self.mop, [self.pos(v) for v in range(self.mop.n)])


@dataclass(frozen=True)
class TraceStep:
    case: str
    n: int
    added: tuple

    def to_json(self) -> dict:
        return {"case": self.case, "n": self.n, "added": list(self.added)}


@dataclass(frozen=True)
class ConstructionTrace:
    steps: tuple = ()

    def replay(self) -> frozenset:
        out = set()
        for s in self.steps:
            out.update(s.added)
        return frozenset(out)

    def cases(self) -> list:
        return [s.case for s in self.steps]

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


class _Polygon:
    """Mutable working copy of a mop keyed by the caller's labels.

    ``cyc`` lists the boundary in order (index = label in the current
    sub-instance) and ``adj`` maps each live vertex to its neighbour set.
    Cutting and contracting touch only the vertices involved.
    """

    __slots__ = ("cyc", "adj")

    def __init__(self, cyc: list, adj: dict):
        self.cyc = cyc
        self.adj = adj

    @classmethod
    def of(cls, m: Mop) -> "_Polygon":
        return cls(list(range(m.n)), {v: set(row) for v, row in enumerate(m.neighbors)})

    @property
    def n(self) -> int:
        return len(self.cyc)

    def to_mop(self) -> Mop:
        pos = {v: i for i, v in enumerate(self.cyc)}
        n = len(self.cyc)
        diags = set()
        for u, i in pos.items():
            for v in self.adj[u]:
                k = pos[v]
                if k > i + 1 and not (i == 0 and k == n - 1):
                    diags.add((i, k))
        return Mop._trusted(n, frozenset(diags))

    def walk(self, start: int, step: int) -> list:
        """Boundary listed from index ``start`` in direction ``step``."""
        cyc = self.cyc
        if step > 0:
            return cyc[start:] + cyc[:start]
        return cyc[start::-1] + cyc[:start:-1]

    def drop(self, vertices) -> None:
        adj = self.adj
        for w in vertices:
            for nb in adj.pop(w):
                other = adj.get(nb)
                if other is not None:
                    other.discard(w)

    def merge(self, keep: int, gone: int) -> None:
        adj = self.adj
        adj[keep].discard(gone)
        for nb in adj.pop(gone):
            if nb == keep:
                continue
            adj[nb].discard(gone)
            adj[nb].add(keep)
            adj[keep].add(nb)


@dataclass(frozen=True)
class _Cut:
    # x_i = cyc[(start + step*(i-1)) % n]
    start: int
    step: int
    ell: int
    j: int

    def x(self, p: _Polygon, i: int) -> int:
        return p.cyc[(self.start + self.step * (i - 1)) % len(p.cyc)]


def _cut(p: _Polygon, start: int, step: int, ell: int) -> _Cut:
    n = p.n
    first = p.cyc[start % n]
    last = p.cyc[(start + step * ell) % n]
    around = p.adj[first]
    for i in range(2, ell + 1):
        w = p.cyc[(start + step * (i - 1)) % n]
        if w in around and last in p.adj[w]:
            return _Cut(start % n, step, ell, i)
    raise ImpossibleInstance(f"no triangle on chord {{{first}, {last}}}")


def _find(p: _Polygon, lo: int, hi: int, prefer: str) -> _Cut:
    if prefer not in ("smallest", "largest"):
        raise ValueError(f"prefer must be 'smallest' or 'largest', got {prefer!r}")
    cyc, adj, n = p.cyc, p.adj, p.n
    sizes = range(max(lo, 2), min(hi, n - 2) + 1)
    for ell in (sizes if prefer == "smallest" else reversed(sizes)):
        # cyc[s + ell - n] is cyc[(s + ell) % n] without the modulo
        hits = [s for s in range(n) if cyc[s + ell - n] in adj[cyc[s]]]
        if hits:
            # key (a, b, side) with a < b the diagonal's positions; side 1
            # when the window wraps past the end of the boundary
            start = min(hits, key=lambda s: (s, s + ell, 0) if s + ell < n else (s + ell - n, s, 1))
            return _cut(p, start, 1, ell)
    raise ImpossibleInstance(f"no diagonal with {lo}..{hi} boundary edges on one side (n={n})")


def find_partition_diagonal(m: Mop, lo: int, hi: int, prefer: str = "smallest") -> PartitionChoice:
    """Find a diagonal one of whose sides carries between ``lo`` and ``hi``
    boundary edges.

    Ties break on the number of edges (smallest first, or largest first
    with ``prefer="largest"``), then on the diagonal, then ascending side first.
    """
    c = _find(_Polygon.of(m), lo, hi, prefer)
    first, last = c.start, (c.start + c.ell) % m.n
    return PartitionChoice(tuple(sorted((first, last))), c.ell, c.j, c.start, c.step, m)


def _mirror(p: _Polygon, c: _Cut) -> _Cut:
    # x_i <-> x_{ell+2-i}
    return _cut(p, c.start + c.step * c.ell, -c.step, c.ell)


def _settle(p: _Polygon, c: _Cut) -> tuple[_Cut, int]:
    """Mirror so the apex sits in the first half, then shrink the window
    while the apex leaves at least five boundary edges on its far side.

    Returns the final cut and the number of shrink steps taken.
    """
    shifts = 0
    while True:
        if c.ell >= 6 and c.j > c.ell + 2 - c.j:
            c = _mirror(p, c)
        if c.ell >= 6 and c.j <= c.ell - 4:
            c = _cut(p, c.start + c.step * (c.j - 1), c.step, c.ell - c.j + 1)
            shifts += 1
            continue
        return c, shifts


def _near_isolated(p: _Polygon, c: _Cut, ell: int, S) -> int:
    """Vertices of x_1..x_{ell+1} left by N[S] in that piece, or -1 if one of
    them still has two neighbours left."""
    piece = {c.x(p, i) for i in range(1, ell + 2)}
    gone = set(S)
    for v in S:
        gone |= p.adj[v] & piece
    left = piece - gone
    if any(len(p.adj[v] & left) > 1 for v in left):
        return -1
    return len(left)


def _remove_near(p: _Polygon, c: _Cut, ell: int) -> None:
    """Keep x_1, x_{ell+1}, ..., x_n, relisted from x_1 in the cut's direction."""
    order = p.walk(c.start, c.step)
    p.drop(order[1:ell])
    p.cyc = order[:1] + order[ell:]


def isolate_small(m: Mop, cap: int = 2) -> IsolatingSet:
    """Minimum K_{1,2}-isolating set of a mop with at most 10 vertices."""
    if m.n > 10:
        raise ValueError(f"isolate_small handles n <= 10, got {m.n}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    found = iota_exact(m, 1, cap)
    if found is None:
        raise CapExhausted(f"no K_(1,2)-isolating set of size <= {cap} (n={m.n})")
    return found


# -- frame machinery ---------------------------------------------------------
#
# A step inspects the polygon and either finishes (_Done) or shrinks the
# polygon in place to the child instance (_Shrunk). Labels never change, so
# lifting a child's set is the identity except where a contraction merged
# ``gone`` into ``keep``: then ``keep`` in the child's set stands for both.


@dataclass
class _Done:
    case: str
    members: frozenset
    shifts: int = 0


@dataclass
class _Shrunk:
    case: str
    pick: int  # added unless the merged vertex is already in the child's set
    merged: tuple | None = None  # (keep, gone)
    shifts: int = 0


def _drive(m: Mop, step: Callable) -> tuple[frozenset, ConstructionTrace]:
    p = _Polygon.of(m)
    frames = []
    while True:
        n = p.n
        out = step(p)
        frames.append((out, n))
        if isinstance(out, _Done):
            break

    S = set(frames[-1][0].members)
    added_here = [set(S)]
    for out, _ in reversed(frames[:-1]):
        if out.merged is not None and out.merged[0] in S:
            S.add(out.merged[1])
            added = set()
        else:
            added = {out.pick}
        S |= added
        added_here.append(added)
    added_here.reverse()

    steps = []
    for depth, ((out, n), added) in enumerate(zip(frames, added_here)):
        top = set(added)
        for up in range(depth - 1, -1, -1):
            merged = frames[up][0].merged
            if merged is not None and merged[0] in top:
                top.add(merged[1])
        steps.extend(TraceStep("re-partition", n, ()) for _ in range(out.shifts))
        steps.append(TraceStep(out.case, n, tuple(sorted(top))))
    return frozenset(S), ConstructionTrace(tuple(steps))


def _base(p: _Polygon, cap: int) -> _Done:
    found = isolate_small(p.to_mop(), cap)
    return _Done("base", frozenset(p.cyc[v] for v in found.members))


def _contract(case: str, p: _Polygon, c: _Cut, shifts: int) -> _Shrunk:
    """Cut off x_2..x_5, merge x_6 into x_1 (standing for y) and recurse.

    If the child's set uses y, it is replaced by x_1 and x_6; otherwise the
    apex x_j, which sees both x_1 and x_6, is added.
    """
    x1, x6, xj = c.x(p, 1), c.x(p, 6), c.x(p, c.j)
    assert _near_isolated(p, c, 5, (x1, x6)) >= 0
    assert 0 <= _near_isolated(p, c, 5, (xj,)) <= 2
    _remove_near(p, c, 5)
    p.merge(x1, x6)
    del p.cyc[1]
    return _Shrunk(case, xj, (x1, x6), shifts)


def _apex(case: str, p: _Polygon, c: _Cut, shifts: int, base_cutoff: int) -> _Done | _Shrunk:
    """Keep the far side of the diagonal and add the apex of its triangle.

    When the far side has at most ``base_cutoff`` vertices the apex alone
    isolates everything.
    """
    xj = c.x(p, c.j)
    assert _near_isolated(p, c, c.ell, (xj,)) >= 0
    if p.n - c.ell + 1 <= base_cutoff:
        return _Done(case, frozenset({xj}), shifts)
    _remove_near(p, c, c.ell)
    return _Shrunk(case, xj, None, shifts)


def _theorem1_step(prefer: str) -> Callable:
    def step(p: _Polygon):
        if p.n <= 9:
            return _base(p, 1)
        c, shifts = _settle(p, _find(p, 5, 8, prefer))
        if c.ell == 5:
            return _contract("ell=5", p, c, shifts)
        assert c.j in {6: (3, 4), 7: (4,), 8: (5,)}[c.ell], (c.ell, c.j)
        cutoff = {6: 0, 7: 4, 8: 4}[c.ell]
        return _apex(f"ell={c.ell}", p, c, shifts, cutoff)

    return step


def _theorem2_step(prefer: str) -> Callable:
    def step(p: _Polygon):
        if p.n <= 10:
            return _base(p, 2)
        c, shifts = _settle(p, _find(p, 5, 8, prefer))
        if c.ell != 5:
            assert c.j in {6: (3, 4), 7: (4,), 8: (5,)}[c.ell], (c.ell, c.j)
            return _apex(f"ell={c.ell}", p, c, shifts, 0)
        return _five_edge_step(p, c, shifts)

    return step


def _far_degree(p: _Polygon, v: int, near: set) -> int:
    return len(p.adj[v]) - len(p.adj[v] & near)


def _five_edge_step(p: _Polygon, c: _Cut, shifts: int):
    """Five boundary edges cut off, with degree-2 bookkeeping on the far side."""
    near = {c.x(p, i) for i in range(2, 6)}
    if _far_degree(p, c.x(p, 1), near) == 2:
        c = _mirror(p, c)
    x1, x6 = c.x(p, 1), c.x(p, 6)
    d1, d6 = _far_degree(p, x1, near), _far_degree(p, x6, near)

    if d1 + d6 == 5:
        # x_6 is an ear of the far side and x_1 becomes one after it goes,
        # so x_7 x_n is an edge and x_1..x_6 can all be dropped.
        xj = c.x(p, c.j)
        assert c.x(p, p.n) in p.adj[c.x(p, 7)]
        order = p.walk(c.start, c.step)
        p.drop(order[:6])
        p.cyc = order[6:]
        return _Shrunk("subclaim-4.1", xj, None, shifts)

    # Contracting x_1 x_6 lowers only the degree of the apex w of the far
    # side's triangle on x_1 x_6; it becomes a new ear iff its degree is 3.
    (w,) = (p.adj[x1] & p.adj[x6]) - near
    if len(p.adj[w]) != 3:
        return _contract("contraction", p, c, shifts)

    # A new ear appeared next to x_1 x_6; make it x_7.
    if w != c.x(p, 7):
        assert w == c.x(p, p.n), w
        c = _mirror(p, c)
    assert c.x(p, 8) in p.adj[c.x(p, 1)]
    pick = c.x(p, 6) if c.j == 2 else c.x(p, 1)
    assert _near_isolated(p, c, 7, (pick,)) >= 0
    _remove_near(p, c, 7)
    return _Shrunk("re-partition", pick, None, shifts)


def theorem1_bound(n: int) -> int:
    return n // 5


def theorem2_bound(n: int, n2: int) -> int:
    return (n + n2) // 6 if 3 * n2 <= n else (n - n2) // 3


def isolate_theorem1(m: Mop, *, prefer: str = "smallest") -> tuple[IsolatingSet, ConstructionTrace]:
    """A K_{1,2}-isolating set of size at most n/5."""
    if m.n < 5:
        raise ValueError(f"needs n >= 5, got {m.n}")
    members, trace = _drive(m, _theorem1_step(prefer))
    return IsolatingSet(members, 1, "theorem1"), trace


def _strip_ears(m: Mop) -> tuple[Mop, list]:
    """Delete every degree-2 vertex.

    The degree-2 vertices are pairwise non-adjacent, so deleting them one at
    a time in any order gives the same mop as deleting them together.
    """
    ears = degree_two_vertices(m)
    back = [v for v in range(m.n) if v not in ears]
    new = {v: i for i, v in enumerate(back)}
    k = len(back)
    diags = set()
    for a, b in m.diagonals:
        if a in new and b in new:
            u, v = new[a], new[b]
            if v - u not in (1, k - 1):
                diags.add((u, v))
    return Mop._trusted(k, frozenset(diags)), back


def isolate_theorem2(m: Mop, *, prefer: str = "smallest") -> tuple[IsolatingSet, ConstructionTrace]:
    """A K_{1,2}-isolating set within the degree-2 sensitive bound."""
    if m.n < 5:
        raise ValueError(f"needs n >= 5, got {m.n}")
    n2 = len(degree_two_vertices(m))
    if 3 * n2 > m.n:
        core_mop, back = _strip_ears(m)
        members = frozenset(back[v] for v in dominating_by_coloring(core_mop))
        trace = ConstructionTrace((TraceStep("high-n2-branch", m.n, tuple(sorted(members))),))
        return IsolatingSet(members, 1, "theorem2-high"), trace
    members, trace = _drive(m, _theorem2_step(prefer))
    return IsolatingSet(members, 1, "theorem2-low"), trace
