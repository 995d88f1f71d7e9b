"""Fixed-cardinality subset search over vertex bitsets.

A candidate set S is accepted when every vertex left outside N[S] has fewer
than ``need`` neighbours among the other leftover vertices. ``need = k + 1``
tests for K_{1,k+1}; ``need = 0`` rejects any leftover vertex (domination).

Three interchangeable backends scan the r-subsets of 0..n-1 in
lexicographic order and report the first accepted one:

* ``numba``  -- compiled loop with incremental prefix ORs (n <= 64)
* ``numpy``  -- vectorised over chunks of combinations (n <= 64)
* ``python`` -- arbitrary-width Python ints, used above 64 vertices

Set ``MOPISO_NO_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

_DISABLED = os.environ.get("MOPISO_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by MOPISO_NO_NUMBA")
    from numba import njit
except ImportError:
    HAVE_NUMBA = False
else:
    HAVE_NUMBA = True

WORD = 64
CHUNK = 1 << 15


def masks(neighbors) -> tuple[np.ndarray, np.ndarray]:
    """Closed and open neighbourhood rows as uint64 bitsets."""
    n = len(neighbors)
    if n > WORD:
        raise ValueError(f"bitset rows hold at most {WORD} vertices, got {n}")
    closed = np.zeros(n, dtype=np.uint64)
    opened = np.zeros(n, dtype=np.uint64)
    for v, row in enumerate(neighbors):
        bits = 0
        for w in row:
            bits |= 1 << w
        opened[v] = bits
        closed[v] = bits | (1 << v)
    return closed, opened


def _full(n: int) -> np.uint64:
    return np.uint64((1 << n) - 1)


def _accepts_numpy(R: np.ndarray, opened: np.ndarray, n: int, need: int) -> np.ndarray:
    bad = np.zeros(R.shape, dtype=bool)
    for v in range(n):
        present = ((R >> np.uint64(v)) & np.uint64(1)).astype(bool)
        if need <= 0:
            bad |= present
        else:
            bad |= present & (np.bitwise_count(opened[v] & R) >= need)
    return ~bad


def search_numpy(closed: np.ndarray, opened: np.ndarray, n: int, r: int, need: int):
    full = _full(n)
    if r == 0:
        ok = _accepts_numpy(np.array([full], dtype=np.uint64), opened, n, need)
        return () if ok[0] else None
    if r > n:
        return None
    combos_iter = itertools.combinations(range(n), r)
    while True:
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos_iter, CHUNK)), dtype=np.int64
        )
        if flat.size == 0:
            return None
        combos = flat.reshape(-1, r)
        dom = np.bitwise_or.reduce(closed[combos], axis=1)
        ok = _accepts_numpy(full & ~dom, opened, n, need)
        hits = np.flatnonzero(ok)
        if hits.size:
            return tuple(int(x) for x in combos[hits[0]])


def search_python(neighbors, r: int, need: int):
    n = len(neighbors)
    opened = [sum(1 << w for w in row) for row in neighbors]
    closed = [bits | (1 << v) for v, bits in enumerate(opened)]
    full = (1 << n) - 1

    def accepts(R: int) -> bool:
        rest = R
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if need <= 0 or (opened[v] & R).bit_count() >= need:
                return False
            rest ^= low
        return True

    for combo in itertools.combinations(range(n), r):
        dom = 0
        for v in combo:
            dom |= closed[v]
        if accepts(full & ~dom):
            return combo
    return None


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _popcount(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True, nogil=True)
    def _accepts_nb(R, opened, n, need):
        one = np.uint64(1)
        for v in range(n):
            if (R >> np.uint64(v)) & one:
                if need <= 0 or _popcount(opened[v] & R) >= need:
                    return False
        return True

    @njit(cache=True, nogil=True)
    def _search_nb(closed, opened, n, r, need, full, out):
        if r == 0:
            return _accepts_nb(full, opened, n, need)
        if r > n:
            return False
        c = np.empty(r, dtype=np.int64)
        pref = np.zeros(r + 1, dtype=np.uint64)
        for i in range(r):
            c[i] = i
            pref[i + 1] = pref[i] | closed[i]
        while True:
            if _accepts_nb(full & ~pref[r], opened, n, need):
                for i in range(r):
                    out[i] = c[i]
                return True
            i = r - 1
            while i >= 0 and c[i] == n - r + i:
                i -= 1
            if i < 0:
                return False
            c[i] += 1
            pref[i + 1] = pref[i] | closed[c[i]]
            for j in range(i + 1, r):
                c[j] = c[j - 1] + 1
                pref[j + 1] = pref[j] | closed[c[j]]


def search_numba(closed: np.ndarray, opened: np.ndarray, n: int, r: int, need: int):
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend unavailable")
    out = np.empty(max(r, 1), dtype=np.int64)
    found = _search_nb(closed, opened, n, r, need, _full(n), out)
    if not found:
        return None
    return tuple(int(x) for x in out[:r])


def default_backend(n: int) -> str:
    if n > WORD:
        return "python"
    return "numba" if HAVE_NUMBA else "numpy"


class SubsetSearch:
    """Precomputed bitsets for one graph; ``first(r, need)`` runs one scan."""

    def __init__(self, neighbors, backend: str | None = None):
        self.neighbors = neighbors
        self.n = len(neighbors)
        self.backend = backend or default_backend(self.n)
        if self.backend not in ("numba", "numpy", "python"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend != "python":
            self.closed, self.opened = masks(neighbors)

    def first(self, r: int, need: int):
        if self.backend == "numba":
            return search_numba(self.closed, self.opened, self.n, r, need)
        if self.backend == "numpy":
            return search_numpy(self.closed, self.opened, self.n, r, need)
        return search_python(self.neighbors, r, need)
