"""Instance sources: exhaustive enumeration, uniform sampling, named families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import Mop, fan

ENUMERATION_CAP = 13

FAMILY_NAMES = ("Fan", "Gt", "Ht", "A15", "Bt", "MaxDeg2", "MinDeg2")
_MIN_PARAM = {"Fan": 3, "Gt": 2, "Ht": 2, "Bt": 2, "MaxDeg2": 3, "MinDeg2": 4}


@lru_cache(maxsize=None)
def _triangulations(size: int) -> tuple:
    """All diagonal sets of the polygon 0..size-1, each as a tuple of pairs.

    Split on the apex k of the triangle sitting on edge {0, size-1};
    apexes ascend, then left halves, then right halves.
    """
    if size <= 3:
        return ((),)
    out = []
    last = size - 1
    for k in range(1, last):
        left = _triangulations(k + 1)
        right = _triangulations(size - k)
        cut = []
        if k >= 2:
            cut.append((0, k))
        if last - k >= 2:
            cut.append((k, last))
        for L in left:
            for R in right:
                shifted = tuple((a + k, b + k) for a, b in R)
                out.append(L + shifted + tuple(cut))
    return tuple(out)


def enumerate_mops(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Mop]:
    """Every triangulation of the labelled convex n-gon, once each."""
    if n < 3 or n > cap:
        raise ValueError(f"enumeration supports 3 <= n <= {cap}, got {n}")
    for diags in _triangulations(n):
        yield Mop._trusted(n, frozenset(diags))


def catalan(m: int) -> int:
    """Catalan number by the convolution recurrence."""
    c = [1]
    for i in range(1, m + 1):
        c.append(sum(c[j] * c[i - 1 - j] for j in range(i)))
    return c[m]


def _lukasiewicz_word(m: int, rng: np.random.Generator) -> np.ndarray:
    # m internal nodes (+1) and m+1 leaves (-1) shuffled; the cycle lemma
    # picks the unique rotation that is a valid preorder code.
    steps = np.concatenate([np.ones(m, dtype=np.int64), -np.ones(m + 1, dtype=np.int64)])
    steps = rng.permutation(steps)
    prefix = np.cumsum(steps)
    start = int(np.argmin(prefix)) + 1
    return np.roll(steps, -start)


def _word_to_diagonals(word: np.ndarray, n: int) -> frozenset:
    # Preorder decode: an internal node on polygon arc [lo, hi] puts its
    # apex at lo + 1 + (size of left subtree).
    sizes = np.zeros(len(word), dtype=np.int64)
    # subtree internal-node counts, computed right to left with a stack
    stack: list = []
    for pos in range(len(word) - 1, -1, -1):
        if word[pos] < 0:
            stack.append((pos, 0))
        else:
            (_, a), (_, b) = stack.pop(), stack.pop()
            sizes[pos] = 1 + a + b
            stack.append((pos, sizes[pos]))
    diags = []
    todo = [(0, 0, n - 1)]
    while todo:
        pos, lo, hi = todo.pop()
        if word[pos] < 0:
            continue
        left_pos = pos + 1
        left_size = int(sizes[left_pos]) if word[left_pos] > 0 else 0
        right_pos = left_pos + 2 * left_size + 1
        k = lo + 1 + left_size
        if k - lo >= 2:
            diags.append((lo, k))
        if hi - k >= 2:
            diags.append((k, hi))
        todo.append((left_pos, lo, k))
        todo.append((right_pos, k, hi))
    return frozenset(diags)


def random_mop(n: int, seed: int) -> Mop:
    """A uniformly random triangulation of the labelled n-gon.

    Deterministic in ``(n, seed)``.
    """
    if n < 3:
        raise ValueError(f"order must be >= 3, got {n}")
    rng = np.random.default_rng(np.uint64(seed))
    word = _lukasiewicz_word(n - 2, rng)
    return Mop._trusted(n, _word_to_diagonals(word, n))


@dataclass(frozen=True)
class FamilySpec:
    name: str
    param: int = 0

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {FAMILY_NAMES}")
        lo = _MIN_PARAM.get(self.name)
        if lo is not None and self.param < lo:
            raise ValueError(f"{self.name} needs param >= {lo}, got {self.param}")


def _fan_join(blocks: list) -> Mop:
    """Concatenate boundary blocks and triangulate the joining polygon.

    ``blocks`` hold (block_size, local diagonals). Each block is glued to the
    joining polygon along the edge between its first and last position; the
    joining polygon is fanned from its lowest label.
    """
    diags = set()
    joint = []
    offset = 0
    for size, local in blocks:
        diags.update((a + offset, b + offset) for a, b in local)
        first, last = offset, offset + size - 1
        diags.add((first, last))
        joint += [first, last]
        offset += size
    hub = joint[0]
    for v in joint[2:-1]:
        diags.add((hub, v))
    return Mop._trusted(offset, frozenset(diags))


def _five_fan_block(order: str) -> tuple:
    # A fan of order 5 with centre o and path a-b-c-d, written in the given
    # boundary order; returns its diagonals (centre to b and c) locally.
    pos = {ch: i for i, ch in enumerate(order)}
    local = {tuple(sorted((pos["o"], pos["b"]))), tuple(sorted((pos["o"], pos["c"])))}
    return (5, frozenset(local))


def _gt(t: int) -> Mop:
    # glue each fan along (degree-2 end d, its neighbour c): boundary d,o,a,b,c
    block = _five_fan_block("doabc")
    return _fan_join([block] * t)


def _ht(t: int) -> Mop:
    # glue each fan along its two degree-3 vertices c, b: boundary c,d,o,a,b
    block = _five_fan_block("cdoab")
    return _fan_join([block] * t)


def _a15_block() -> tuple:
    # Boundary: y3 y4 y0 y1 y2 | z2 z3 z4 z0 z1 | x2 x1 x0 x4 x3
    names = "y3 y4 y0 y1 y2 z2 z3 z4 z0 z1 x2 x1 x0 x4 x3".split()
    pos = {s: i for i, s in enumerate(names)}
    pairs = [
        ("x0", "x2"), ("x0", "x3"), ("y0", "y2"), ("y0", "y3"), ("z0", "z2"), ("z0", "z3"),
        ("x2", "x3"), ("y2", "y3"), ("z1", "z2"),
    ]
    diags = {tuple(sorted((pos[a], pos[b]))) for a, b in pairs}
    # joining hexagon y3 y2 z2 z1 x2 x3 fanned from y3
    for other in ("z2", "z1", "x2"):
        diags.add(tuple(sorted((pos["y3"], pos[other]))))
    return 15, frozenset(diags)


def _bt(t: int) -> Mop:
    size, local = _a15_block()
    # each copy is glued along x3 y3, i.e. its last and first boundary position
    return _fan_join([(size, local)] * t)


def _max_deg2(p: int) -> Mop:
    # base fan on x_1..x_p with an ear y_i on every boundary edge x_i x_{i+1}
    base = fan(p)
    diags = {(2 * a, 2 * b) for a, b in base.diagonals}
    for i in range(p - 1):
        diags.add((2 * i, 2 * i + 2))
    diags.add((0, 2 * p - 2))
    return Mop._trusted(2 * p, frozenset(diags))


def _min_deg2(n: int) -> Mop:
    # zigzag x2xn, xnx3, x3x_{n-1}, ... in 0-based labels
    lo, hi = 1, n - 1
    diags = [(lo, hi)]
    move_lo = True
    while len(diags) < n - 3:
        if move_lo:
            lo += 1
        else:
            hi -= 1
        move_lo = not move_lo
        diags.append((lo, hi))
    return Mop._trusted(n, frozenset(diags))


def build_family(spec: FamilySpec) -> Mop:
    name, p = spec.name, spec.param
    if name == "Fan":
        return fan(p)
    if name == "Gt":
        return _gt(p)
    if name == "Ht":
        return _ht(p)
    if name == "A15":
        size, local = _a15_block()
        return Mop._trusted(size, local)
    if name == "Bt":
        return _bt(p)
    if name == "MaxDeg2":
        return _max_deg2(p)
    return _min_deg2(p)
