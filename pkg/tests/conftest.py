import itertools

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mopiso.core import residual
from mopiso.gen import random_mop

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def mops(draw, min_n=3, max_n=40):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**64 - 1))
    return random_mop(n, seed)


def naive_star(vertices, edges, k):
    """K_{1,k+1} subgraph search by trying every centre and leaf set."""
    for c in vertices:
        nbrs = [w for w in vertices if (min(c, w), max(c, w)) in edges]
        for _ in itertools.combinations(nbrs, k + 1):
            return True
    return False


def naive_min_isolating(m, k):
    """Smallest K_{1,k+1}-isolating set by brute force over all subsets."""
    for r in range(m.n + 1):
        for S in itertools.combinations(range(m.n), r):
            g = residual(m, S)
            if not naive_star(sorted(g.vertices), g.edges, k):
                return r
    raise AssertionError("V(m) always isolates")


def naive_min_dominating(m):
    nbrs = m.neighbors
    for r in range(m.n + 1):
        for S in itertools.combinations(range(m.n), r):
            seen = set(S)
            for v in S:
                seen.update(nbrs[v])
            if len(seen) == m.n:
                return r
    raise AssertionError("unreachable")


@pytest.fixture
def say(capsys):
    """Print straight to the terminal, bypassing capture."""

    def _say(line):
        with capsys.disabled():
            print(line)

    return _say
