import itertools
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mops
from mopiso.constructive import (
    CapExhausted,
    ConstructionTrace,
    ImpossibleInstance,
    TraceStep,
    find_partition_diagonal,
    isolate_small,
    isolate_theorem1,
    isolate_theorem2,
    theorem1_bound,
    theorem2_bound,
)
from mopiso.core import degree_two_vertices, fan
from mopiso.gen import FamilySpec, build_family, enumerate_mops, random_mop
from mopiso.harness import random_corpus
from mopiso.solvers import iota_exact, is_isolating_set

CASES = {
    "base", "ell=5", "ell=6", "ell=7", "ell=8",
    "subclaim-4.1", "contraction", "re-partition", "high-n2-branch",
}


def family(name, param=0):
    return build_family(FamilySpec(name, param))


class TestPartitionDiagonal:
    def test_fan10(self):
        c = find_partition_diagonal(fan(10), 5, 8)
        # {0,5} cuts 5 edges on both sides; the ascending side 0..5 wins and
        # its triangle on {0,5} has apex 4 = x_5
        assert (c.d, c.ell, c.j) == ((0, 5), 5, 5)
        assert c.order[:6] == (0, 1, 2, 3, 4, 5)

    def test_largest_preference(self):
        c = find_partition_diagonal(fan(12), 5, 8, prefer="largest")
        assert c.ell == 8

    def test_impossible(self):
        with pytest.raises(ImpossibleInstance):
            find_partition_diagonal(fan(6), 5, 8)

    def test_bad_preference(self):
        with pytest.raises(ValueError):
            find_partition_diagonal(fan(10), 5, 8, prefer="middle")

    @pytest.mark.parametrize("n", range(8, 12))
    def test_windows_exist(self, n):
        for m in enumerate_mops(n):
            assert 4 <= find_partition_diagonal(m, 4, 6).ell <= 6
            if n >= 10:
                assert 5 <= find_partition_diagonal(m, 5, 8).ell <= 8

    @given(mops(min_n=10, max_n=200), st.sampled_from(["smallest", "largest"]))
    def test_orientation(self, m, prefer):
        c = find_partition_diagonal(m, 5, 8, prefer)
        o = c.oriented()
        # after relabelling, the piece is x_1..x_{ell+1} = 0..ell
        assert (0, c.ell) in o.diagonals
        assert o.has_edge(0, c.j - 1) and o.has_edge(c.j - 1, c.ell)
        assert 2 <= c.j <= c.ell
        assert c.d in m.diagonals


class TestSmall:
    def test_fan5(self):
        assert isolate_small(fan(5), 1).members == {0}

    @pytest.mark.parametrize("n", [4, 9])
    def test_fans_need_one(self, n):
        assert len(isolate_small(fan(n), 1)) == 1

    def test_order_ten_fits_two(self):
        assert len(isolate_small(family("Gt", 2), 2)) == 2

    def test_cap_exhausted(self):
        with pytest.raises(CapExhausted):
            isolate_small(family("Gt", 2), 1)

    def test_rejects(self):
        with pytest.raises(ValueError):
            isolate_small(fan(11))
        with pytest.raises(ValueError):
            isolate_small(fan(5), 0)


class TestConstructions:
    def test_fan5(self):
        S, trace = isolate_theorem1(fan(5))
        assert len(S) == 1 and trace.cases() == ["base"]

    def test_gt4_is_tight(self):
        m = family("Gt", 4)
        S, _ = isolate_theorem1(m)
        assert len(S) == 4 and is_isolating_set(m, S.members, 1)
        assert S.provenance == "theorem1"

    def test_ht4(self):
        m = family("Ht", 4)
        S, trace = isolate_theorem2(m)
        assert len(S) <= 4 and is_isolating_set(m, S.members, 1)
        assert trace.cases() == ["high-n2-branch"] and S.provenance == "theorem2-high"

    def test_max_deg2_high_branch(self):
        m = family("MaxDeg2", 6)
        S, _ = isolate_theorem2(m)
        assert len(S) <= (12 - 6) // 3 and is_isolating_set(m, S.members, 1)

    def test_low_branch_provenance(self):
        S, _ = isolate_theorem2(random_mop(60, 1))
        assert S.provenance == "theorem2-low"

    @pytest.mark.parametrize("fn", [isolate_theorem1, isolate_theorem2])
    def test_small_orders_rejected(self, fn):
        with pytest.raises(ValueError):
            fn(fan(4))

    @pytest.mark.parametrize("n", range(5, 11))
    def test_enumerated_against_exact(self, n):
        for m in enumerate_mops(n):
            best = len(iota_exact(m, 1))
            n2 = len(degree_two_vertices(m))
            for fn, bound in ((isolate_theorem1, n // 5), (isolate_theorem2, theorem2_bound(n, n2))):
                S, trace = fn(m)
                assert is_isolating_set(m, S.members, 1)
                assert best <= len(S) <= bound
                assert trace.replay() == S.members

    def test_families_up_to_thirty(self):
        specs = (
            [FamilySpec("Fan", n) for n in range(5, 31)]
            + [FamilySpec(name, t) for name in ("Gt", "Ht") for t in range(2, 7)]
            + [FamilySpec("A15"), FamilySpec("Bt", 2)]
            + [FamilySpec("MaxDeg2", p) for p in range(3, 16)]
            + [FamilySpec("MinDeg2", n) for n in range(5, 31)]
        )
        for spec in specs:
            m = build_family(spec)
            n2 = len(degree_two_vertices(m))
            S1, _ = isolate_theorem1(m)
            S2, _ = isolate_theorem2(m)
            assert is_isolating_set(m, S1.members, 1) and len(S1) <= m.n // 5, spec
            assert is_isolating_set(m, S2.members, 1) and len(S2) <= theorem2_bound(m.n, n2), spec

    def test_every_case_is_reached(self):
        seen = Counter()
        for m in itertools.islice(random_corpus(200, 40, 5), 40):
            for prefer in ("smallest", "largest"):
                seen.update(isolate_theorem1(m, prefer=prefer)[1].cases())
                seen.update(isolate_theorem2(m, prefer=prefer)[1].cases())
        seen.update(isolate_theorem2(family("MaxDeg2", 8))[1].cases())
        assert set(seen) == CASES

    def test_deterministic(self):
        m = random_mop(150, 9)
        assert isolate_theorem1(m) == isolate_theorem1(m)
        assert isolate_theorem2(m, prefer="largest") == isolate_theorem2(m, prefer="largest")


@given(mops(min_n=5, max_n=150), st.sampled_from(["smallest", "largest"]))
def test_theorem1_property(m, prefer):
    S, trace = isolate_theorem1(m, prefer=prefer)
    assert is_isolating_set(m, S.members, 1)
    assert len(S) <= theorem1_bound(m.n)
    assert trace.replay() == S.members
    assert set(trace.cases()) <= CASES
    assert trace.steps[-1].case == "base" or trace.steps[-1].added


@given(mops(min_n=5, max_n=150), st.sampled_from(["smallest", "largest"]))
def test_theorem2_property(m, prefer):
    S, trace = isolate_theorem2(m, prefer=prefer)
    n2 = len(degree_two_vertices(m))
    assert is_isolating_set(m, S.members, 1)
    assert len(S) <= theorem2_bound(m.n, n2)
    assert trace.replay() == S.members
    # sub-instance orders never grow along the trace
    orders = [s.n for s in trace.steps]
    assert orders == sorted(orders, reverse=True) and orders[0] == m.n


def test_bounds():
    assert theorem1_bound(24) == 4
    assert theorem2_bound(24, 4) == 4  # (24+4)/6
    assert theorem2_bound(24, 9) == 5  # (24-9)/3
    assert theorem2_bound(24, 8) == 5  # 3*8 <= 24: (24+8)/6


def test_trace_json():
    trace = ConstructionTrace((TraceStep("ell=6", 20, (3,)), TraceStep("base", 15, (0, 7))))
    assert trace.to_json() == [
        {"case": "ell=6", "n": 20, "added": [3]},
        {"case": "base", "n": 15, "added": [0, 7]},
    ]
    assert trace.replay() == {0, 3, 7}
