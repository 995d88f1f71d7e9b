import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mops
from mopiso.core import (
    InvalidMop,
    Mop,
    SimpleGraph,
    add_ear,
    apex_of_edge,
    closed_neighborhood,
    contract_hamiltonian_edge,
    degree,
    degree_two_vertices,
    diagonal_partition,
    faces,
    fan,
    is_valid,
    remove_degree2_vertex,
    residual,
    reverse_orientation,
    rotate,
    validate,
)

F5 = fan(5)


def lifted_edges(sub, mp):
    return {tuple(sorted((mp[a], mp[b]))) for a, b in sub.edges()}


def isomorphic_by_rotation_or_reflection(a, b):
    if a.n != b.n:
        return False
    for base in (a, reverse_orientation(a)[0]):
        for r in range(a.n):
            if rotate(base, r)[0].diagonals == b.diagonals:
                return True
    return False


class TestValidate:
    def test_triangle(self):
        assert validate(Mop(3, frozenset())) is None

    def test_fan5(self):
        assert validate(Mop(5, frozenset({(0, 2), (0, 3)}))) is None

    def test_crossing(self):
        msg = validate(Mop(6, frozenset({(0, 2), (1, 3), (3, 5)})))
        assert msg == "diagonals {0, 2} and {1, 3} cross"

    @pytest.mark.parametrize(
        "n, diags, fragment",
        [
            (2, set(), "order"),
            (5, {(0, 2)}, "expected 2 diagonals"),
            (5, {(0, 2), (0, 1)}, "cycle-adjacent"),
            (5, {(0, 2), (0, 7)}, "outside"),
            (5, {(0, 2), (3, 3)}, "loop"),
            (5, {(0, 4), (1, 3)}, "cycle-adjacent"),
        ],
    )
    def test_violations(self, n, diags, fragment):
        assert fragment in validate(Mop(n, frozenset(diags)))

    def test_from_pairs_rejects(self):
        with pytest.raises(InvalidMop, match="cross"):
            Mop.from_pairs(6, [(0, 2), (1, 3), (3, 5)])

    def test_normalises_pairs(self):
        assert Mop(5, frozenset({(2, 0), (3, 0)})) == F5

    def test_json_round_trip(self):
        m = Mop.from_pairs(6, [(3, 1), (1, 5), (1, 4)])
        assert m.to_json() == {"n": 6, "diagonals": [[1, 3], [1, 4], [1, 5]]}
        assert Mop.from_json(m.to_json()) == m


class TestQueries:
    def test_degree(self):
        assert degree(F5, 0) == 4
        assert degree(F5, 1) == 2
        with pytest.raises(ValueError):
            degree(F5, 5)

    def test_closed_neighborhood(self):
        assert closed_neighborhood(F5, {0}) == frozenset(range(5))
        assert closed_neighborhood(F5, set()) == frozenset()
        assert closed_neighborhood(F5, {1}) == {0, 1, 2}
        with pytest.raises(ValueError):
            closed_neighborhood(F5, {9})

    def test_residual(self):
        assert residual(F5, {0}) == SimpleGraph(frozenset(), frozenset())
        assert residual(F5, {1}) == SimpleGraph(frozenset({3, 4}), frozenset({(3, 4)}))
        whole = residual(F5, set())
        assert whole.vertices == set(range(5)) and whole.edges == F5.edges()

    def test_degree_two_vertices(self):
        assert degree_two_vertices(F5) == {1, 4}

    def test_simple_graph_rejects(self):
        with pytest.raises(ValueError):
            SimpleGraph(frozenset({0, 1}), frozenset({(0, 0)}))
        with pytest.raises(ValueError):
            SimpleGraph(frozenset({0, 1}), frozenset({(0, 1), (1, 0)}))
        with pytest.raises(ValueError):
            SimpleGraph(frozenset({0}), frozenset({(0, 1)}))


class TestStructural:
    def test_partition_fan5_long_side(self):
        p = diagonal_partition(F5, (0, 3))
        assert p.ell == 3
        assert p.g1 == Mop(4, frozenset({(0, 2)})) and p.map1 == (0, 1, 2, 3)
        assert p.g2 == Mop(3, frozenset()) and p.map2 == (0, 3, 4)

    def test_partition_fan5_short_side(self):
        p = diagonal_partition(F5, (0, 2))
        assert p.ell == 2
        assert p.g1.n == 3 and p.map1 == (0, 1, 2)
        assert p.g2 == Mop(4, frozenset({(0, 2)})) and p.map2 == (0, 2, 3, 4)

    def test_partition_rejects_edges(self):
        with pytest.raises(ValueError):
            diagonal_partition(F5, (0, 1))

    def test_contract_fan4_to_triangle(self):
        c, mp = contract_hamiltonian_edge(fan(4), (1, 2))
        assert c == Mop(3, frozenset()) and mp == (0, 1, 1, 2)

    def test_contract_fan5(self):
        c, _ = contract_hamiltonian_edge(F5, (1, 2))
        assert c.n == 4 and is_valid(c)

    def test_contract_wraparound_keeps_zero(self):
        c, mp = contract_hamiltonian_edge(F5, (0, 4))
        assert mp[4] == mp[0] == 0 and is_valid(c)

    def test_contract_errors(self):
        with pytest.raises(ValueError):
            contract_hamiltonian_edge(F5, (0, 2))
        with pytest.raises(ValueError):
            contract_hamiltonian_edge(fan(3), (0, 1))

    def test_remove_degree2(self):
        r, mp = remove_degree2_vertex(F5, 1)
        assert isomorphic_by_rotation_or_reflection(r, fan(4))
        assert mp[1] is None
        t, _ = remove_degree2_vertex(fan(4), 1)
        assert t == fan(3)
        with pytest.raises(ValueError):
            remove_degree2_vertex(F5, 0)
        with pytest.raises(ValueError):
            remove_degree2_vertex(fan(3), 0)

    def test_add_ear(self):
        m, mp = add_ear(fan(3), (0, 1))
        assert isomorphic_by_rotation_or_reflection(m, fan(4))
        assert mp == (0, 2, 3)
        assert degree(m, 1) == 2
        w, mpw = add_ear(F5, (0, 4))
        assert mpw == tuple(range(5)) and degree(w, 5) == 2
        with pytest.raises(ValueError):
            add_ear(F5, (0, 2))

    def test_fan(self):
        assert fan(3) == Mop(3, frozenset())
        assert fan(5).diagonals == {(0, 2), (0, 3)}
        with pytest.raises(ValueError):
            fan(2)

    def test_apex(self):
        assert apex_of_edge(F5, (0, 4)).apex == 3
        assert apex_of_edge(F5, (0, 3), "descending").apex == 4
        assert apex_of_edge(F5, (0, 3), "ascending").apex == 2
        with pytest.raises(ValueError):
            apex_of_edge(F5, (0, 3))
        with pytest.raises(ValueError):
            apex_of_edge(F5, (1, 3), "ascending")
        with pytest.raises(ValueError):
            apex_of_edge(F5, (0, 3), "sideways")

    def test_reverse_orientation(self):
        tri = fan(3)
        assert reverse_orientation(tri)[0] == tri
        r, perm = reverse_orientation(F5)
        assert perm[0] == 0 and r == F5
        twice = reverse_orientation(r)[1]
        assert tuple(twice[p] for p in perm) == tuple(range(5))

    def test_rotate(self):
        r, perm = rotate(F5, 2)
        assert perm == (2, 3, 4, 0, 1) and is_valid(r) and degree(r, 2) == 4


# -- properties over random instances -----------------------------------------


@given(mops(min_n=4))
def test_partition_identities(m):
    for d in m.diagonals:
        p = diagonal_partition(m, d)
        assert p.g1.n + p.g2.n == m.n + 2
        assert is_valid(p.g1) and is_valid(p.g2)
        e1, e2 = lifted_edges(p.g1, p.map1), lifted_edges(p.g2, p.map2)
        assert e1 | e2 == m.edges()
        assert e1 & e2 == {d}
        assert p.ell == d[1] - d[0]


@given(mops(min_n=4))
def test_contraction_valid(m):
    for e in m.hamiltonian_edges():
        c, mp = contract_hamiltonian_edge(m, e)
        assert c.n == m.n - 1 and is_valid(c)
        assert mp[e[0]] == mp[e[1]]
        assert {tuple(sorted((mp[a], mp[b]))) for a, b in m.edges() if mp[a] != mp[b]} == c.edges()


@given(mops(min_n=4))
def test_degree_two_vertices_independent_and_bounded(m):
    v2 = degree_two_vertices(m)
    assert not any(m.has_edge(a, b) for a in v2 for b in v2)
    assert 2 <= len(v2) <= m.n // 2


@given(mops(), st.data())
def test_add_then_remove_ear_is_identity(m, data):
    e = data.draw(st.sampled_from(m.hamiltonian_edges()))
    grown, up = add_ear(m, e)
    new = (set(range(grown.n)) - set(up)).pop()
    back, down = remove_degree2_vertex(grown, new)
    assert back == m
    assert all(down[up[v]] == v for v in range(m.n))


@given(mops())
def test_face_count(m):
    tris = faces(m)
    assert len(tris) == m.n - 2
    assert all(m.has_edge(a, b) and m.has_edge(b, c) and m.has_edge(a, c) for a, b, c in tris)


@given(mops())
def test_reverse_orientation_preserves(m):
    r, perm = reverse_orientation(m)
    assert is_valid(r)
    assert sorted(r.degrees) == sorted(m.degrees)
    assert len(r.diagonals) == len(m.diagonals)
    assert all(r.degrees[perm[v]] == m.degrees[v] for v in range(m.n))
    assert reverse_orientation(r)[0] == m


@given(mops(min_n=5, max_n=15), st.data())
def test_validate_detects_crossings(m, data):
    # flipping a diagonal to the other diagonal of its quadrilateral keeps
    # validity; swapping the flip in for a different diagonal makes a crossing
    d = data.draw(st.sampled_from(sorted(m.diagonals)))
    other = data.draw(st.sampled_from(sorted(m.diagonals - {d})))
    a, b = d
    w1 = apex_of_edge(m, d, "ascending").apex
    w2 = apex_of_edge(m, d, "descending").apex
    flipped = Mop(m.n, (m.diagonals - {d}) | {tuple(sorted((w1, w2)))})
    assert is_valid(flipped)
    crossed = Mop(m.n, (m.diagonals - {other}) | {tuple(sorted((w1, w2)))})
    assert "cross" in validate(crossed)
