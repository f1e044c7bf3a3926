import json
from pathlib import Path

import pytest

from skeinlab import intlinalg
from skeinlab.surface import (
    BalancedLattice,
    RefinedLattice,
    Triangulation,
    annulus_d1_plus,
    build_sigma_g_star,
    k_boundary,
    lone_triangle,
    wp_form,
)

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "derived.json").read_text())


def test_lone_triangle():
    tri = lone_triangle()
    assert tri.genus == 0
    assert len(tri.boundary_circles) == 1
    assert tri.euler_characteristic() == 1


def test_annulus():
    ann = annulus_d1_plus()
    assert ann.genus == 0
    assert len(ann.boundary_circles) == 2
    assert len(ann.boundary_edges) == 2


def test_sigma_g_star_counts():
    t1 = build_sigma_g_star(1)
    assert len(t1.faces) == 3 and t1.n_edges == 5
    assert len(t1.inner_edges) == 4 and len(t1.boundary_edges) == 1
    t2 = build_sigma_g_star(2)
    assert len(t2.faces) == 7 and t2.n_edges == 11
    for g in (1, 2, 3):
        t = build_sigma_g_star(g)
        assert len(t.boundary_edges) == 1
        assert 3 * len(t.faces) == 2 * len(t.inner_edges) + 1
        assert t.euler_characteristic() == 1 - 2 * g
        assert t.homology_rank() == 2 * g
        assert t.validate_sigma_g_star()
    with pytest.raises(ValueError):
        build_sigma_g_star(0)


def test_wp_form_lone_triangle():
    M = wp_form(lone_triangle())
    assert M == [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]


def test_wp_form_delta1_regression():
    assert wp_form(build_sigma_g_star(1)) == FIXTURES["delta1"]["wpForm"]


def test_wp_form_bruteforce_cross_check():
    # independent count over all face corners
    for g in (1, 2):
        tri = build_sigma_g_star(g)
        n = tri.n_edges
        a = [[0] * n for _ in range(n)]
        for f in tri.faces:
            for k in range(3):
                a[f[k]][f[(k + 1) % 3]] += 1
        M = wp_form(tri)
        for i in range(n):
            for j in range(n):
                assert M[i][j] == a[i][j] - a[j][i]
                assert M[i][j] == -M[j][i]


def test_balanced_lattice_triangle():
    B = BalancedLattice(lone_triangle())
    assert B.basis == [[1, 0, 1], [0, 1, 1], [0, 0, 2]]
    assert intlinalg.sublattice_index(intlinalg.identity(3), B.basis) == 2
    # an alternative hand basis spans the same lattice
    assert intlinalg.row_span_equal(B.basis, [[1, 1, 0], [0, 1, 1], [0, 0, 2]])


def test_balanced_lattice_delta1():
    B = BalancedLattice(build_sigma_g_star(1))
    assert B.rank == 5
    assert B.basis == FIXTURES["delta1"]["balancedBasis"]
    assert B.form == FIXTURES["delta1"]["formOnK"]


def test_k_boundary_balanced_and_central():
    for g in (1, 2, 3):
        tri = build_sigma_g_star(g)
        B = BalancedLattice(tri)
        kb = k_boundary(tri)
        assert B.contains(kb)
        for vec in B.basis:
            assert B.pairing(kb, vec) == 0


def test_central_sublattice_eq_k0():
    for g in (1, 2):
        B = BalancedLattice(build_sigma_g_star(g))
        for N in (3, 5, 7):
            definitional, formula, equal = B.central_sublattice(N)
            assert equal
            # k_boundary lies in the definitional kernel
            kb = B.coordinates(k_boundary(B.tri))
            assert intlinalg.lattice_contains(definitional, kb)
    # N = 1: kernel is everything
    B = BalancedLattice(build_sigma_g_star(1))
    definitional, _, _ = B.central_sublattice(1)
    assert definitional == intlinalg.identity(B.rank)


def test_pi_degrees():
    for g in (1, 2):
        B = BalancedLattice(build_sigma_g_star(g))
        for N in (3, 5, 7):
            rep = B.pi_degree(N)
            assert rep["perfectSquare"]
            assert rep["piDegree"] == N ** (3 * g - 1)
            assert rep["index"] == N ** (2 * (3 * g - 1))


def test_refined_lattice():
    B = BalancedLattice(build_sigma_g_star(1))
    R = RefinedLattice(B)
    assert R.rank == B.rank + 1
    assert R.form == FIXTURES["delta1"]["refinedForm"]
    # restriction to K x K is the WP form
    for i in range(B.rank):
        for j in range(B.rank):
            assert R.form[i][j] == B.form[i][j]
    # embedding kills the second new edge
    vec = R.embed([3, 1, 4, 1, 5, 2])
    assert vec[-1] == 0
    for N in (3, 5):
        rep = R.lemma_comparison(N)
        frozen = FIXTURES["delta1"]["refinedReports"][str(N)]
        assert rep["index"] == frozen["index"]
        assert rep["kernelFormulaMatches"] == frozen["kernelFormulaMatches"]
        assert rep["index"] == N**6
        assert rep["piDegree"] == N**3


def test_refined_requires_boundary_arc():
    # a closed-up complex with no boundary arc must be rejected
    with pytest.raises(ValueError):
        RefinedLattice(BalancedLattice(Triangulation([(0, 1, 2), (0, 1, 2)])))


def test_triangulation_json():
    obj = build_sigma_g_star(1).to_json()
    assert obj["genus"] == 1
    assert obj["check"] == {"euler": -1, "h1rank": 2}
    assert len(obj["gluing"]) == 4


def test_bad_gluing_rejected():
    with pytest.raises(ValueError):
        Triangulation([(0, 0, 0), (0, 1, 2)])  # edge 0 in four slots
