import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from skeinlab.cyclotomic import Cyclotomic
from skeinlab.mcg import MappingClass, TWIST_ALPHA, TWIST_BETA
from skeinlab.repvar import (
    SL2Mat,
    SL2Rep,
    act_on_rep,
    classify_cell,
    classify_double_leaf,
    classify_sts_leaf,
    enumerate_hom_to_finite,
    group_closure,
    moment_map,
    orbit_closure,
    quaternion_generators,
    rep_dimension,
    toric_action,
)

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "derived.json").read_text())


def test_sl2_determinant_enforced():
    with pytest.raises(ValueError):
        SL2Mat(1, 0, 0, 2)
    m = SL2Mat(2, 0, 0, Fraction(1, 2))
    assert m.inverse() * m == SL2Mat.identity()


def test_moment_map_fixture():
    A = SL2Mat(0, 1, -1, 0)
    B = SL2Mat(1, 1, 0, 1)
    mu = moment_map(SL2Rep(1, (A, B)))
    [[a, b], [c, d]] = FIXTURES["classical"]["momentFixture"]
    assert mu == SL2Mat(a, b, c, d)


def test_moment_map_trivial_and_abelian():
    triv = SL2Rep(1, (SL2Mat.identity(), SL2Mat.identity()))
    assert moment_map(triv) == SL2Mat.identity()
    i4 = Cyclotomic.zeta(4)
    D = SL2Mat(i4, 0, 0, i4**3)
    assert moment_map(SL2Rep(1, (D, D))) == SL2Mat.identity(order=4)


def test_classify_cell():
    triv = SL2Rep(1, (SL2Mat.identity(), SL2Mat.identity()))
    assert classify_cell(triv) == "big"
    i4 = Cyclotomic.zeta(4)
    A = SL2Mat(i4, 0, 0, i4**3)
    B = SL2Mat(1, Fraction(1, 2), -1, Fraction(1, 2))
    rep = SL2Rep(1, (A, B))
    assert moment_map(rep) == SL2Mat(0, -1, 1, 0)
    assert classify_cell(rep) == "reduced"


def test_sts_leaves():
    desc = classify_sts_leaf(SL2Mat(2, 0, 0, Fraction(1, 2)))
    assert desc["cell"] == 0 and not desc["central"] and not desc["parabolic"]
    desc = classify_sts_leaf(SL2Mat(0, 1, -1, 0))
    assert desc["cell"] == 1
    assert desc["dressingOrbit"]["b"] == Cyclotomic.rational(4, 1).to_json()
    desc = classify_sts_leaf(SL2Mat.identity())
    assert desc["cell"] == 0 and desc["central"]
    desc = classify_sts_leaf(SL2Mat(1, 1, 0, 1))
    assert desc["parabolic"] and not desc["central"]


def test_double_leaves():
    I = SL2Mat.identity()
    assert classify_double_leaf(I, I) == (0, 0)
    g1 = SL2Mat(0, 1, -1, 0)
    assert classify_double_leaf(g1, I) == (1, 1)
    assert classify_double_leaf(SL2Mat(1, 1, 0, 1), I) == (0, 0)


def test_toric_action():
    m = SL2Mat(0, 1, -1, 0)
    assert toric_action(1, m) == m
    d = SL2Mat(2, 0, 0, Fraction(1, 2))
    z5 = Cyclotomic.zeta(5)
    out = toric_action(z5, d)
    assert out.b.is_zero() and out.c.is_zero()
    out = toric_action(z5, m)
    assert out.b == z5.embed(20) ** 2
    assert out.c == -(z5.embed(20) ** -2)
    # the cell is insensitive to the toric action
    assert classify_sts_leaf(out)["cell"] == classify_sts_leaf(m)["cell"]


def test_finite_subgroups():
    gens = quaternion_generators()
    assert len(group_closure(gens)) == 8
    assert len(enumerate_hom_to_finite(gens, 1)) == 64
    assert len(enumerate_hom_to_finite([SL2Mat(-1, 0, 0, -1)], 1)) == 4
    assert len(enumerate_hom_to_finite([SL2Mat.identity()], 1)) == 1


def test_group_closure_cap():
    with pytest.raises(ValueError):
        group_closure([SL2Mat(1, 1, 0, 1)], cap=16)  # infinite order


def test_quaternion_reps_all_big():
    # commutators in the quaternion group are central, so every moment
    # value has nonzero upper-left entry
    for rep in enumerate_hom_to_finite(quaternion_generators(), 1):
        assert classify_cell(rep) == "big"


def test_orbit_closure_fixture():
    A = SL2Mat(0, 1, -1, 0)
    orbit = orbit_closure(
        [SL2Rep(1, (A, A))],
        [MappingClass(1, words=TWIST_ALPHA), MappingClass(1, words=TWIST_BETA)],
    )
    assert orbit.size == FIXTURES["classical"]["q8OrbitSize"]
    assert orbit.cell == "big"
    assert orbit.moment == SL2Mat.identity()


def test_orbit_trivial_fixed_point():
    triv = SL2Rep(1, (SL2Mat.identity(), SL2Mat.identity()))
    orbit = orbit_closure([triv], [MappingClass(1, words=TWIST_ALPHA)])
    assert orbit.size == 1
    assert rep_dimension(orbit, 3) == 27


def test_orbit_cap():
    # a diagonal seed with non-central infinite-order entries grows until
    # the cap: the twists keep appending fresh diagonal products
    seed = SL2Rep(
        1,
        (
            SL2Mat(2, 0, 0, Fraction(1, 2)),
            SL2Mat(3, 0, 0, Fraction(1, 3)),
        ),
    )
    with pytest.raises(ValueError):
        orbit_closure([seed], [MappingClass(1, words=TWIST_ALPHA)], cap=8)


def test_moment_constant_along_random_orbit_walk():
    rng = random.Random(42)
    endos = [
        MappingClass(1, words=TWIST_ALPHA).endo,
        MappingClass(1, words=TWIST_BETA).endo,
    ]
    A = SL2Mat(0, 1, -1, 0)
    cur = SL2Rep(1, (A, A))
    mu0 = moment_map(cur)
    for _ in range(50):
        cur = act_on_rep(rng.choice(endos), cur)
        assert moment_map(cur) == mu0


def test_rep_dimension_formula():
    A = SL2Mat(0, 1, -1, 0)
    orbit = orbit_closure(
        [SL2Rep(1, (A, A))],
        [MappingClass(1, words=TWIST_ALPHA), MappingClass(1, words=TWIST_BETA)],
    )
    assert rep_dimension(orbit, 3) == 27 * orbit.size


def test_genus_two_orbit_with_word_generators():
    from skeinlab.mcg import validate_automorphism

    words = {"a1": "a1", "b1": "b1a1", "a2": "a2", "b2": "b2"}
    assert validate_automorphism(2, words)
    mc = MappingClass(2, words=words)
    J, K = quaternion_generators()
    orbit = orbit_closure([SL2Rep(2, (J, J, K, K))], [mc], cap=256)
    assert orbit.size == 4
    assert orbit.cell == "big"
    assert rep_dimension(orbit, 3) == 3**6 * 4


def test_torelli_boundary_twist_fixes_diagonal_reps():
    # conjugation by the boundary word: a Torelli element (identity on
    # homology) fixing every abelian representation
    from skeinlab.mcg import invert_word, parse_word, word_to_text

    w = parse_word("abAB", 1)
    conj = {
        "a1": word_to_text(w + (1,) + invert_word(w), 1),
        "b1": word_to_text(w + (2,) + invert_word(w), 1),
    }
    mc = MappingClass(1, words=conj)
    assert mc.endo.abelianization() == [[1, 0], [0, 1]]
    diag = SL2Rep(
        1, (SL2Mat(2, 0, 0, Fraction(1, 2)), SL2Mat(3, 0, 0, Fraction(1, 3)))
    )
    orbit = orbit_closure([diag], [mc], cap=64)
    assert orbit.size == 1
    assert rep_dimension(orbit, 3) == 27
    # but it moves a nonabelian representation
    nonab = SL2Rep(1, (SL2Mat(0, 1, -1, 0), SL2Mat(1, 1, 0, 1)))
    assert act_on_rep(mc.endo, nonab) != nonab


def test_rep_json_round_trip():
    A = SL2Mat(0, 1, -1, 0)
    rep = SL2Rep(1, (A, A))
    obj = rep.to_json()
    assert obj["genus"] == 1
    assert len(obj["images"]) == 2
