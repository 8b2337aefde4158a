import random

import pytest
from hypothesis import given, strategies as st

from discval.constructions import (NotFound, QuadricKind,
                                   constraint_matrix_rank, isolated_singularities_example,
                                   line_singular_family, n_monomials, quadric_normal_form,
                                   singularity_constraint_space, weierstrass_cubic)
from discval.discriminant import discriminant
from discval.localanalysis import DoublePointKind, classify_double_point
from discval.mpoly import PointProj
from discval.rings import GF, QQ, ZZ, PLocal
from discval.specialfiber import analyze_singular_locus, enumerate_projective_points


def pt(K, *c):
    return PointProj(K, tuple(K.from_int(x) for x in c))


K101 = GF(101)
COORD3 = [pt(K101, 1, 0, 0), pt(K101, 0, 1, 0), pt(K101, 0, 0, 1)]


def test_nullity_of_coordinate_points():
    # 3 points in P^2, d = 5: N = 21, r(n+1) = 9
    space = singularity_constraint_space(COORD3, 5, K101)
    assert space.N == 21 == n_monomials(3, 5)
    assert space.kernel_dim == 12 == space.expected_nullity
    assert space.rank == constraint_matrix_rank(space) == 9
    rng = random.Random(1)
    for _ in range(5):
        f = space.random_member(rng)
        assert space.contains(f)
        for P in COORD3:
            assert all(K101.is_zero(g.evaluate(P.coords)) for g in [f] + f.gradient())


def test_collinear_points_below_threshold_lose_independence():
    # four collinear points, d = 2r - 2 = 6: conditions become dependent
    K = K101
    pts = [pt(K, 1, c, 0) for c in range(4)]
    space = singularity_constraint_space(pts, 6, K, check=False)
    assert space.kernel_dim > space.expected_nullity
    exact = singularity_constraint_space(pts, 7, K)  # d = 2r - 1
    assert exact.kernel_dim == exact.expected_nullity


@given(st.integers(0, 10 ** 6), st.integers(2, 3), st.integers(1, 3))
def test_nullity_is_exact_above_threshold(seed, n, r):
    rng = random.Random(seed)
    pts_all = set()
    while len(pts_all) < r:
        pts_all.add(PointProj(K101, tuple(K101.random_element(rng) for _ in range(n)) + (K101.one,)))
    pts = sorted(pts_all, key=lambda P: P.coords)
    for d in (2 * r - 1, 2 * r, 2 * r + 1):
        if d < 2:
            continue
        space = singularity_constraint_space(pts, d, K101)
        assert space.kernel_dim == space.expected_nullity


def test_isolated_singularities_witness():
    f, rep = isolated_singularities_example(2, 7, COORD3, K101, seed=3)
    assert f.is_homogeneous(7)
    assert rep.dimension == 0 and rep.r == 3
    assert {P for _, P in rep.closed_points} == set(COORD3)
    with pytest.raises(ValueError):
        isolated_singularities_example(2, 6, COORD3, K101)
    g, one = isolated_singularities_example(2, 3, COORD3[:1], K101)
    assert one.r == 1


def test_isolated_singularities_budget():
    with pytest.raises(NotFound):
        isolated_singularities_example(2, 7, COORD3, K101, budget=0)


def test_line_family():
    K = GF(7)
    h = line_singular_family(2, 3, [1, 2], field=K)
    rep = analyze_singular_locus(h)
    assert rep.dimension == 0
    assert set(rep.rational_points) == {pt(K, 0, 0, 1), pt(K, 1, 1, 0), pt(K, 1, 2, 0)}
    h3 = line_singular_family(3, 3, [0, 3], field=K)
    sing = [g for g in [h3] + h3.gradient()]
    for c in (0, 3):
        assert all(K.is_zero(g.evaluate(pt(K, 1, c, 0, 0).coords)) for g in sing)
    with pytest.raises(ValueError):
        line_singular_family(2, 3, [1, 1], field=K)
    with pytest.raises(ValueError):
        line_singular_family(2, 3, [1], field=K)


def test_quadric_normal_forms():
    R = PLocal(5)
    assert discriminant(quadric_normal_form("smooth-split", 3, ZZ)).value in (1, -1)
    assert discriminant(quadric_normal_form(QuadricKind.SMOOTH_SPLIT, 2, ZZ)).value in (1, -1)
    assert discriminant(quadric_normal_form("sum-of-squares", 2, R)).valuation == 0
    K = GF(7)
    cone = quadric_normal_form("nodal-cone", 2, K)
    rep = analyze_singular_locus(cone)
    assert rep.r == 1 and rep.rational_points == [pt(K, 0, 0, 1)]
    assert classify_double_point(cone, pt(K, 0, 0, 1)).kind is DoublePointKind.NONDEGENERATE
    F2 = GF(2)
    cone2 = quadric_normal_form("nodal-cone", 2, F2)
    assert classify_double_point(cone2, pt(F2, 0, 0, 1)).kind is DoublePointKind.NONDEGENERATE
    odp = quadric_normal_form("char2-odd-odp", 3, F2)
    assert odp.nvars == 3
    with pytest.raises(ValueError):
        quadric_normal_form("sum-of-squares", 2, F2)
    with pytest.raises(ValueError):
        quadric_normal_form("nodal-cone", 3, F2)
    with pytest.raises(ValueError):
        quadric_normal_form("char2-odd-odp", 2, F2)


def test_weierstrass_textbook_values():
    # short forms: the b-formula reduces to -16(4 a4^3 + 27 a6^2) up to the sign convention
    f, disc = weierstrass_cubic(0, 0, 0, -1, 0, ZZ)
    assert disc == 64
    assert discriminant(f).value in (64, -64)
    _, disc = weierstrass_cubic(0, 0, 0, 0, 3, ZZ)
    assert disc == -432 * 9
    f, disc = weierstrass_cubic(0, 1, 0, 0, 5, PLocal(5))
    assert PLocal(5).valuation(disc) == 1 and discriminant(f).valuation == 1
    _, disc = weierstrass_cubic(0, 0, 0, QQ.from_fraction(__import__("fractions").Fraction(1, 2)), 0, QQ)
    assert disc == -8


def test_constraint_space_validation():
    with pytest.raises(ValueError):
        singularity_constraint_space([], 3, K101)
    with pytest.raises(ValueError):
        singularity_constraint_space([COORD3[0], COORD3[0]], 3, K101)


def test_enumeration_of_witness_points_matches():
    K = GF(5)
    pts = [pt(K, 1, 0, 0), pt(K, 0, 1, 0)]
    f, rep = isolated_singularities_example(2, 5, pts, K, seed=4, budget=200)
    from discval.specialfiber import singular_subscheme
    assert set(enumerate_projective_points(singular_subscheme(f), K)) == set(pts)
