import random

import pytest
from hypothesis import given, strategies as st

from discval.constructions import singularity_constraint_space
from discval.discriminant import discriminant
from discval.localanalysis import (UNDETERMINED, DoublePointKind, NotSingular, ZeroPolynomial,
                                   check_theorem_1_1, classify_double_point,
                                   decompose_quadratic_form, gauss_valuation, is_regular_at,
                                   is_singular_point, lift_poly, multiplicity,
                                   quadric_discriminant, quadric_valuation_bound_check,
                                   reduce_poly, symbolic_quadric_discriminant,
                                   transform_is_unimodular, vmin_exact_quadric, vmin_sample)
from discval.mpoly import MPoly, PointProj
from discval.rings import GF, INF, ZZ, PLocal


def P(text, K, n=None):
    return MPoly.parse(text, K, n)


def pt(K, *c):
    return PointProj(K, tuple(K.from_int(x) for x in c))


# --- double points --------------------------------------------------------------

def test_node_cusp_and_triple_point():
    K = GF(7)
    node = classify_double_point(P("x0*x1*x2 + x0^3", K, 3), pt(K, 0, 0, 1))
    assert node.kind is DoublePointKind.NONDEGENERATE and node.local_multiplicity == 1
    cusp = classify_double_point(P("x1^2*x2 - x0^3", K), pt(K, 0, 0, 1))
    assert cusp.kind is DoublePointKind.DEGENERATE and cusp.local_multiplicity == 2
    triple = classify_double_point(P("x0^3 + x1^3", K, 3), pt(K, 0, 0, 1))
    assert triple.kind is DoublePointKind.NOT_DOUBLE


def test_not_singular_rejected():
    K = GF(5)
    with pytest.raises(NotSingular):
        classify_double_point(P("x0^2 + x1^2 + x2^2", K), pt(K, 1, 0, 0))
    assert not is_singular_point(P("x0*x1 + x2^2", K), pt(K, 1, 0, 0))


def test_characteristic_two():
    K = GF(2)
    # n = 2 (even): the node x0*x1 is nondegenerate and reduced
    node = classify_double_point(P("x0*x1*x2 + x0^3 + x1^3", K), pt(K, 0, 0, 1))
    assert node.kind is DoublePointKind.NONDEGENERATE and node.local_multiplicity == 1
    # n = 1 (odd): x0^2 in P^1 has length 2, the ordinary double point in odd dimension
    odd = classify_double_point(P("x0^2", K, 2), pt(K, 0, 1))
    assert odd.kind is DoublePointKind.ORDINARY_CHAR2_ODD and odd.local_multiplicity == 2
    # n = 3: affine model y0*y1 + y2^2 plus cubic terms
    f = P("x0*x1*x3 + x2^2*x3 + x0^3 + x1^3 + x2^3", K, 4)
    surf = classify_double_point(f, pt(K, 0, 0, 0, 1))
    assert surf.kind is DoublePointKind.ORDINARY_CHAR2_ODD and surf.hessian_rank == 2


def _singular_form_at_origin_chart(rng, K, n, d):
    Q = pt(K, *([0] * n + [1]))
    space = singularity_constraint_space([Q], d, K)
    while True:
        f = space.random_member(rng)
        if f.terms:
            return f, Q


@given(st.integers(0, 10 ** 6), st.sampled_from([3, 5, 7]), st.integers(1, 3), st.integers(2, 4))
def test_odd_characteristic_hessian_criterion(seed, p, n, d):
    K = GF(p)
    f, Q = _singular_form_at_origin_chart(random.Random(seed), K, n, d)
    c = classify_double_point(f, Q)
    if c.kind is DoublePointKind.NOT_DOUBLE:
        return
    assert (not K.is_zero(c.hessian_det)) == (c.local_multiplicity == 1)
    assert (c.kind is DoublePointKind.NONDEGENERATE) == (c.local_multiplicity == 1)


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(2, 4))
def test_nondegenerate_has_length_one_in_char_two(seed, n, d):
    K = GF(2, 2)
    f, Q = _singular_form_at_origin_chart(random.Random(seed), K, n, d)
    c = classify_double_point(f, Q)
    if c.kind is DoublePointKind.NONDEGENERATE:
        assert c.local_multiplicity == 1
    if c.kind is DoublePointKind.ORDINARY_CHAR2_ODD:
        assert n % 2 == 1 and c.local_multiplicity == 2


# --- regularity and the valuation-one criterion ----------------------------------

def test_is_regular_at():
    R = PLocal(5)
    k = R.residue_field
    Q = pt(k, 0, 0, 1)
    assert is_regular_at(P("x0^2 + x1^2 + 5*x2^2", R), Q) is True
    assert is_regular_at(P("x0^2 + x1^2 + 25*x2^2", R), Q) is False
    with pytest.raises(NotSingular):
        is_regular_at(P("x0^2 + x1^2 + x2^2", R), Q)
    L = GF(5, 2)
    conj = PointProj(L, (L.one, L.p, L.zero))
    # x0^2 - 2 x1^2 has its singular points only over F_25
    f = P("(x0^2 - 2*x1^2)*x2 + 5*x2^3", R, 3)
    assert is_regular_at(f, pt(k, 0, 0, 1)) is True
    if is_singular_point(reduce_poly(f), conj):
        assert is_regular_at(f, conj) == UNDETERMINED


def test_valuation_one_checker_examples():
    R = PLocal(5)
    good = check_theorem_1_1(P("x0^2 + x1^2 + 5*x2^2", R))
    assert good.valuation == 1 and good.regular is True and good.nondeg_single_point
    assert good.equivalence_holds is True
    bad = check_theorem_1_1(P("x0^2 + x1^2 + 25*x2^2", R))
    assert bad.valuation >= 2 and bad.regular is False and bad.equivalence_holds is True
    two = check_theorem_1_1(P("x0*x1*x2 + 5*(x0^3 + x1^3 + x2^3)", R))
    assert two.sing_report.r == 3 and two.valuation >= 2 and not two.nondeg_single_point
    smooth = check_theorem_1_1(P("x0^3 + x1^3 + x2^3", R))
    assert smooth.valuation == 0 and smooth.regular is True
    line = check_theorem_1_1(P("x0^2 + 5*x1^2 + 5*x2^2", R))
    assert line.sing_report.dimension == 1 and line.valuation >= 2
    json = good.to_json()
    assert json["valuation"] == 1 and json["equivalence_holds"] is True


def test_char_two_odd_dimension_never_has_valuation_one():
    rng = random.Random(6)
    R = PLocal(2)
    k = R.residue_field
    for _ in range(20):
        f, _ = _singular_form_at_origin_chart(rng, k, 1, 2)
        F = lift_poly(f, R) + P("2*x0^2 + 2*x1^2 + 2*x0*x1", R, 2)
        rep = check_theorem_1_1(F)
        assert rep.valuation >= 2 and not rep.char2_odd_violation


# --- quadratic forms -------------------------------------------------------------

def test_decomposition_char_two_rank_two_block():
    R = PLocal(2)
    dec = decompose_quadratic_form(P("x0^2 + x0*x1 + x1^2", R, 2))
    assert len(dec.rank2_blocks) == 1 and not dec.rank1_blocks
    assert transform_is_unimodular(dec)


def test_decomposition_diagonalises_odd_residue():
    R = PLocal(3)
    q = P("x0*x1 + 3*x2^2 + 9*x1*x2", R, 3)
    dec = decompose_quadratic_form(q)
    assert not dec.rank2_blocks and len(dec.rank1_blocks) == 3
    assert q.substitute_linear(dec.transform) == dec.normal_form()
    assert transform_is_unimodular(dec)
    assert sorted(R.valuation(d) for d in dec.rank1_blocks) == [0, 0, 1]


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]), st.integers(2, 5))
def test_decomposition_reconstructs(seed, p, nvars):
    rng = random.Random(seed)
    R = PLocal(p)
    from discval.discriminant import monomials
    q = MPoly(R, nvars, {m: R.coerce(rng.randint(-4, 4) * p ** rng.randint(0, 2))
                         for m in monomials(nvars, 2)})
    dec = decompose_quadratic_form(q)
    assert q.substitute_linear(dec.transform) == dec.normal_form()
    assert transform_is_unimodular(dec)
    if q.terms:
        d = discriminant(q).value
        assert quadric_discriminant(q) in (d, R.neg(d))
        assert quadric_valuation_bound_check(q)[2]


def test_symbolic_quadric_discriminant():
    assert symbolic_quadric_discriminant(2) == P("4*x0*x2 - x1^2", ZZ, 3)
    assert symbolic_quadric_discriminant(3).total_degree() == 3


# --- valuations of discriminant values --------------------------------------------

def test_gauss_valuation():
    R = PLocal(5)
    assert gauss_valuation(P("5*x0 + 25*x1", R, 2)) == 1
    with pytest.raises(ZeroPolynomial):
        gauss_valuation(MPoly(R, 2, {}))


def test_vmin_exact_quadric():
    R = PLocal(5)
    k = R.residue_field
    assert vmin_exact_quadric(P("x0^2 + x1^2 + x2^2", k), R) == 0
    assert vmin_exact_quadric(P("x0^2 + x1^2", k, 3), R) == 1
    assert vmin_exact_quadric(P("x0^2", k, 3), R) >= 2
    assert vmin_exact_quadric([1, 0, 0, 1, 0, 0], R, 3) == 1


def test_multiplicity():
    K = GF(7)
    f = P("x0^2*x1 + x1^3", K, 2)
    assert multiplicity(f, [K.zero, K.zero]) == 3
    assert multiplicity(f, [K.one, K.zero]) == 1
    assert multiplicity(f, [K.one, K.one]) == 0
    with pytest.raises(ZeroPolynomial):
        multiplicity(MPoly(K, 2, {}), [0, 0])


def test_vmin_sample():
    R = PLocal(5)
    k = R.residue_field
    assert vmin_sample(P("x0^2 + x1^2 + x2^2", k), 4, R) == 0
    assert vmin_sample(P("x0^2 + x1^2", k, 3), 16, R, seed=2) == 1
    assert vmin_sample(P("x0^2", k, 3), 16, R) >= 2


def test_reduce_and_lift_round_trip():
    R = PLocal(7)
    f = P("8*x0^2 + 14*x0*x1 - x1^2", R, 2)
    fbar = reduce_poly(f)
    assert fbar == P("x0^2 - x1^2", R.residue_field, 2)
    assert reduce_poly(lift_poly(fbar, R)) == fbar
    assert discriminant(f).valuation == 0
    assert INF > 10 ** 9
