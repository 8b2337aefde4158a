import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from discval.mpoly import MPoly, PointProj, parse_poly
from discval.parsing import ParseError
from discval.rings import GF, QQ, ZZ, PLocal, TLocal


def P(text, ring=ZZ, n=None):
    return MPoly.parse(text, ring, n)


def test_parse_examples():
    f = P("x0^2 + 3*x0*x1 - 5*x2^2")
    assert len(f) == 3 and f.nvars == 3
    assert f.coefficient((1, 1, 0)) == 3
    z = P("0", ZZ, 2)
    assert z.is_zero() and z.terms == {}


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_poly("x0^2 + * x1", ZZ, 2)
    assert err.value.pos == 7
    with pytest.raises(ParseError):
        parse_poly("x0 + x5", ZZ, 2)
    with pytest.raises(ParseError):
        parse_poly("x0 / x1", ZZ, 2)


def test_partial_derivatives():
    f = P("x0^2*x1")
    assert f.partial_derivative(0) == P("2*x0*x1")
    g = P("x0^2", GF(2), 1)
    assert g.partial_derivative(0).is_zero()


def test_evaluate():
    assert P("x0 + x1").evaluate((1, 2)) == 3
    disc = P("x1^2 - 4*x0*x2")
    assert disc.evaluate((1, 0, 1)) == -4
    assert P("x0*x1 + 7", ZZ, 2).evaluate((0, 0)) == 7


def test_substitute_linear():
    f = P("x0*x1")
    assert f.substitute_linear([[1, 0], [0, 1]]) == f
    assert f.substitute_linear([[0, 1], [1, 0]]) == f
    sq = P("x0^2", ZZ, 2)
    assert sq.substitute_linear([[1, 1], [0, 1]]) == P("x0^2 + 2*x0*x1 + x1^2")


def test_taylor_shift():
    assert P("x0^2").taylor_shift([1]) == P("x0^2 + 2*x0 + 1")
    c = MPoly.constant(ZZ, 2, 5)
    assert c.taylor_shift([3, 4]) == c


def test_taylor_shift_matches_evaluate():
    rng = random.Random(3)
    for _ in range(200):
        f = MPoly(ZZ, 3, {tuple(rng.randint(0, 3) for _ in range(3)): rng.randint(-5, 5)
                          for _ in range(5)})
        b = [rng.randint(-4, 4) for _ in range(3)]
        assert f.taylor_shift(b).evaluate((0, 0, 0)) == f.evaluate(b)


def test_dehomogenize_examples():
    f = P("x0*x1")
    g = f.dehomogenize(0, PointProj(GF(7), (1, 0)))
    assert g.nvars == 1 and g.total_degree() == 1
    cusp = P("x1^2*x2 - x0^3 - x0^2*x2", GF(7), 3)
    h = cusp.dehomogenize(2, PointProj(GF(7), (0, 0, 1)))
    assert h.min_degree() == 2


def test_dehomogenize_smooth_quadric_has_linear_part():
    K = GF(7)
    f = P("x0^2 + x1^2 + x2^2", K)
    pts = [PointProj(K, (a, b, 1)) for a in range(7) for b in range(7)
           if (a * a + b * b + 1) % 7 == 0]
    assert pts
    for Q in pts:
        h = f.dehomogenize(Q.chart, Q)
        assert h.homogeneous_part(0).is_zero()
        assert not h.homogeneous_part(1).is_zero()


def _random_form(rng, ring, nvars, d, coeff):
    from discval.discriminant import monomials
    return MPoly(ring, nvars, {m: coeff(rng) for m in monomials(nvars, d) if rng.random() < 0.6})


@pytest.mark.parametrize("ring", [ZZ, GF(5), GF(2), PLocal(3)])
def test_euler_relation(ring):
    rng = random.Random(11)
    for _ in range(50):
        d = rng.randint(1, 5)
        f = _random_form(rng, ring, 3, d, lambda r: ring.from_int(r.randint(-9, 9)))
        xs = [MPoly.var(ring, 3, i) for i in range(3)]
        lhs = f.scale(ring.from_int(d))
        rhs = MPoly.zero(ring, 3)
        for i, x in enumerate(xs):
            rhs = rhs + x * f.partial_derivative(i)
        assert lhs == rhs


coeff_strategy = st.integers(min_value=-50, max_value=50)
exp_strategy = st.tuples(*[st.integers(min_value=0, max_value=4)] * 3)


@given(st.dictionaries(exp_strategy, coeff_strategy, max_size=8))
def test_round_trip_integers(terms):
    f = MPoly(ZZ, 3, terms)
    assert MPoly.parse(f.format(), ZZ, 3) == f


@given(st.dictionaries(exp_strategy, st.fractions(max_denominator=20), max_size=6))
def test_round_trip_rationals(terms):
    f = MPoly(QQ, 3, {e: Fraction(c) for e, c in terms.items()})
    assert MPoly.parse(f.format(), QQ, 3) == f


def test_round_trip_many_rings():
    rng = random.Random(5)
    rings = [GF(7), GF(2, 3), PLocal(5), TLocal(3)]
    for i in range(500):
        R = rings[i % len(rings)]
        if isinstance(R, PLocal):
            coeff = lambda r: R.coerce(Fraction(r.randint(-99, 99), r.choice([1, 2, 3, 4])))
        elif isinstance(R, TLocal):
            coeff = lambda r: R.from_poly(tuple(r.randrange(3) for _ in range(3)))
        else:
            coeff = R.random_element
        f = MPoly(R, 3, {tuple(rng.randint(0, 3) for _ in range(3)): coeff(rng) for _ in range(4)})
        assert MPoly.parse(f.format(), R, 3) == f


def test_point_normalisation():
    K = GF(7)
    assert PointProj(K, (0, 3, 6)).coords == (0, 1, 2)
    assert PointProj(K, (2, 4, 6)) == PointProj(K, (1, 2, 3))
    with pytest.raises(ValueError):
        PointProj(K, (0, 0, 0))


def test_no_zero_terms_stored():
    f = P("x0 + x1") - P("x0", ZZ, 2)
    assert f.terms == {(0, 1): 1}
    g = P("x0^2 + x0", GF(2), 1) * MPoly.constant(GF(2), 1, 2)
    assert g.is_zero()
