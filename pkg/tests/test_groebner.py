import random

import pytest

from discval.groebner import Order, affine_dimension, groebner_basis, ideal_dimension
from discval.mpoly import MPoly
from discval.rings import GF, QQ


def P(text, K, n=None):
    return MPoly.parse(text, K, n)


def _as_set(gb):
    return {frozenset(g.terms.items()) for g in gb.generators}


def test_small_reduced_basis():
    K = GF(7)
    gb = groebner_basis([P("x0^2", K, 2), P("x0*x1 - x1", K, 2)])
    assert _as_set(gb) == {frozenset({(2, 0): 1}.items()), frozenset({(0, 1): 1}.items())}


def test_unit_ideal():
    K = GF(5)
    gb = groebner_basis([P("x0 + 1", K, 2), P("x0", K, 2)])
    assert gb.is_unit() and len(gb.generators) == 1
    assert ideal_dimension(gb, projective=False) == -1


def test_dimensions():
    K = GF(7)
    assert ideal_dimension(groebner_basis([P("x0^2 + x1^2", K, 2)]), projective=False) == 1
    f = P("x0^2 + x1^2", K, 2)
    assert ideal_dimension(groebner_basis(f.gradient())) == -1
    assert ideal_dimension(groebner_basis([P("x0^2", K, 3)])) == 1
    cone = P("x0^2 + x1^2", K, 3)
    assert ideal_dimension(groebner_basis([cone] + cone.gradient())) == 0
    assert _as_set(groebner_basis([P("x0", K, 2), P("x1", K, 2)])) == {
        frozenset({(1, 0): 1}.items()), frozenset({(0, 1): 1}.items())}
    assert affine_dimension([(1, 0, 0), (0, 1, 0)], 3) == 1
    assert affine_dimension([(0, 0, 0)], 3) == -1


def test_frozen_bases(oracles):
    for case in oracles["groebner"]:
        K = GF(case["p"])
        n = case["vars"]
        gb = groebner_basis([P(g, K, n) for g in case["gens"]])
        want = {frozenset((tuple(int(x) for x in k.split(",")), v) for k, v in b.items())
                for b in case["basis"]}
        assert _as_set(gb) == want, case


def test_members_reduce_to_zero_and_basis_is_reduced():
    rng = random.Random(3)
    K = GF(11)
    x = [MPoly.var(K, 3, i) for i in range(3)]
    for _ in range(15):
        gens = [sum((x[i] * x[j]).scale(K.random_element(rng)) for i in range(3) for j in range(i, 3))
                + x[0].scale(K.random_element(rng)) for _ in range(2)]
        gb = groebner_basis(gens)
        for g in gens:
            assert gb.contains(g)
        combo = gens[0] * x[1] + gens[1] * x[2]
        assert gb.contains(combo)
        lms = gb.leading_monomials
        for i, a in enumerate(lms):
            for j, b in enumerate(lms):
                if i != j:
                    assert not all(u <= v for u, v in zip(a, b))


def test_lex_order_and_elimination():
    K = GF(13)
    gb = groebner_basis([P("x0 - x1^2", K, 2), P("x1^3 - 2", K, 2)], Order.LEX)
    assert gb.order is Order.LEX
    assert any(g.variables_used() == {1} for g in gb.generators)


def test_standard_monomials_count_points():
    K = GF(7)
    gb = groebner_basis([P("x0^2 - 1", K, 2), P("x1^3 - x1", K, 2)])
    assert len(gb.standard_monomials()) == 6
    assert groebner_basis([P("x0", K, 2)]).standard_monomials() is None


def test_rejects_characteristic_zero():
    with pytest.raises(TypeError):
        groebner_basis([P("x0", QQ, 1)])
