import random

import pytest
from hypothesis import given, strategies as st

from discval.linalg import SingularBlock, bareiss, det, det_leibniz, kernel_basis, rank, rref
from discval.rings import GF, ZT, ZZ


@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(M):
    assert det(M, ZZ) == det_leibniz(M, ZZ)


def test_bareiss_over_zt_matches_leibniz():
    rng = random.Random(0)
    for _ in range(30):
        n = rng.randint(1, 4)
        M = [[_strip([rng.randint(-3, 3) for _ in range(rng.randint(0, 3))]) for _ in range(n)]
             for _ in range(n)]
        assert bareiss(M, ZT)[1] == det_leibniz(M, ZT)


def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def test_block_determinant():
    M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    block, full = bareiss(M, ZZ, block=2)
    assert block == 5 and full == det_leibniz(M)
    with pytest.raises(SingularBlock):
        bareiss([[0, 0, 1], [0, 0, 1], [1, 1, 1]], ZZ, block=2)


def test_rank_and_kernel_over_finite_field():
    K = GF(7)
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(K, rows) == 2
    ker = kernel_basis(K, rows, 3)
    assert len(ker) == 1
    v = ker[0]
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) % 7 == 0
    R, pivots = rref(K, rows)
    assert pivots == [0, 1] and R[0][0] == 1 and R[1][1] == 1
