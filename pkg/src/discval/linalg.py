"""Exact linear algebra: fraction-free determinants and elimination over fields."""

from __future__ import annotations

from itertools import permutations

from .rings import ZZ, Ring

try:  # optional: GMP integers make the big Bareiss runs roughly 3x faster
    from gmpy2 import divexact as _divexact, mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

    def _divexact(a, b):
        return a // b


class SingularBlock(ArithmeticError):
    """The marked leading block of a Bareiss elimination has determinant zero."""


def bareiss(matrix, ring: Ring = ZZ, block: int = 0):
    """Fraction-free Bareiss elimination.

    Returns ``(block_det, det)`` where ``block_det`` is the determinant of
    the leading ``block x block`` principal submatrix.  Pivot rows for the
    first ``block`` steps are searched only inside the block, so the block
    determinant falls out of the same elimination.  Raises
    :class:`SingularBlock` when that block is singular.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return ring.one, ring.one
    if ring is ZZ:
        return _bareiss_int(matrix, block)
    A = [list(row) for row in matrix]
    add, sub, mul, div, is_zero = ring.add, ring.sub, ring.mul, ring.div, ring.is_zero
    sign = 1
    prev = ring.one
    block_det = ring.one
    for k in range(n):
        if is_zero(A[k][k]):
            limit = block if k < block else n
            for i in range(k + 1, limit):
                if not is_zero(A[i][k]):
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                if k < block:
                    raise SingularBlock(f"leading {block}x{block} block is singular")
                return block_det, ring.zero
        pivot = A[k][k]
        if k + 1 == block:
            block_det = pivot if sign > 0 else ring.neg(pivot)
        if k == n - 1:
            break
        rk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            if is_zero(aik):
                for j in range(k + 1, n):
                    if not is_zero(ri[j]):
                        ri[j] = div(mul(ri[j], pivot), prev)
            else:
                for j in range(k + 1, n):
                    ri[j] = div(sub(mul(ri[j], pivot), mul(aik, rk[j])), prev)
        prev = pivot
    det = A[n - 1][n - 1]
    return block_det, (det if sign > 0 else ring.neg(det))


def _bareiss_int(matrix, block: int):
    n = len(matrix)
    A = [[_mpz(x) for x in row] for row in matrix]
    sign = 1
    prev = _mpz(1)
    block_det = 1
    for k in range(n):
        if A[k][k] == 0:
            limit = block if k < block else n
            for i in range(k + 1, limit):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                if k < block:
                    raise SingularBlock(f"leading {block}x{block} block is singular")
                return int(block_det), 0
        pivot = A[k][k]
        if k + 1 == block:
            block_det = int(sign * pivot)
        if k == n - 1:
            break
        tail = A[k][k + 1:]
        k1 = k + 1
        for i in range(k1, n):
            ri = A[i]
            aik = ri[k]
            if aik:
                A[i] = ri[:k1] + [_divexact(a * pivot - aik * b, prev) for a, b in zip(ri[k1:], tail)]
            elif pivot != prev:
                A[i] = ri[:k1] + [_divexact(a * pivot, prev) if a else a for a in ri[k1:]]
        prev = pivot
    return int(block_det), int(sign * A[n - 1][n - 1])


def det(matrix, ring: Ring = ZZ):
    return bareiss(matrix, ring)[1]


def det_leibniz(matrix, ring: Ring = ZZ):
    """Permutation expansion; independent of elimination, for small matrices."""
    n = len(matrix)
    total = ring.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one
        for i in range(n):
            term = ring.mul(term, matrix[i][perm[i]])
            if ring.is_zero(term):
                break
        if ring.is_zero(term):
            continue
        total = ring.sub(total, term) if inversions % 2 else ring.add(total, term)
    return total


def rref(K: Ring, rows):
    """Reduced row echelon form over a field; returns (matrix, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not K.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        A[r] = [K.mul(x, inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and not K.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(K: Ring, rows) -> int:
    return len(rref(K, rows)[1])


def kernel_basis(K: Ring, rows, ncols: int) -> list[list]:
    """Basis of {x : rows * x = 0} over the field K."""
    R, pivots = rref(K, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [K.zero] * ncols
        v[fcol] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = K.neg(row[fcol])
        basis.append(v)
    return basis
