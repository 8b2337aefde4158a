"""Local analysis: double points, regularity, quadrics over a DVR, vmin.

Quadrics have an explicit discriminant: det of the Hessian, halved when the
number of variables is odd.  It is built here once per size as a polynomial
with integer coefficients in the N coefficient indeterminates, which gives an
exact route to vmin via the Gauss valuation of Delta(b + pi*x).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import permutations

from .discriminant import discriminant, monomials
from .linalg import kernel_basis, rank
from .mpoly import MPoly, PointProj
from .rings import DVR, INF, ZZ, Ring
from .specialfiber import (NotZeroDimensional, SingularLocusReport, analyze_singular_locus, embed_poly,
                           local_multiplicity, singular_subscheme)


class NotSingular(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


UNDETERMINED = "undetermined"


# --- double points ---------------------------------------------------------------

class DoublePointKind(str, Enum):
    NONDEGENERATE = "Nondegenerate"
    ORDINARY_CHAR2_ODD = "OrdinaryChar2Odd"
    NOT_DOUBLE = "NotDouble"
    DEGENERATE = "Degenerate"


@dataclass
class DoublePointClass:
    kind: DoublePointKind
    hessian_rank: int
    local_multiplicity: int | float   # inf off an isolated point
    hessian_det: object = None   # advisory in characteristic 2

    def to_json(self) -> dict:
        mu = self.local_multiplicity
        return {"kind": self.kind.value, "hessian_rank": self.hessian_rank,
                "local_multiplicity": "inf" if mu == INF else mu}


def _hessian_of_quadratic_part(h: MPoly) -> list[list]:
    """Matrix (d^2 h / dy_i dy_j)(0), read off from the degree-2 part."""
    K = h.ring
    k = h.nvars
    H = [[K.zero] * k for _ in range(k)]
    for exp, c in h.homogeneous_part(2).terms.items():
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        if i == j:
            H[i][i] = K.add(H[i][i], K.mul(K.from_int(2), c))
        else:
            H[i][j] = K.add(H[i][j], c)
            H[j][i] = K.add(H[j][i], c)
    return H


def _field_det(K: Ring, M) -> object:
    A = [list(r) for r in M]
    n = len(A)
    det = K.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not K.is_zero(A[i][c])), None)
        if piv is None:
            return K.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = K.neg(det)
        det = K.mul(det, A[c][c])
        inv = K.inv(A[c][c])
        for i in range(c + 1, n):
            if not K.is_zero(A[i][c]):
                f = K.mul(A[i][c], inv)
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[c])]
    return det


def is_singular_point(f: MPoly, Q: PointProj) -> bool:
    g = embed_poly(f, Q.field)
    return all(Q.field.is_zero(p.evaluate(Q.coords)) for p in [g] + g.gradient())


def classify_double_point(f: MPoly, Q: PointProj) -> DoublePointClass:
    """Classify a singular point Q of the hypersurface f = 0 over a finite field."""
    if not is_singular_point(f, Q):
        raise NotSingular(f"{Q.format()} is not a singular point")
    K = Q.field
    g = embed_poly(f, K)
    h = g.dehomogenize(Q.chart, Q)
    k = h.nvars
    H = _hessian_of_quadratic_part(h)
    hrank = rank(K, H) if k else 0
    hdet = _field_det(K, H) if k else K.one
    try:
        mu = local_multiplicity(singular_subscheme(g), Q)
    except NotZeroDimensional:
        mu = INF  # Q lies on a positive-dimensional component
    q = h.homogeneous_part(2)
    if not q.terms:
        kind = DoublePointKind.NOT_DOUBLE
    elif K.characteristic != 2:
        kind = DoublePointKind.NONDEGENERATE if not K.is_zero(hdet) else DoublePointKind.DEGENERATE
    elif mu == 1:
        kind = DoublePointKind.NONDEGENERATE
    elif k % 2 == 1 and mu == 2 and hrank == k - 1 and _char2_residual_nonzero(q, H):
        kind = DoublePointKind.ORDINARY_CHAR2_ODD
    else:
        kind = DoublePointKind.DEGENERATE
    return DoublePointClass(kind, hrank, mu, hdet)


def _char2_residual_nonzero(q: MPoly, B) -> bool:
    """q is nonzero on the one-dimensional radical of its (alternating) polar form."""
    K = q.ring
    rad = kernel_basis(K, B, len(B))
    if len(rad) != 1:
        return False
    return not K.is_zero(q.evaluate(rad[0]))


# --- regularity of the total space -----------------------------------------------

def reduce_poly(f: MPoly) -> MPoly:
    """Coefficientwise residue of f over a DVR."""
    R = f.ring
    return f.map_coefficients(R.residue_field, R.residue)


def lift_poly(fbar: MPoly, R: DVR) -> MPoly:
    return fbar.map_coefficients(R, R.lift)


def is_regular_at(f: MPoly, Q: PointProj):
    """Whether the R-scheme f = 0 is regular at the special-fiber singular point Q.

    For a k-rational Q the local ring of P^n_R at Q is regular with maximal
    ideal (pi, y_1, ..., y_n); singularity of Q on the special fiber puts every
    linear coefficient of the local equation in (pi), so the scheme is regular
    at Q exactly when the constant term has valuation 1.  Points defined only
    over an extension of k give ``UNDETERMINED``.
    """
    R = f.ring
    if not isinstance(R, DVR):
        raise TypeError("is_regular_at needs a polynomial over a DVR")
    fbar = reduce_poly(f)
    if not is_singular_point(fbar, Q):
        raise NotSingular(f"{Q.format()} is not a singular point of the special fiber")
    if Q.field != R.residue_field:
        return UNDETERMINED
    lifted = tuple(R.lift(c) for c in Q.coords)
    return R.valuation(f.evaluate(lifted)) == 1


def _and3(values) -> object:
    values = list(values)
    if any(v is False for v in values):
        return False
    if any(v == UNDETERMINED for v in values):
        return UNDETERMINED
    return True


@dataclass
class Theorem11Report:
    valuation: object
    sing_report: SingularLocusReport
    classifications: list
    regular: object                 # True, False or "undetermined"
    nondeg_single_point: bool
    equivalence_holds: object       # True, False or "undetermined"
    char2_odd_violation: bool = False
    point_regularity: list = field(default_factory=list)

    def to_json(self) -> dict:
        v = self.valuation
        return {
            "valuation": "inf" if v == INF else v,
            "sing_report": self.sing_report.to_json(),
            "classifications": [c.to_json() for c in self.classifications],
            "regular": self.regular,
            "nondeg_single_point": self.nondeg_single_point,
            "equivalence_holds": self.equivalence_holds,
            "char2_odd_violation": self.char2_odd_violation,
        }


def check_theorem_1_1(f: MPoly, m_max: int = 4, seed: int = 0, **disc_kwargs) -> Theorem11Report:
    """Evaluate both sides of the v(Delta) = 1 characterisation for f over a DVR."""
    R = f.ring
    if not isinstance(R, DVR):
        raise TypeError("check_theorem_1_1 needs a polynomial over a DVR")
    v = discriminant(f, **disc_kwargs).valuation
    fbar = reduce_poly(f)
    sing = analyze_singular_locus(fbar, m_max=m_max, seed=seed)
    classes, regs = [], []
    if sing.dimension == 0:
        for _, P in sing.closed_points:
            classes.append(classify_double_point(fbar, P))
            regs.append(is_regular_at(f, P))
        regular = _and3(regs)
        if sing.points_possibly_incomplete and regular is True:
            regular = UNDETERMINED
    elif sing.dimension == -1:
        regular = True  # smooth over R
    else:
        pts = sing.rational_points or []
        regs = [is_regular_at(f, P) for P in pts]
        regular = False if any(r is False for r in regs) else UNDETERMINED
    nondeg = (sing.dimension == 0 and sing.r == 1 and sing.degree == 1
              and sing.closed_points[0][0] == 1
              and classes[0].kind is DoublePointKind.NONDEGENERATE)
    rhs = _and3([regular, nondeg])
    lhs = v == 1
    equivalence = UNDETERMINED if rhs == UNDETERMINED else (lhs == rhs)
    n = f.nvars - 1
    violation = R.residue_field.characteristic == 2 and n % 2 == 1 and v == 1
    if violation:
        equivalence = False
    return Theorem11Report(v, sing, classes, regular, nondeg, equivalence, violation, regs)


# --- quadratic forms over a DVR -------------------------------------------------

@dataclass
class QuadBlockDecomposition:
    ring: Ring
    rank1_blocks: list          # d_j
    rank2_blocks: list          # (a_i, b_i, c_i)
    transform: list             # columns = new basis vectors in the old coordinates

    def normal_form(self) -> MPoly:
        """sum a_i x_i^2 + b_i x_i y_i + c_i y_i^2 + sum d_j z_j^2 (pairs first)."""
        R = self.ring
        n = 2 * len(self.rank2_blocks) + len(self.rank1_blocks)
        terms: dict = {}

        def put(i, j, c):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = R.add(terms.get(tuple(e), R.zero), c)
        for k, (a, b, c) in enumerate(self.rank2_blocks):
            put(2 * k, 2 * k, a)
            put(2 * k, 2 * k + 1, b)
            put(2 * k + 1, 2 * k + 1, c)
        off = 2 * len(self.rank2_blocks)
        for j, d in enumerate(self.rank1_blocks):
            put(off + j, off + j, d)
        return MPoly(R, n, terms)


class DecompositionError(ArithmeticError):
    pass


def _polar_matrix(q: MPoly):
    """Gram matrix of beta(x, y) = q(x + y) - q(x) - q(y)."""
    R = q.ring
    n = q.nvars
    B = [[R.zero] * n for _ in range(n)]
    for exp, c in q.terms.items():
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        if len(idx) != 2:
            raise ValueError("not a quadratic form")
        i, j = idx
        if i == j:
            B[i][i] = R.add(B[i][i], R.mul(R.from_int(2), c))
        else:
            B[i][j] = R.add(B[i][j], c)
            B[j][i] = R.add(B[j][i], c)
    return B


def _bilinear(R, B, u, w):
    acc = R.zero
    for i, ui in enumerate(u):
        if R.is_zero(ui):
            continue
        row = B[i]
        for j, wj in enumerate(w):
            if not R.is_zero(wj) and not R.is_zero(row[j]):
                acc = R.add(acc, R.mul(ui, R.mul(row[j], wj)))
    return acc


def _axpy(R, u, a, w):
    """u - a*w."""
    return [R.sub(x, R.mul(a, y)) for x, y in zip(u, w)]


def decompose_quadratic_form(q: MPoly) -> QuadBlockDecomposition:
    """Orthogonal splitting of q over a DVR into blocks of rank 1 and 2.

    At each step the polar form restricted to the remaining lattice has some
    minimal valuation s.  A vector e with v(beta(e, e)) = s splits off as a
    rank-1 block; otherwise a pair c, d with v(beta(c, d)) = s gives a block
    whose Gram matrix has valuation exactly 2s, and the projection onto its
    orthogonal complement stays integral.  When the polar form vanishes
    (possible in characteristic 2) the remaining form is diagonal in any basis.
    """
    R = q.ring
    if not isinstance(R, DVR):
        raise TypeError("decompose_quadratic_form needs a form over a DVR")
    if not q.is_homogeneous(2) and q.terms:
        raise ValueError("not a quadratic form")
    n = q.nvars
    B = _polar_matrix(q)
    rem = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    rank1, rank2, cols1, cols2 = [], [], [], []
    val = R.valuation
    while rem:
        G = [[_bilinear(R, B, u, w) for w in rem] for u in rem]
        vals = [[val(x) for x in row] for row in G]
        s = min(min(row) for row in vals)
        if s == INF:
            for u in rem:
                rank1.append(q.evaluate(u))
                cols1.append(u)
            break
        m = len(rem)
        pick = next((i for i in range(m) if vals[i][i] == s), None)
        if pick is None and R.residue_field.characteristic != 2:
            # 2*beta(u_i, u_j) has valuation s, so u_i + u_j has unit-scale norm
            i, j = next((i, j) for i in range(m) for j in range(m) if vals[i][j] == s)
            rem[i] = [R.add(x, y) for x, y in zip(rem[i], rem[j])]
            if val(_bilinear(R, B, rem[i], rem[i])) != s:
                raise DecompositionError("unexpected valuation in odd residue characteristic")
            pick = i
        if pick is not None:
            e = rem[pick]
            bee = _bilinear(R, B, e, e)
            rem = [_axpy(R, u, R.div(_bilinear(R, B, u, e), bee), e)
                   for k, u in enumerate(rem) if k != pick]
            rank1.append(q.evaluate(e))
            cols1.append(e)
            continue
        i, j = next((i, j) for i in range(m) for j in range(m) if vals[i][j] == s)
        c, d = rem[i], rem[j]
        bcc, bcd, bdd = G[i][i], G[i][j], G[j][j]
        det = R.sub(R.mul(bcc, bdd), R.mul(bcd, bcd))
        new = []
        for k, u in enumerate(rem):
            if k in (i, j):
                continue
            uc, ud = G[k][i], G[k][j]
            a = R.div(R.sub(R.mul(bdd, uc), R.mul(bcd, ud)), det)
            b = R.div(R.sub(R.mul(bcc, ud), R.mul(bcd, uc)), det)
            new.append(_axpy(R, _axpy(R, u, a, c), b, d))
        rank2.append((q.evaluate(c), bcd, q.evaluate(d)))
        cols2.append((c, d))
        rem = new
    cols = [v for pair in cols2 for v in pair] + cols1
    T = [[cols[j][i] for j in range(n)] for i in range(n)]
    dec = QuadBlockDecomposition(R, rank1, rank2, T)
    if q.substitute_linear(T) != dec.normal_form():
        raise DecompositionError("reconstruction failed")
    return dec


def _unit_det(R, M) -> bool:
    n = len(M)
    A = [list(r) for r in M]
    for c in range(n):
        piv = next((i for i in range(c, n) if R.valuation(A[i][c]) == 0), None)
        if piv is None:
            return False
        A[c], A[piv] = A[piv], A[c]
        for i in range(c + 1, n):
            if not R.is_zero(A[i][c]):
                f = R.div(A[i][c], A[c][c])
                A[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(A[i], A[c])]
    return True


def transform_is_unimodular(dec: QuadBlockDecomposition) -> bool:
    return _unit_det(dec.ring, [list(r) for r in dec.transform])


# --- symbolic quadric discriminant -----------------------------------------------

@lru_cache(maxsize=None)
def quadric_coefficient_monomials(nvars: int) -> tuple:
    return tuple(monomials(nvars, 2))


@lru_cache(maxsize=None)
def symbolic_quadric_discriminant(nvars: int) -> MPoly:
    """Delta of the generic quadric in ``nvars`` variables, over ZZ, as a polynomial
    in the N = nvars(nvars+1)/2 coefficients (indexed like
    :func:`quadric_coefficient_monomials`)."""
    mons = quadric_coefficient_monomials(nvars)
    N = len(mons)
    index = {m: k for k, m in enumerate(mons)}

    def entry(i, j):
        e = [0] * nvars
        e[i] += 1
        e[j] += 1
        k = index[tuple(e)]
        return k, (2 if i == j else 1)
    total: dict = {}
    for perm in permutations(range(nvars)):
        sign = 1
        for a in range(nvars):
            for b in range(a + 1, nvars):
                if perm[a] > perm[b]:
                    sign = -sign
        exp = [0] * N
        c = sign
        for i in range(nvars):
            k, w = entry(i, perm[i])
            exp[k] += 1
            c *= w
        key = tuple(exp)
        total[key] = total.get(key, 0) + c
    if nvars % 2 == 1:
        total = {e: ZZ.div(c, 2) for e, c in total.items()}
    return MPoly(ZZ, N, total)


def quadric_coefficients(q: MPoly) -> list:
    return [q.coefficient(m) for m in quadric_coefficient_monomials(q.nvars)]


def quadric_from_coefficients(ring: Ring, nvars: int, coeffs) -> MPoly:
    return MPoly(ring, nvars, dict(zip(quadric_coefficient_monomials(nvars), coeffs)))


def symbolic_discriminant_over(ring: Ring, nvars: int) -> MPoly:
    return symbolic_quadric_discriminant(nvars).map_coefficients(ring, ring.from_int)


def quadric_discriminant(q: MPoly):
    """Delta(q) through the explicit determinant formula, in q's ring."""
    delta = symbolic_discriminant_over(q.ring, q.nvars)
    return delta.evaluate(quadric_coefficients(q))


def quadric_valuation_bound_check(q: MPoly, m_max: int = 4):
    """(v(Delta), dim of the special singular locus, inequality holds)."""
    R = q.ring
    v = R.valuation(quadric_discriminant(q))
    qbar = reduce_poly(q)
    dim = analyze_singular_locus(qbar, m_max=m_max).dimension if qbar.terms else q.nvars - 1
    ok = (v == 0) if dim == -1 else (v >= dim + 1)
    return v, dim, ok


# --- valuations of polynomial values ---------------------------------------------

def gauss_valuation(delta: MPoly):
    R = delta.ring
    if not delta.terms:
        raise ZeroPolynomial("Gauss valuation of the zero polynomial")
    return min(R.valuation(c) for c in delta.terms.values())


def vmin_of(delta: MPoly, b) -> object:
    """Minimal coefficient valuation of delta(b + pi*x) for a lift b."""
    R = delta.ring
    shifted = delta.taylor_shift(b).scale_variables(R.uniformizer)
    return gauss_valuation(shifted)


def vmin_exact_quadric(a, ring: DVR, nvars: int | None = None):
    """vmin of Delta at the residue quadric a (a quadratic MPoly over F_p, or its
    coefficient vector with ``nvars`` given)."""
    if isinstance(a, MPoly):
        nvars = a.nvars
        coeffs = quadric_coefficients(a)
    else:
        coeffs = list(a)
    if nvars is None or nvars > 5:
        raise ValueError("symbolic quadric path supports at most 5 variables")
    k = ring.residue_field
    b = [ring.lift(k.from_int(int(c))) for c in coeffs]
    delta = symbolic_discriminant_over(ring, nvars)
    if ring.valuation(delta.evaluate(b)) == 0:
        return 0
    return vmin_of(delta, b)


def multiplicity(f: MPoly, a) -> int:
    """Order of vanishing of f at the affine point a."""
    if not f.terms:
        raise ZeroPolynomial("multiplicity of the zero polynomial")
    return f.taylor_shift(list(a)).min_degree()


def vmin_sample(fbar: MPoly, trials: int, ring: DVR, seed: int = 0, **disc_kwargs):
    """Smallest v(Delta) over random lifts (canonical lift plus pi * random residues)."""
    k = fbar.ring
    rng = random.Random(seed)
    base = lift_poly(fbar, ring)
    mons = monomials(fbar.nvars, fbar.total_degree())
    best = INF
    for t in range(max(1, trials)):
        if t == 0:
            g = base
        else:
            pert = MPoly(ring, fbar.nvars,
                         {m: ring.mul(ring.uniformizer, ring.lift(k.random_element(rng)))
                          for m in mons})
            g = base + pert
        v = discriminant(g, **disc_kwargs).valuation
        best = min(best, v)
        if best == 0:
            break
    return best
