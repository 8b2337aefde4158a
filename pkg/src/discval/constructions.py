"""Families of forms with prescribed singularities, and their checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .discriminant import discriminant, monomials
from .linalg import kernel_basis, rank
from .mpoly import MPoly, PointProj
from .rings import DVR, TLocal, Ring
from .specialfiber import analyze_singular_locus


class NotFound(RuntimeError):
    pass


class ConstraintDimensionError(ArithmeticError):
    pass


def _evaluate_monomial(K: Ring, exp, point):
    acc = K.one
    for e, c in zip(exp, point):
        if e:
            acc = K.mul(acc, K.pow(c, e))
    return acc


@dataclass
class ConstraintSpace:
    """Forms of degree d singular at every given point, as a kernel over K."""

    field: Ring
    points: list
    d: int
    monomials: list
    matrix: list
    kernel: list

    @property
    def N(self) -> int:
        return len(self.monomials)

    @property
    def nvars(self) -> int:
        return len(self.monomials[0])

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)

    @property
    def rank(self) -> int:
        return self.N - self.kernel_dim

    @property
    def expected_nullity(self) -> int:
        return self.N - len(self.points) * self.nvars

    def form(self, coeffs) -> MPoly:
        return MPoly(self.field, self.nvars, dict(zip(self.monomials, coeffs)))

    def random_member(self, rng: random.Random) -> MPoly:
        K = self.field
        acc = [K.zero] * self.N
        for vec in self.kernel:
            c = K.random_element(rng)
            acc = [K.add(a, K.mul(c, v)) for a, v in zip(acc, vec)]
        return self.form(acc)

    def contains(self, f: MPoly) -> bool:
        K = self.field
        vec = [f.coefficient(m) for m in self.monomials]
        return all(K.is_zero(sum_row(K, row, vec)) for row in self.matrix)


def sum_row(K, row, vec):
    acc = K.zero
    for a, b in zip(row, vec):
        if not K.is_zero(a) and not K.is_zero(b):
            acc = K.add(acc, K.mul(a, b))
    return acc


def singularity_constraint_space(points: list[PointProj], d: int, field: Ring | None = None,
                                 check: bool = True) -> ConstraintSpace:
    """Linear conditions "f and every partial vanish at each P" on degree-d forms.

    Each point contributes n+2 rows (f itself and the n+1 partials); their rank
    is n+1 whatever the characteristic.  With ``check`` and d >= 2r - 1 the
    nullity must be N - r(n+1).
    """
    if not points:
        raise ValueError("need at least one point")
    K = field or points[0].field
    if len(set(points)) != len(points):
        raise ValueError("duplicate points")
    nvars = len(points[0].coords)
    mons = monomials(nvars, d)
    rows = []
    for P in points:
        x = P.coords
        rows.append([_evaluate_monomial(K, e, x) for e in mons])
        for i in range(nvars):
            row = []
            for e in mons:
                if e[i] == 0:
                    row.append(K.zero)
                    continue
                lower = e[:i] + (e[i] - 1,) + e[i + 1:]
                row.append(K.mul(K.from_int(e[i]), _evaluate_monomial(K, lower, x)))
            rows.append(row)
    ker = kernel_basis(K, rows, len(mons))
    space = ConstraintSpace(K, list(points), d, mons, rows, ker)
    if check and d >= 2 * len(points) - 1 and space.kernel_dim != space.expected_nullity:
        raise ConstraintDimensionError(
            f"nullity {space.kernel_dim} differs from N - r(n+1) = {space.expected_nullity}")
    return space


def isolated_singularities_example(n: int, d: int, points: list[PointProj], field: Ring | None = None,
                                   seed: int = 0, budget: int = 50):
    """A form of degree d whose singular locus is exactly the given rational points.

    Random members of the constraint space are tried until the singular
    subscheme has dimension 0, its rational points are the given ones, and
    their local multiplicities account for its full degree (so nothing else
    hides over extensions).  Returns (form, report).
    """
    r = len(points)
    if 2 * r > d - 1:
        raise ValueError(f"need r <= (d-1)/2, got r = {r}, d = {d}")
    if any(len(P.coords) != n + 1 for P in points):
        raise ValueError("points must lie in P^n")
    space = singularity_constraint_space(points, d, field, check=False)
    rng = random.Random(seed)
    target = set(points)
    for _ in range(budget):
        f = space.random_member(rng)
        if not f.terms:
            continue
        rep = analyze_singular_locus(f, m_max=1, seed=seed)
        if rep.dimension != 0 or rep.points_possibly_incomplete:
            continue
        if {P for _, P in rep.closed_points} == target:
            return f, rep
    raise NotFound(f"no witness among {budget} random members; try a larger field or seed")


def line_singular_family(n: int, d: int, c_list, g: MPoly | None = None,
                         field: Ring | None = None, seed: int = 0) -> MPoly:
    """h = x2 * prod(x1 - c_i x0) + g(x3, ..., xn).

    With g omitted: g = 0 for n = 2, x3^d for n = 3, otherwise a random
    smooth form found by discriminant search.
    """
    if field is None:
        raise ValueError("a coefficient field is required")
    K = field
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    cs = [K.from_int(c) if isinstance(c, int) else c for c in c_list]
    if len(cs) != d - 1:
        raise ValueError(f"need d - 1 = {d - 1} constants")
    if len(set(cs)) != len(cs):
        raise ValueError("the c_i must be distinct")
    N = n + 1
    x = [MPoly.var(K, N, i) for i in range(N)]
    h = x[2]
    for c in cs:
        h = h * (x[1] - x[0].scale(c))
    if n >= 3:
        if g is None:
            g = _smooth_form(K, n - 2, d, seed)
        if g.nvars != n - 2 or not g.is_homogeneous(d):
            raise ValueError("g must be a degree-d form in x3..xn")
        h = h + g.substitute(x[3:])
    return h


def _smooth_form(K: Ring, nvars: int, d: int, seed: int, tries: int = 200) -> MPoly:
    if nvars == 1:
        return MPoly.monomial(K, (d,))
    rng = random.Random(seed)
    mons = monomials(nvars, d)
    for _ in range(tries):
        g = MPoly(K, nvars, {m: K.random_element(rng) for m in mons})
        if g.is_homogeneous(d) and g.terms and not K.is_zero(discriminant(g).value):
            return g
    raise NotFound("no smooth form found")


class QuadricKind(str, Enum):
    SMOOTH_SPLIT = "smooth-split"
    SUM_OF_SQUARES = "sum-of-squares"
    NODAL_CONE = "nodal-cone"
    CHAR2_ODD_ODP = "char2-odd-odp"


def ring_characteristic(R: Ring) -> int:
    if isinstance(R, TLocal):
        return R.p
    return getattr(R, "characteristic", 0)


def quadric_normal_form(kind: QuadricKind | str, n: int, ring: Ring) -> MPoly:
    """Named quadrics in x0..xn (CHAR2_ODD_ODP is an affine model in n variables).

    * SMOOTH_SPLIT: x0x1 + x2x3 + ... (+ xn^2 when n is even)
    * SUM_OF_SQUARES: x0^2 + ... + xn^2 (characteristic not 2)
    * NODAL_CONE: a cone over a smooth quadric in x0..x(n-1) with vertex
      (0:...:0:1); in characteristic 2 this needs n even
    * CHAR2_ODD_ODP: x0x1 + ... + x(n-3)x(n-2) + x(n-1)^2, n odd
    """
    kind = QuadricKind(kind)
    char = ring_characteristic(ring)
    one = ring.one

    def split(nv, upto):
        terms = {}
        for i in range(0, upto - 1, 2):
            e = [0] * nv
            e[i] = e[i + 1] = 1
            terms[tuple(e)] = one
        return terms

    def square(nv, i):
        e = [0] * nv
        e[i] = 2
        return tuple(e)

    N = n + 1
    if kind is QuadricKind.SMOOTH_SPLIT:
        terms = split(N, N)
        if N % 2:
            terms[square(N, n)] = one
        return MPoly(ring, N, terms)
    if kind is QuadricKind.SUM_OF_SQUARES:
        if char == 2:
            raise ValueError("a sum of squares is a square in characteristic 2")
        return MPoly(ring, N, {square(N, i): one for i in range(N)})
    if kind is QuadricKind.NODAL_CONE:
        if char == 2:
            if n % 2:
                raise ValueError("in characteristic 2 a nondegenerate double point needs n even")
            return MPoly(ring, N, split(N, n))
        return MPoly(ring, N, {square(N, i): one for i in range(n)})
    if n % 2 == 0:
        raise ValueError("the characteristic-2 ordinary double point model needs n odd")
    terms = split(n, n - 1)
    terms[square(n, n - 1)] = one
    return MPoly(ring, n, terms)


def _coerce(R: Ring, a):
    if isinstance(a, (int, Fraction)):
        if isinstance(R, DVR):
            return R.coerce(a)
        return R.from_int(a) if isinstance(a, int) else R.from_fraction(a)
    return a


def weierstrass_cubic(a1, a2, a3, a4, a6, ring: Ring):
    """y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3 (x, y, z = x0, x1, x2)
    together with the textbook discriminant from b2, b4, b6, b8."""
    R = ring
    a1, a2, a3, a4, a6 = (_coerce(R, a) for a in (a1, a2, a3, a4, a6))
    neg = R.neg
    f = MPoly(R, 3, {
        (0, 2, 1): R.one, (1, 1, 1): a1, (0, 1, 2): a3, (3, 0, 0): neg(R.one),
        (2, 0, 1): neg(a2), (1, 0, 2): neg(a4), (0, 0, 3): neg(a6)})
    c = R.from_int
    mul, add, sub = R.mul, R.add, R.sub
    b2 = add(mul(a1, a1), mul(c(4), a2))
    b4 = add(mul(c(2), a4), mul(a1, a3))
    b6 = add(mul(a3, a3), mul(c(4), a6))
    b8 = sub(add(add(mul(mul(a1, a1), a6), mul(c(4), mul(a2, a6))), mul(a2, mul(a3, a3))),
             add(mul(a1, mul(a3, a4)), mul(a4, a4)))
    disc = add(sub(sub(neg(mul(mul(b2, b2), b8)), mul(c(8), R.pow(b4, 3))), mul(c(27), mul(b6, b6))),
               mul(c(9), mul(b2, mul(b4, b6))))
    return f, disc


def constraint_matrix_rank(space: ConstraintSpace) -> int:
    return rank(space.field, space.matrix)


def n_monomials(nvars: int, d: int) -> int:
    return comb(d + nvars - 1, nvars - 1)
