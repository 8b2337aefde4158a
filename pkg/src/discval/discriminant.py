"""Discriminants of homogeneous forms via Macaulay resultants.

The discriminant of a degree-d form f in n+1 variables is computed as

    Delta(f) = Res(df/dx_0, ..., df/dx_n) / d^a,
    a = ((d-1)^(n+1) - (-1)^(n+1)) / d,

with the resultant normalized by Res(x_0^e, ..., x_n^e) = 1.  For d = 2 this
is det(Hessian) for n odd and det(Hessian)/2 for n even.  All arithmetic is
done over Z (or Z[t] for rational-function and extension-field inputs) after
clearing denominators, then mapped back into the input ring.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

from . import upoly
from .linalg import SingularBlock, bareiss
from .mpoly import MPoly
from .rings import (INF, ZT, ZZ, DVR, ExtensionField, PLocal, PrimeField,
                    RationalField, Ring, TLocal)

MAX_MATRIX = 2000
RETRIES = 8


class DegenerateMinor(ArithmeticError):
    """Macaulay's extraneous minor vanished for this coefficient configuration."""


class InvalidInput(ValueError):
    pass


class NonIntegralNormalization(ArithmeticError):
    """Res(partials) was not divisible by d^a; indicates a construction bug."""


class SizeLimitExceeded(ValueError):
    pass


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in grlex-descending order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def discriminant_degree(n: int, d: int) -> int:
    return (n + 1) * (d - 1) ** n


def normalization_exponent(n: int, d: int) -> int:
    num = (d - 1) ** (n + 1) - (-1) ** (n + 1)
    assert num % d == 0
    return num // d


def macaulay_size(n: int, e: int) -> int:
    D = (n + 1) * (e - 1) + 1
    return comb(D + n, n)


@dataclass
class MacaulayMatrix:
    monomials: list                 # column (and row) labels, non-reduced first
    rows: list                      # (i, alpha): row is x^alpha * g_i
    entries: list                   # square matrix of raw ring elements
    n_nonreduced: int               # size of the extraneous minor M'

    @property
    def size(self) -> int:
        return len(self.monomials)


def macaulay_matrix(polys: list[MPoly], max_size: int = MAX_MATRIX) -> MacaulayMatrix:
    nvars = len(polys)
    if nvars == 0 or any(g.nvars != nvars for g in polys):
        raise InvalidInput("need n+1 forms in n+1 variables")
    degs = {g.total_degree() for g in polys}
    if len(degs) != 1 or not all(g.is_homogeneous() for g in polys):
        raise InvalidInput("forms must be homogeneous of one common degree")
    e = degs.pop()
    if e < 1:
        raise InvalidInput("forms must have positive degree (or be nonzero)")
    n = nvars - 1
    size = macaulay_size(n, e)
    if size > max_size:
        raise SizeLimitExceeded(f"Macaulay matrix of size {size} exceeds limit {max_size}")
    D = (n + 1) * (e - 1) + 1
    monos = monomials(nvars, D)
    nonreduced = [m for m in monos if sum(1 for a in m if a >= e) >= 2]
    reduced = [m for m in monos if sum(1 for a in m if a >= e) == 1]
    order = nonreduced + reduced
    col = {m: j for j, m in enumerate(order)}
    ring = polys[0].ring
    rows, entries = [], []
    for m in order:
        i = next(k for k, a in enumerate(m) if a >= e)
        alpha = list(m)
        alpha[i] -= e
        alpha = tuple(alpha)
        row = [ring.zero] * size
        for exp, c in polys[i].terms.items():
            row[col[tuple(a + b for a, b in zip(exp, alpha))]] = c
        rows.append((i, alpha))
        entries.append(row)
    return MacaulayMatrix(order, rows, entries, len(nonreduced))


def _resultant_integral(polys: list[MPoly], max_size: int):
    """Macaulay quotient over ZZ or ZT (exact domains)."""
    ring = polys[0].ring
    if any(not g.terms for g in polys):
        return ring.zero  # a vanishing form has common zeros with any others
    M = macaulay_matrix(polys, max_size)
    try:
        minor, full = bareiss(M.entries, ring, block=M.n_nonreduced)
    except SingularBlock:
        raise DegenerateMinor("extraneous Macaulay minor vanishes") from None
    return ring.div(full, minor)


# --- moving coefficients into an exact domain -------------------------------

def _integral_model(f: MPoly):
    """Return (g, scale) with g over ZZ or ZT and f = g / scale coefficientwise
    (scale is a ring element; None when no scaling was needed)."""
    R = f.ring
    if R is ZZ:
        return f, None
    if isinstance(R, (RationalField, PLocal)):
        den = 1
        for c in f.terms.values():
            den = lcm(den, Fraction(c).denominator)
        g = f.map_coefficients(ZZ, lambda c: int(Fraction(c) * den))
        return g, den
    if isinstance(R, PrimeField):
        return f.map_coefficients(ZZ, int), None
    if isinstance(R, ExtensionField):
        return f.map_coefficients(ZT, lambda c: upoly.trim(R.digits(c))), None
    if isinstance(R, TLocal):
        K = R.K
        den = (1,)
        for _, d in f.terms.values():
            den = upoly.pmul(K, den, upoly.pdivmod(K, d, upoly.pgcd(K, den, d))[0])
            den = upoly.pmonic(K, den)
        def lift(c):
            num = upoly.pmul(K, c[0], upoly.pdivmod(K, den, c[1])[0])
            return upoly.trim(num)
        return f.map_coefficients(ZT, lift), R.from_poly(den)
    raise InvalidInput(f"unsupported coefficient ring {R}")


def _back_to_ring(R: Ring, value):
    """Map an element of ZZ or ZT into R (a ring homomorphism)."""
    if R is ZZ:
        return value
    if isinstance(R, (RationalField, PLocal)):
        return Fraction(value)
    if isinstance(R, PrimeField):
        return value % R.p
    if isinstance(R, ExtensionField):
        gen = R.p  # the generator g is encoded as p
        acc = R.zero
        for c in reversed(value):
            acc = R.add(R.mul(acc, gen), R.from_int(c))
        return acc
    if isinstance(R, TLocal):
        return R.from_poly(upoly.zmod(value, R.p))
    raise InvalidInput(f"unsupported coefficient ring {R}")


def _input_seed(f: MPoly, seed: int | None) -> int:
    if seed is not None:
        return seed
    digest = hashlib.sha256(f"{f.ring.spec}|{f.format()}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_unimodular(size: int, rng: random.Random) -> list[list[int]]:
    """Random integer matrix of determinant +-1 (product of elementary moves)."""
    T = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(3 * size):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        T[i] = [a + c * b for a, b in zip(T[i], T[j])]
    perm = list(range(size))
    rng.shuffle(perm)
    return [T[k] for k in perm]


def macaulay_resultant(polys: list[MPoly], max_size: int = MAX_MATRIX):
    """Res(g_0, ..., g_n) as an element of the common coefficient ring.

    Raises :class:`DegenerateMinor` if Macaulay's minor vanishes; no retry is
    attempted here because a change of variables alters Res by det(T)^(e^n).
    """
    if not polys:
        raise InvalidInput("no forms")
    R = polys[0].ring
    if any(g.ring != R for g in polys):
        raise TypeError("forms over different rings")
    e = max(g.total_degree() for g in polys)
    n = len(polys) - 1
    models = [_integral_model(g) for g in polys]
    domain = models[0][0].ring
    if any(m[0].ring != domain for m in models):
        raise InvalidInput("inconsistent integral models")
    value = _resultant_integral([m[0] for m in models], max_size)
    out = _back_to_ring(R, value)
    if R.is_zero(out):
        return out
    for _, scale in models:
        if scale is not None:
            s = R.from_int(scale) if isinstance(scale, int) else scale
            out = R.div(out, R.pow(s, e ** n))
    return out


@dataclass
class DiscriminantResult:
    value: object
    ring: Ring
    n: int
    d: int
    valuation: object = None
    retries: int = 0
    transform: list = field(default=None, repr=False)

    @property
    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def formatted(self) -> str:
        return self.ring.format(self.value)

    def to_json(self) -> dict:
        v = self.valuation
        return {
            "value": self.formatted(),
            "valuation": "inf" if v == INF else v,
            "n": self.n,
            "d": self.d,
            "ring": self.ring.spec,
            "retries": self.retries,
        }


def discriminant(f: MPoly, *, max_size: int = MAX_MATRIX, seed: int | None = None,
                 retries: int = RETRIES) -> DiscriminantResult:
    """Discriminant of a homogeneous form over ZZ, QQ, a DVR or a finite field.

    Finite-field and Z[t] inputs go through a characteristic-zero lift, so
    the division by d^a is exact even when p divides d.
    """
    nvars = f.nvars
    n = nvars - 1
    d = f.total_degree()
    if n < 1:
        raise InvalidInput("need at least two variables")
    if f.is_zero():
        raise InvalidInput("zero polynomial")
    if d < 2 or not f.is_homogeneous():
        raise InvalidInput("need a homogeneous form of degree >= 2")
    size = macaulay_size(n, d - 1)
    if size > max_size:
        raise SizeLimitExceeded(f"Macaulay matrix of size {size} exceeds limit {max_size}")
    R = f.ring
    g, scale = _integral_model(f)
    domain = g.ring
    rng = random.Random(_input_seed(f, seed))
    attempt, T = 0, None
    h = g
    while True:
        try:
            res = _resultant_integral(h.gradient(), max_size)
            break
        except DegenerateMinor:
            if attempt >= retries:
                raise DegenerateMinor(
                    f"extraneous minor vanished after {retries} unimodular retries") from None
            attempt += 1
            T = random_unimodular(nvars, rng)
            h = g.substitute_linear([[domain.from_int(c) for c in row] for row in T])
    a = normalization_exponent(n, d)
    try:
        value = domain.div(res, domain.from_int(d ** a))
    except ArithmeticError:
        raise NonIntegralNormalization(
            f"Res(partials) is not divisible by {d}^{a}") from None
    out = _back_to_ring(R, value)
    if scale is not None:
        s = R.from_int(scale) if isinstance(scale, int) else scale
        out = R.div(out, R.pow(s, discriminant_degree(n, d)))
    val = R.valuation(out) if isinstance(R, DVR) else None
    return DiscriminantResult(out, R, n, d, val, attempt, T)


def discriminant_valuation(f: MPoly, **kwargs):
    """v(Delta(f)) for f over a DVR; ``INF`` when Delta(f) = 0."""
    if not isinstance(f.ring, DVR):
        raise InvalidInput("valuation needs a DVR coefficient ring")
    return discriminant(f, **kwargs).valuation


def quadric_hessian_matrix(f: MPoly) -> list[list]:
    """(d^2 f / dx_i dx_j) for a quadratic form, as raw ring elements."""
    n = f.nvars
    R = f.ring
    H = [[R.zero] * n for _ in range(n)]
    for exp, c in f.terms.items():
        idx = [i for i, k in enumerate(exp) for _ in range(k)]
        if len(idx) != 2:
            raise InvalidInput("not a quadratic form")
        i, j = idx
        if i == j:
            H[i][i] = R.add(H[i][i], R.mul(R.from_int(2), c))
        else:
            H[i][j] = R.add(H[i][j], c)
            H[j][i] = R.add(H[j][i], c)
    return H


__all__ = [
    "DegenerateMinor", "InvalidInput", "NonIntegralNormalization", "SizeLimitExceeded",
    "MacaulayMatrix", "DiscriminantResult", "macaulay_matrix", "macaulay_resultant",
    "discriminant", "discriminant_valuation", "discriminant_degree",
    "normalization_exponent", "monomials", "random_unimodular", "quadric_hessian_matrix",
]
