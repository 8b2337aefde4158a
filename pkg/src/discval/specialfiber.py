"""Singular subschemes of projective hypersurfaces over finite fields.

Points of a zero-dimensional singular locus are found algebraically: in
each affine stratum (first nonzero coordinate equal to 1) a lex Groebner
basis is triangularised by root finding over F_{q^m}.  The scheme degree
comes from counting standard monomials in an affine chart ``l = 1`` for a
linear form ``l`` that misses every point, so the search over extensions can
stop once the local multiplicities of the points found add up to it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import lcm

from . import upoly
from .groebner import (GroebnerBasis, Order, affine_dimension, buchberger, groebner_basis,
                       ideal_dimension)
from .linalg import rank
from .mpoly import MPoly, PointProj, grevlex_key
from .rings import GF, Ring

DEFAULT_MMAX = 4
DEFAULT_MAX_ENUM = 200_000


class BudgetExceeded(RuntimeError):
    pass


class NotZeroDimensional(ValueError):
    pass


# --- fields -------------------------------------------------------------------

def extension_of(K: Ring, m: int) -> Ring:
    """F_{q^m} for q = |K|."""
    return GF(K.p, K.m * m)


@lru_cache(maxsize=None)
def _embedding_root(K: Ring, L: Ring):
    rts = upoly.roots(L, tuple(K.modulus))
    if not rts:
        raise ValueError(f"{K} does not embed in {L}")
    return rts[0]


def field_embedding(K: Ring, L: Ring):
    """A field map K -> L (K must be a subfield of L up to isomorphism)."""
    if K == L or K.m == 1:
        return lambda a: a
    if L.m % K.m:
        raise ValueError(f"{K} does not embed in {L}")
    alpha = _embedding_root(K, L)
    powers = [L.one]
    for _ in range(K.m - 1):
        powers.append(L.mul(powers[-1], alpha))

    def emb(a):
        acc = L.zero
        for d, pw in zip(K.digits(a), powers):
            if d:
                acc = L.add(acc, L.mul(L.from_int(d), pw))
        return acc
    return emb


def embed_poly(f: MPoly, L: Ring) -> MPoly:
    if f.ring == L:
        return f
    return f.map_coefficients(L, field_embedding(f.ring, L))


def embed_point(P: PointProj, L: Ring) -> PointProj:
    if P.field == L:
        return P
    emb = field_embedding(P.field, L)
    return PointProj(L, tuple(emb(c) for c in P.coords))


def galois_orbit(P: PointProj, q: int) -> list[PointProj]:
    """Orbit of P under x -> x^q."""
    L = P.field
    orbit = [P]
    while True:
        nxt = PointProj(L, tuple(L.pow(c, q) for c in orbit[-1].coords))
        if nxt == P:
            return orbit
        orbit.append(nxt)


# --- ideals ---------------------------------------------------------------------

def singular_subscheme(f: MPoly) -> list[MPoly]:
    """Generators f, df/dx_0, ..., df/dx_n (f is kept even when Euler makes it redundant)."""
    if not f.is_homogeneous():
        raise ValueError("singular_subscheme needs a homogeneous polynomial")
    return [f] + f.gradient()


def _specialize_last(g: MPoly, a) -> MPoly:
    """Substitute the value a for the last variable."""
    L = g.ring
    out: dict = {}
    for exp, c in g.terms.items():
        v = L.mul(c, L.pow(a, exp[-1]))
        key = exp[:-1]
        out[key] = L.add(out.get(key, L.zero), v)
    return MPoly(L, g.nvars - 1, out)


def affine_solutions(gens: list[MPoly], seed: int = 0) -> list[tuple]:
    """All solutions in L^k of a zero-dimensional system over the finite field L."""
    gens = [g for g in gens if g.terms]
    k = gens[0].nvars if gens else 0
    if not gens:
        if k == 0:
            return [()]
        raise NotZeroDimensional("no equations")
    L = gens[0].ring
    if k == 0:
        return []  # a nonzero constant
    gb = groebner_basis(gens, Order.LEX)
    if gb.is_unit():
        return []
    last = k - 1
    uni = [g for g in gb.generators if g.variables_used() <= {last}]
    if not uni:
        raise NotZeroDimensional("system has positive-dimensional solution set")
    u = uni[-1]
    coeffs = [L.zero] * (u.total_degree() + 1)
    for exp, c in u.terms.items():
        coeffs[exp[last]] = c
    sols = []
    for a in upoly.roots(L, tuple(coeffs), seed=seed):
        sub = [_specialize_last(g, a) for g in gb.generators]
        sub = [g for g in sub if g.terms]
        if k == 1:
            if not sub:
                sols.append((a,))
            continue
        if not sub:
            raise NotZeroDimensional("system has positive-dimensional solution set")
        for s in affine_solutions(sub, seed):
            sols.append(s + (a,))
    return sols


def projective_solutions(gens: list[MPoly], L: Ring, seed: int = 0) -> list[PointProj]:
    """Points of the zero-dimensional projective scheme V(gens) over L."""
    gens = [embed_poly(g, L) for g in gens]
    N = gens[0].nvars
    pts = []
    for chart in range(N):
        k = N - chart - 1
        images = [MPoly.zero(L, k)] * chart + [MPoly.constant(L, k, L.one)]
        images += [MPoly.var(L, k, j) for j in range(k)]
        sub = [g.substitute(images) for g in gens]
        sub = [g for g in sub if g.terms]
        if k == 0:
            if not sub:
                pts.append(PointProj(L, (L.zero,) * chart + (L.one,)))
            continue
        if not sub:
            raise NotZeroDimensional("a whole stratum is contained in the locus")
        for s in affine_solutions(sub, seed):
            pts.append(PointProj(L, (L.zero,) * chart + (L.one,) + tuple(s)))
    return pts


def _standard_count(gens: list[MPoly]) -> int | None:
    gb = groebner_basis(gens)
    std = gb.standard_monomials()
    return None if std is None else len(std)


def _origin_isolated(hs: list[MPoly], k: int) -> bool:
    """Whether the origin is an isolated point of V(hs) in affine k-space.

    V(J : y_i^oo) is the closure of V(J) minus {y_i = 0}; a component of
    positive dimension through 0 survives in one of these for some i.
    """
    L = hs[0].ring
    if affine_dimension(groebner_basis(hs).leading_monomials, k) <= 0:
        return True
    key = lambda e: (e[k], grevlex_key(e[:k]))  # noqa: E731  (t eliminated first)
    base = [{e + (0,): c for e, c in h.terms.items()} for h in hs]
    for i in range(k):
        y_i_t = tuple(int(j == i) for j in range(k)) + (1,)
        rab = {(0,) * (k + 1): L.one, y_i_t: L.neg(L.one)}
        G = buchberger(L, base + [rab], k + 1, key)
        sat = [g for g in G if all(e[k] == 0 for e in g)]
        if all(L.is_zero(g.get((0,) * (k + 1), L.zero)) for g in sat):
            return False
    return True


def local_multiplicity(gens: list[MPoly], P: PointProj, max_order: int = 40) -> int:
    """Length of the local ring of V(gens) at P: dim k[y]/(J + m^N) once stable."""
    L = P.field
    hs = [embed_poly(g, L).dehomogenize(P.chart, P) for g in gens]
    hs = [h for h in hs if h.terms]
    k = gens[0].nvars - 1
    if any(h.min_degree() == 0 for h in hs):
        return 0
    if k and not _origin_isolated(hs, k):
        raise NotZeroDimensional("point is not isolated in the locus")
    from .discriminant import monomials
    prev = None
    for N in range(1, max_order + 1):
        power = [MPoly.monomial(L, e) for e in monomials(k, N)] if k else []
        count = _standard_count(hs + power) if k else 1
        if count == prev:
            return count
        prev = count
    raise NotZeroDimensional("point is not isolated in the locus")


def scheme_degree(gens: list[MPoly], seed: int = 0, attempts: int = 30) -> tuple[int, Ring]:
    """Degree of the zero-dimensional projective scheme V(gens).

    Returns (degree, field over which the generic chart was found).
    """
    K = gens[0].ring
    N = gens[0].nvars
    rng = random.Random(seed)
    for m in range(1, 8):
        L = extension_of(K, m) if m > 1 else K
        lifted = [embed_poly(g, L) for g in gens]
        for _ in range(attempts):
            c = [L.random_element(rng) for _ in range(N - 1)]
            ell = MPoly(L, N, {tuple(int(i == j) for j in range(N)): (L.one if i == 0 else c[i - 1])
                               for i in range(N)})
            if ideal_dimension(groebner_basis(lifted + [ell])) != -1:
                continue
            k = N - 1
            x0 = MPoly.constant(L, k, L.one)
            for j in range(k):
                x0 = x0 - MPoly.var(L, k, j).scale(c[j])
            images = [x0] + [MPoly.var(L, k, j) for j in range(k)]
            count = _standard_count([g.substitute(images) for g in lifted])
            if count is None:
                raise NotZeroDimensional("scheme is not zero-dimensional")
            return count, L
    raise RuntimeError("no linear form avoiding the scheme was found")


def enumerate_projective_points(gens: list[MPoly], L: Ring | None = None,
                                max_enum: int = DEFAULT_MAX_ENUM) -> list[PointProj]:
    """Brute-force scan of P^n(L) for common zeros; independent of Groebner bases."""
    L = L or gens[0].ring
    gens = [embed_poly(g, L) for g in gens]
    N = gens[0].nvars
    q = L.order
    total = (q ** N - 1) // (q - 1)
    if total > max_enum:
        raise BudgetExceeded(f"{total} points of P^{N - 1}(F_{q}) exceed budget {max_enum}")
    pts = []
    for chart in range(N):
        prefix = (L.zero,) * chart + (L.one,)
        for rest in product(L.elements(), repeat=N - chart - 1):
            x = prefix + rest
            if all(L.is_zero(g.evaluate(x)) for g in gens):
                pts.append(PointProj(L, x))
    return pts


# --- span and lines ---------------------------------------------------------------

def span_dimension(points: list[PointProj]) -> int:
    """Projective dimension of the span of the given geometric points (-1 if none)."""
    if not points:
        return -1
    p = points[0].field.p
    M = lcm(*(P.field.m for P in points))
    L = GF(p, M)
    rows = [list(embed_point(P, L).coords) for P in points]
    return rank(L, rows) - 1


def _line_pullback_vanishes(gens: list[MPoly], P, Q) -> bool:
    K = gens[0].ring
    images = []
    for a, b in zip(P, Q):
        images.append(MPoly(K, 2, {(1, 0): a, (0, 1): b}))
    return all(not g.substitute(images).terms for g in gens)


def find_line(gens: list[MPoly], points: list[PointProj]):
    """A line (pair of points) on which every generator vanishes identically, or None.

    Candidates are lines through pairs of the given rational points and the
    coordinate lines.
    """
    K = gens[0].ring
    N = gens[0].nvars
    cands = [tuple(P.coords) for P in points if P.field == K]
    for i in range(N):
        e = tuple(K.one if j == i else K.zero for j in range(N))
        if e not in cands:
            cands.append(e)
    seen = set()
    for P, Q in combinations(cands, 2):
        if PointProj(K, P) == PointProj(K, Q):
            continue
        key = frozenset((PointProj(K, P), PointProj(K, Q)))
        if key in seen:
            continue
        seen.add(key)
        if _line_pullback_vanishes(gens, P, Q):
            return PointProj(K, P), PointProj(K, Q)
    return None


# --- report -----------------------------------------------------------------------

@dataclass
class SingularLocusReport:
    field: Ring
    dimension: int
    closed_points: list = field(default_factory=list)   # (degree, PointProj)
    multiplicities: list = field(default_factory=list)  # local length at each closed point
    r: int | None = None
    degree: int | None = None
    span_dim: int | None = None
    contains_line: object = False                      # True, False or "unknown"
    points_possibly_incomplete: bool = False
    rational_points: list | None = None
    m_searched: int = 0

    @property
    def is_empty(self) -> bool:
        return self.dimension == -1

    def to_json(self) -> dict:
        return {
            "field": self.field.spec,
            "dimension": self.dimension,
            "closed_points": [{"degree": m, "point": P.format(), "field": P.field.spec,
                               "multiplicity": mu}
                              for (m, P), mu in zip(self.closed_points, self.multiplicities)],
            "r": self.r,
            "degree": self.degree,
            "span_dim": self.span_dim,
            "contains_line": self.contains_line,
            "points_possibly_incomplete": self.points_possibly_incomplete,
            "rational_points": None if self.rational_points is None
            else [P.format() for P in self.rational_points],
        }


def analyze_singular_locus(f: MPoly, m_max: int = DEFAULT_MMAX, seed: int = 0,
                           max_enum: int = DEFAULT_MAX_ENUM) -> SingularLocusReport:
    """Dimension, closed points, r, degree, span and line data of V(f, grad f)."""
    K = f.ring
    if not getattr(K, "characteristic", 0):
        raise TypeError("special-fiber analysis needs a finite field")
    if f.total_degree() < 1:
        raise ValueError("need a form of positive degree")
    gens = singular_subscheme(f)
    gb = groebner_basis(gens)
    dim = ideal_dimension(gb)
    if dim == -1:
        return SingularLocusReport(K, -1, r=0, degree=0, span_dim=-1,
                                   contains_line=False, rational_points=[])
    if dim >= 1:
        try:
            rat = enumerate_projective_points(gb.generators, K, max_enum)
        except BudgetExceeded:
            rat = None
        line = find_line(gb.generators, rat or [])
        return SingularLocusReport(
            K, dim, span_dim=span_dimension(rat) if rat is not None else None,
            contains_line=True if line else "unknown", rational_points=rat)
    deg, _ = scheme_degree(gb.generators, seed)
    q = K.order
    closed, mults = [], []
    found = 0
    m_done = 0
    for m in range(1, m_max + 1):
        if found == deg:
            break
        L = extension_of(K, m) if m > 1 else K
        seen = set()
        for P in projective_solutions(gb.generators, L, seed):
            if P in seen:
                continue
            orbit = galois_orbit(P, q)
            seen.update(orbit)
            if len(orbit) != m:
                continue  # defined over a smaller field; counted there
            rep = min(orbit, key=lambda Q: Q.coords)
            mu = local_multiplicity(gb.generators, rep)
            closed.append((m, rep))
            mults.append(mu)
            found += m * mu
        m_done = m
    geometric = [Q for (m, P) in closed for Q in galois_orbit(P, q)]
    rat = [P for (m, P) in closed if m == 1]
    return SingularLocusReport(
        K, 0, closed, mults, r=len(closed), degree=deg,
        span_dim=span_dimension(geometric), contains_line=False,
        points_possibly_incomplete=found < deg, rational_points=rat, m_searched=m_done)
