"""Buchberger's algorithm over finite fields.

Internally a polynomial is a dict ``{exponent tuple: coefficient}`` with
coefficients in a finite-field object from :mod:`discval.rings`; the public
entry points accept and return :class:`~discval.mpoly.MPoly`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .mpoly import MPoly, grevlex_key
from .rings import Ring


class Order(str, Enum):
    GREVLEX = "grevlex"
    LEX = "lex"


def _lex_key(exp):
    return exp


def order_key(order: Order | str):
    return _lex_key if Order(order) is Order.LEX else grevlex_key


# --- dict-level helpers ------------------------------------------------------

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(K: Ring, f: dict, key) -> dict:
    lm = max(f, key=key)
    inv = K.inv(f[lm])
    return {e: K.mul(c, inv) for e, c in f.items()}


def _sub_multiple(K: Ring, f: dict, c, shift, g: dict, skip=None):
    """f -= c * x^shift * g in place."""
    for e, gc in g.items():
        if e == skip:
            continue
        m = tuple(a + b for a, b in zip(e, shift))
        v = K.sub(f.get(m, K.zero), K.mul(c, gc))
        if K.is_zero(v):
            f.pop(m, None)
        else:
            f[m] = v


def _normal_form(K: Ring, f: dict, G: list, key) -> dict:
    """Fully reduce f by the monic polynomials G = [(lm, poly), ...]."""
    f = dict(f)
    rem: dict = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for glm, g in G:
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                del f[lm]
                _sub_multiple(K, f, c, shift, g, skip=glm)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(K: Ring, f, g, key):
    (flm, fp), (glm, gp) = f, g
    L = _lcm(flm, glm)
    out: dict = {}
    _sub_multiple(K, out, K.neg(K.one), tuple(a - b for a, b in zip(L, flm)), fp)
    _sub_multiple(K, out, K.one, tuple(a - b for a, b in zip(L, glm)), gp)
    return out


def buchberger(K: Ring, polys: list[dict], nvars: int, key) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    G: list = []
    one = (0,) * nvars
    for p in polys:
        p = {e: c for e, c in p.items() if not K.is_zero(c)}
        if not p:
            continue
        p = _normal_form(K, p, G, key)
        if not p:
            continue
        p = _monic(K, p, key)
        G.append((max(p, key=key), p))
    if any(lm == one for lm, _ in G):
        return [{one: K.one}]
    pairs = set()
    heap: list = []

    def add_pair(i, j):
        pairs.add((i, j))
        heapq.heappush(heap, (key(_lcm(G[i][0], G[j][0])), i, j))
    for i, j in combinations(range(len(G)), 2):
        add_pair(i, j)
    while pairs:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        L = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        if any(k not in (i, j) and _divides(G[k][0], L)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs for k in range(len(G))):
            continue  # chain criterion
        s = _normal_form(K, _spoly(K, G[i], G[j], key), G, key)
        if not s:
            continue
        s = _monic(K, s, key)
        lm = max(s, key=key)
        if lm == one:
            return [{one: K.one}]
        new = len(G)
        G.append((lm, s))
        for k in range(new):
            add_pair(k, new)
    # minimalize, then interreduce
    minimal = []
    for idx, (lm, p) in enumerate(G):
        if any(_divides(olm, lm) and (olm != lm or j < idx)
               for j, (olm, _) in enumerate(G) if j != idx):
            continue
        minimal.append((lm, p))
    reduced = []
    for idx, (lm, p) in enumerate(minimal):
        others = [g for j, g in enumerate(minimal) if j != idx]
        tail = dict(p)
        c = tail.pop(lm)
        tail = _normal_form(K, tail, others, key)
        tail[lm] = c
        reduced.append((lm, tail))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return [p for _, p in reduced]


# --- public API --------------------------------------------------------------

@dataclass
class GroebnerBasis:
    generators: list
    order: Order
    field: Ring
    nvars: int
    reduced: bool = True
    _dicts: list = field(default=None, repr=False)

    def __post_init__(self):
        if self._dicts is None:
            self._dicts = [dict(g.terms) for g in self.generators]
        self._key = order_key(self.order)
        self._lead = [(max(p, key=self._key), p) for p in self._dicts]

    @property
    def leading_monomials(self) -> list[tuple]:
        return [lm for lm, _ in self._lead]

    def is_unit(self) -> bool:
        return any(sum(lm) == 0 for lm in self.leading_monomials)

    def normal_form(self, f: MPoly) -> MPoly:
        rem = _normal_form(self.field, f.terms, self._lead, self._key)
        return MPoly(self.field, self.nvars, rem, _clean=True)

    def contains(self, f: MPoly) -> bool:
        return not self.normal_form(f).terms

    def standard_monomials(self, limit: int = 100000):
        """Monomials outside the leading ideal, or None if there are infinitely many
        (or more than ``limit``)."""
        lms = self.leading_monomials
        if self.is_unit():
            return []
        for i in range(self.nvars):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                return None
        out = []
        stack = [(0,) * self.nvars]
        seen = set(stack)
        while stack:
            m = stack.pop()
            if any(_divides(lm, m) for lm in lms):
                continue
            out.append(m)
            if len(out) > limit:
                return None
            for i in range(self.nvars):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return sorted(out, key=self._key)


def groebner_basis(generators: list[MPoly], order: Order | str = Order.GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated over a finite field."""
    if not generators:
        raise ValueError("need at least one generator to fix the ring")
    K = generators[0].ring
    n = generators[0].nvars
    for g in generators:
        if g.ring != K or g.nvars != n:
            raise ValueError("generators must share field and variable count")
    if not getattr(K, "is_field", False) or not getattr(K, "characteristic", 0):
        raise TypeError("Groebner bases are computed over finite fields only")
    order = Order(order)
    dicts = buchberger(K, [g.terms for g in generators], n, order_key(order))
    gens = [MPoly(K, n, d, _clean=True) for d in dicts]
    return GroebnerBasis(gens, order, K, n, True, dicts)


def affine_dimension(leading: list[tuple], nvars: int) -> int:
    """Krull dimension of k[x]/I from the leading monomials of a Groebner basis
    (size of the largest variable set containing no leading monomial's support)."""
    if any(sum(lm) == 0 for lm in leading):
        return -1
    supports = [frozenset(i for i, a in enumerate(lm) if a) for lm in leading]
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            S = set(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0


def ideal_dimension(gb: GroebnerBasis, projective: bool = True) -> int:
    """Dimension of V(I): affine, or projective for homogeneous I (-1 = empty)."""
    d = affine_dimension(gb.leading_monomials, gb.nvars)
    if projective:
        return max(d - 1, -1)
    return d
