"""Sparse multivariate polynomials over any ring from :mod:`discval.rings`.

A polynomial is a map from exponent tuples to nonzero coefficients, tagged
with its coefficient ring.  Arithmetic between polynomials over different
rings raises ``TypeError``; conversions are explicit via
:meth:`MPoly.map_coefficients`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .parsing import ParseError, parse_expression
from .rings import Ring


def grlex_key(exp):
    return (sum(exp), exp)


def grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


class MPoly:
    __slots__ = ("ring", "nvars", "terms", "_hash")

    def __init__(self, ring: Ring, nvars: int, terms=None, *, _clean=False):
        self.ring = ring
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            is_zero = ring.is_zero
            clean = {}
            for exp, c in dict(terms).items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
                if not is_zero(c):
                    clean[exp] = c
            self.terms = clean
        self._hash = None

    # --- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, nvars: int) -> "MPoly":
        return cls(ring, nvars, {}, _clean=True)

    @classmethod
    def constant(cls, ring: Ring, nvars: int, c) -> "MPoly":
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, ring: Ring, nvars: int, i: int) -> "MPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(ring, nvars, {tuple(exp): ring.one}, _clean=True)

    @classmethod
    def monomial(cls, ring: Ring, exp, c=None) -> "MPoly":
        exp = tuple(exp)
        return cls(ring, len(exp), {exp: ring.one if c is None else c})

    @classmethod
    def parse(cls, text: str, ring: Ring, nvars: int | None = None) -> "MPoly":
        """Parse ``x0^2 + 3*x0*x1 - 5*x2^2``.

        When ``nvars`` is omitted it is one more than the largest variable
        index that occurs.
        """
        if nvars is None:
            import re
            idx = [int(m) for m in re.findall(r"x(\d+)", text)]
            nvars = max(idx) + 1 if idx else 1
        return parse_expression(text, _PolyAlgebra(ring, nvars, text))

    # --- basic protocol ----------------------------------------------------

    def _check(self, other: "MPoly"):
        if other.ring != self.ring:
            raise TypeError(f"mixed coefficient rings {self.ring} and {other.ring}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MPoly.constant(self.ring, self.nvars, self.ring.from_int(other))
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring == other.ring and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"MPoly({self.format()!r}, {self.ring})"

    def __str__(self):
        return self.format()

    # --- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        R = self.ring
        out = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in out:
                s = R.add(out[exp], c)
                if R.is_zero(s):
                    del out[exp]
                else:
                    out[exp] = s
            else:
                out[exp] = c
        return MPoly(R, self.nvars, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return MPoly(R, self.nvars, {e: R.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.from_int(other))
        other = self._coerce(other)
        R = self.ring
        add, mul, is_zero = R.add, R.mul, R.is_zero
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = mul(c1, c2)
                if exp in out:
                    out[exp] = add(out[exp], prod)
                else:
                    out[exp] = prod
        return MPoly(R, self.nvars, {e: c for e, c in out.items() if not is_zero(c)}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.ring, self.nvars, self.ring.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        R = self.ring
        if R.is_zero(c):
            return MPoly.zero(R, self.nvars)
        out = {}
        for e, a in self.terms.items():
            v = R.mul(a, c)
            if not R.is_zero(v):
                out[e] = v
        return MPoly(R, self.nvars, out, _clean=True)

    # --- structure ---------------------------------------------------------

    def total_degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        """Smallest total degree of a term (the order at the origin)."""
        if not self.terms:
            raise ValueError("zero polynomial has no order")
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.ring.zero)

    def sorted_terms(self, key=grlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly(self.ring, self.nvars,
                     {e: c for e, c in self.terms.items() if sum(e) == k}, _clean=True)

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def map_coefficients(self, ring: Ring, fn) -> "MPoly":
        return MPoly(ring, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # --- operations ---------------------------------------------------------

    def partial_derivative(self, i: int) -> "MPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        R = self.ring
        out = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k == 0:
                continue
            v = R.mul(R.from_int(k), c)
            if R.is_zero(v):
                continue
            new = list(exp)
            new[i] = k - 1
            out[tuple(new)] = v
        return MPoly(R, self.nvars, out, _clean=True)

    def gradient(self) -> list["MPoly"]:
        return [self.partial_derivative(i) for i in range(self.nvars)]

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        R = self.ring
        powers = [dict() for _ in range(self.nvars)]
        acc = R.zero
        for exp, c in self.terms.items():
            term = c
            for i, k in enumerate(exp):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = R.pow(point[i], k)
                    term = R.mul(term, cache[k])
            acc = R.add(acc, term)
        return acc

    def substitute(self, images: list["MPoly"]) -> "MPoly":
        """Replace x_i by ``images[i]`` (all in a common ring and variable count)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target_n = images[0].nvars
        R = self.ring
        one = MPoly.constant(R, target_n, R.one)
        powers = [dict() for _ in images]
        out = MPoly.zero(R, target_n)
        for exp, c in self.terms.items():
            term = MPoly.constant(R, target_n, c)
            for i, k in enumerate(exp):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = images[i] ** k if images[i] != one else one
                    term = term * cache[k]
            out = out + term
        return out

    def substitute_linear(self, T) -> "MPoly":
        """f(T x): each x_i becomes sum_j T[i][j] x_j."""
        n = self.nvars
        if len(T) != n or any(len(row) != n for row in T):
            raise ValueError(f"substitution matrix must be {n}x{n}")
        R = self.ring
        images = []
        for row in T:
            images.append(MPoly(R, n, {tuple(int(j == k) for k in range(n)): c
                                       for j, c in enumerate(row)}))
        return self.substitute(images)

    def taylor_shift(self, b) -> "MPoly":
        """g with g(x) = f(b + x), one variable at a time."""
        if len(b) != self.nvars:
            raise ValueError(f"shift has {len(b)} coordinates, expected {self.nvars}")
        R = self.ring
        terms = dict(self.terms)
        for i, bi in enumerate(b):
            if R.is_zero(bi):
                continue
            bpow = [R.one]
            out: dict = {}
            for exp, c in terms.items():
                k = exp[i]
                while len(bpow) <= k:
                    bpow.append(R.mul(bpow[-1], bi))
                for j in range(k + 1):
                    coef = R.mul(c, R.mul(R.from_int(comb(k, j)), bpow[k - j]))
                    if R.is_zero(coef):
                        continue
                    new = exp[:i] + (j,) + exp[i + 1:]
                    if new in out:
                        out[new] = R.add(out[new], coef)
                    else:
                        out[new] = coef
            terms = {e: c for e, c in out.items() if not R.is_zero(c)}
        return MPoly(R, self.nvars, terms, _clean=True)

    def scale_variables(self, s) -> "MPoly":
        """f(s x) for a ring element s."""
        R = self.ring
        cache = {}
        out = {}
        for exp, c in self.terms.items():
            k = sum(exp)
            if k not in cache:
                cache[k] = R.pow(s, k)
            v = R.mul(c, cache[k])
            if not R.is_zero(v):
                out[exp] = v
        return MPoly(R, self.nvars, out, _clean=True)

    def dehomogenize(self, chart: int, Q=None) -> "MPoly":
        """Affine model centred at Q in the chart x_chart = 1.

        Returns h(y) = f(Q' + sum_j y_j e_j) where Q' is Q scaled to have
        chart coordinate 1 and the y_j run over the other coordinates in
        order.  Without Q the chart origin (e_chart) is used.
        """
        n = self.nvars
        R = self.ring
        if not 0 <= chart < n:
            raise IndexError("chart index out of range")
        if Q is None:
            coords = [R.one if i == chart else R.zero for i in range(n)]
        else:
            coords = list(Q.coords if isinstance(Q, PointProj) else Q)
            if R.is_zero(coords[chart]):
                raise ValueError("chart coordinate of the point is zero")
            inv = R.div(R.one, coords[chart])
            coords = [R.mul(c, inv) for c in coords]
        others = [i for i in range(n) if i != chart]
        m = n - 1
        images = []
        for i in range(n):
            img = MPoly.constant(R, m, coords[i])
            if i != chart:
                img = img + MPoly.var(R, m, others.index(i))
            images.append(img)
        return self.substitute(images)

    # --- text ----------------------------------------------------------------

    def format(self, names=None) -> str:
        if not self.terms:
            return "0"
        R = self.ring
        names = names or [f"x{i}" for i in range(self.nvars)]
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(exp) if k)
            text = R.format(c)
            negative = text.startswith("-") and _is_atom(text[1:])
            if negative:
                text = text[1:]
            if not _is_atom(text):
                text = f"({text})"
            if mono:
                body = mono if text == "1" else f"{text}*{mono}"
            else:
                body = text
            pieces.append(("-", body) if negative else ("+", body))
        out = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _is_atom(text: str) -> bool:
    if text.isdigit():
        return True
    num, slash, den = text.partition("/")
    return bool(slash) and num.isdigit() and den.isdigit()


class _PolyAlgebra:
    def __init__(self, ring: Ring, nvars: int, text: str):
        self.ring = ring
        self.n = nvars
        self.text = text

    def const(self, k):
        return MPoly.constant(self.ring, self.n, self.ring.from_int(k))

    def symbol(self, name):
        if name == "t":
            return MPoly.constant(self.ring, self.n, self.ring.gen_t())
        if name == "g" and getattr(self.ring, "m", 1) > 1:
            return MPoly.constant(self.ring, self.n, self.ring.p)  # generator of F_{p^m}
        if name.startswith("x") and name[1:].isdigit():
            i = int(name[1:])
            if i < self.n:
                return MPoly.var(self.ring, self.n, i)
            raise ValueError(f"variable {name} outside x0..x{self.n - 1}")
        raise KeyError(name)

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)
    pow = staticmethod(lambda a, k: a ** k)

    def div(self, a, b):
        if b.total_degree() > 0:
            raise ValueError("division by a non-constant polynomial")
        if b.is_zero():
            raise ZeroDivisionError("division by zero")
        c = b.coefficient((0,) * self.n)
        R = self.ring
        return MPoly(R, self.n, {e: R.div(v, c) for e, v in a.terms.items()})


def parse_poly(text: str, ring: Ring, nvars: int | None = None) -> MPoly:
    try:
        return MPoly.parse(text, ring, nvars)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), text, 0) from None


@dataclass(frozen=True)
class PointProj:
    """A point of P^n over a finite field, first nonzero coordinate equal to 1."""

    field: Ring
    coords: tuple

    def __post_init__(self):
        K = self.field
        coords = tuple(self.coords)
        for c in coords:
            if not K.is_zero(c):
                inv = K.inv(c)
                coords = tuple(K.mul(x, inv) for x in coords)
                break
        else:
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", coords)

    @property
    def chart(self) -> int:
        return next(i for i, c in enumerate(self.coords) if not self.field.is_zero(c))

    def frobenius(self) -> "PointProj":
        K = self.field
        return PointProj(K, tuple(K.frobenius(c) for c in self.coords))

    def format(self) -> str:
        return "(" + ":".join(self.field.format(c) for c in self.coords) + ")"

    def __str__(self):
        return self.format()
