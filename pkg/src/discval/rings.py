"""Exact coefficient rings: Z, Q, finite fields, and two concrete DVRs.

Every ring is a parent object; elements are plain Python values (``int``,
``Fraction``, tuples) manipulated through the parent's methods.  This keeps
the inner loops of the polynomial and Groebner code free of wrapper
objects.  :class:`DvrElement` is the user-facing wrapper for DVR elements.

DVRs provided:

* ``PLocal(p)``: rationals whose denominator is prime to ``p`` (Z localized
  at p), uniformizer ``p``, residue field ``F_p``.
* ``TLocal(p)``: rational functions over ``F_p`` whose denominator does not
  vanish at ``t = 0`` (F_p[t] localized at t), uniformizer ``t``, residue
  field ``F_p``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import upoly
from .parsing import parse_expression

INF = math.inf


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> int:
    p = int(p)
    if not (2 <= p < 2**31) or not is_prime(p):
        raise ValueError(f"{p} is not a prime below 2^31")
    return p


class Ring:
    """Common interface; subclasses override what differs."""

    name = "ring"
    is_field = False
    characteristic = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return _parse_value(self, text)

    def from_fraction(self, x: Fraction):
        raise NotImplementedError

    def gen_t(self):
        raise KeyError("t")

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "ZZ"
    spec = "ZZ"
    zero, one = 0, 1

    def from_int(self, n: int) -> int:
        return int(n)

    def from_fraction(self, x: Fraction) -> int:
        if x.denominator != 1:
            raise ArithmeticError(f"{x} is not an integer")
        return x.numerator

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q


class RationalField(Ring):
    name = "QQ"
    spec = "QQ"
    is_field = True
    zero, one = Fraction(0), Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, x: Fraction) -> Fraction:
        return Fraction(x)

    def div(self, a, b):
        return Fraction(a) / b

    def inv(self, a):
        return 1 / Fraction(a)


ZZ = IntegerRing()
QQ = RationalField()


# --- finite fields ---------------------------------------------------------

class PrimeField(Ring):
    """F_p with elements the integers 0..p-1."""

    is_field = True
    m = 1
    modulus = None

    def __init__(self, p: int):
        self.p = _check_prime(p)
        self.characteristic = self.p
        self.order = self.p
        self.zero, self.one = 0, 1
        self.name = f"GF({self.p})"
        self.spec = f"Fq:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, x: Fraction) -> int:
        return x.numerator * self.inv(x.denominator) % self.p

    def elements(self):
        return range(self.p)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def frobenius(self, a):
        return a

    def digits(self, a) -> list[int]:
        return [a]


class ExtensionField(Ring):
    """F_{p^m} = F_p[g]/(modulus); element sum c_i g^i is encoded as sum c_i p^i."""

    is_field = True
    TABLE_LIMIT = 20000

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = _check_prime(p)
        self.modulus = tuple(modulus)
        self.m = len(self.modulus) - 1
        if self.m < 2 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 2")
        self.characteristic = self.p
        self.order = self.p ** self.m
        self.zero, self.one = 0, 1
        self.name = f"GF({self.p}^{self.m})"
        self.spec = f"Fq:{self.p}^{self.m}"
        self._exp = self._log = None
        if self.order <= self.TABLE_LIMIT:
            self._build_tables()

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    def digits(self, a: int) -> list[int]:
        out = []
        p = self.p
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _encode(self, digits) -> int:
        acc = 0
        for c in reversed(digits):
            acc = acc * self.p + c
        return acc

    def add(self, a, b):
        p = self.p
        acc, scale = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            acc += ((ra + rb) % p) * scale
            scale *= p
        return acc

    def neg(self, a):
        p = self.p
        acc, scale = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            acc += (-ra % p) * scale
            scale *= p
        return acc

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _slow_mul(self, a, b):
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return self._encode([c % p for c in prod[:m]])

    def _build_tables(self):
        q = self.order
        factors = [ell for ell in range(2, q) if (q - 1) % ell == 0 and is_prime(ell)]
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // ell) != 1 for ell in factors):
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log

    def _slow_pow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._slow_pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._slow_pow(a, e)

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, x: Fraction) -> int:
        return self.div(self.from_int(x.numerator), self.from_int(x.denominator))

    def elements(self):
        return range(self.order)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def format(self, a) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def is_irreducible(p: int, f: tuple[int, ...]) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2 over F_p."""
    K = GF(p)
    f = upoly.pmonic(K, upoly.trim((c % p for c in f), K))
    m = upoly.deg(f)
    if m < 1:
        return False
    x = (0, 1)
    xp = x
    for _ in range(m // 2):
        xp = upoly.ppowmod(K, xp, p, f)
        if len(upoly.pgcd(K, f, upoly.psub(K, xp, x))) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def build_extension_field(p: int, m: int = 1) -> Ring:
    """F_{p^m} with the first irreducible monic modulus in counting order."""
    p = _check_prime(p)
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return PrimeField(p)
    for k in range(p ** m):
        low = []
        for _ in range(m):
            k, r = divmod(k, p)
            low.append(r)
        modulus = tuple(low) + (1,)
        if low[0] and is_irreducible(p, modulus):
            return ExtensionField(p, modulus)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def GF(p: int, m: int = 1) -> Ring:
    return build_extension_field(p, m)


# --- discrete valuation rings ---------------------------------------------

class DVR(Ring):
    kind = ""

    def __init__(self, p: int):
        self.p = _check_prime(p)
        self.residue_field = GF(self.p)
        self.spec = f"{self.kind}:{self.p}"

    def __eq__(self, other):
        return type(other) is type(self) and other.p == self.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def element(self, value) -> "DvrElement":
        return DvrElement(self, self.coerce(value))


class PLocal(DVR):
    """Z localized at (p)."""

    kind = "Zp"

    def __init__(self, p: int):
        super().__init__(p)
        self.name = f"Z_({self.p})"
        self.zero, self.one = Fraction(0), Fraction(1)
        self.uniformizer = Fraction(self.p)

    def coerce(self, value) -> Fraction:
        if isinstance(value, str):
            return self.parse(value)
        x = Fraction(value)
        if x.denominator % self.p == 0:
            raise ArithmeticError(f"{x} is not in {self.name}: denominator divisible by p")
        return x

    from_fraction = coerce

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def valuation(self, x):
        if x == 0:
            return INF
        num, v = abs(x.numerator), 0
        while num % self.p == 0:
            num //= self.p
            v += 1
        return v

    def residue(self, x) -> int:
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def lift(self, a) -> Fraction:
        return Fraction(int(a) % self.p)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return self.coerce(Fraction(a) / b)

    def to_fraction(self, x) -> Fraction:
        return x


class TLocal(DVR):
    """F_p[t] localized at (t); elements are (num, den) with den monic, den(0) != 0."""

    kind = "Fpt"

    def __init__(self, p: int):
        super().__init__(p)
        self.K = self.residue_field
        self.name = f"F_{self.p}[t]_(t)"
        self.zero = ((), (1,))
        self.one = ((1,), (1,))
        self.uniformizer = ((0, 1), (1,))

    def _norm(self, num, den, check=True):
        K = self.K
        num, den = upoly.trim(num, K), upoly.trim(den, K)
        if not den:
            raise ZeroDivisionError("division by zero")
        if not num:
            return self.zero
        g = upoly.pgcd(K, num, den)
        if len(g) > 1:
            num = upoly.pdivmod(K, num, g)[0]
            den = upoly.pdivmod(K, den, g)[0]
        inv = K.inv(den[-1])
        num, den = upoly.pscale(K, num, inv), upoly.pscale(K, den, inv)
        if check and den[0] == 0:
            raise ArithmeticError("element is not in " + self.name + ": denominator divisible by t")
        return (num, den)

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return self.from_fraction(Fraction(value))
        num, den = value
        return self._norm(num, den)

    def from_int(self, n: int):
        c = n % self.p
        return ((c,), (1,)) if c else self.zero

    def from_fraction(self, x: Fraction):
        return self._norm((x.numerator % self.p,), (x.denominator % self.p,))

    def from_poly(self, coeffs):
        return self._norm(coeffs, (1,))

    def gen_t(self):
        return self.uniformizer

    def add(self, a, b):
        K = self.K
        if a[1] == b[1]:
            return self._norm(upoly.padd(K, a[0], b[0]), a[1])
        return self._norm(upoly.padd(K, upoly.pmul(K, a[0], b[1]), upoly.pmul(K, b[0], a[1])),
                          upoly.pmul(K, a[1], b[1]))

    def neg(self, a):
        return (tuple(self.K.neg(c) for c in a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a[0] or not b[0]:
            return self.zero
        K = self.K
        return self._norm(upoly.pmul(K, a[0], b[0]), upoly.pmul(K, a[1], b[1]))

    def is_zero(self, a) -> bool:
        return not a[0]

    def div(self, a, b):
        if not b[0]:
            raise ZeroDivisionError("division by zero")
        K = self.K
        return self._norm(upoly.pmul(K, a[0], b[1]), upoly.pmul(K, a[1], b[0]))

    def valuation(self, x):
        num = x[0]
        if not num:
            return INF
        v = 0
        while num[v] == 0:
            v += 1
        return v

    def residue(self, x) -> int:
        if not x[0]:
            return 0
        return self.K.mul(x[0][0], self.K.inv(x[1][0]))

    def lift(self, a):
        return self.from_int(int(a))

    def format(self, x) -> str:
        num, den = x
        if den == (1,):
            return _format_tpoly(num)
        n, d = _format_tpoly(num), _format_tpoly(den)
        if len([c for c in num if c]) > 1:
            n = f"({n})"
        return f"{n}/({d})"


def _format_tpoly(c) -> str:
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            terms.append(str(a))
        else:
            terms.append(mono if a == 1 else f"{a}*{mono}")
    return " + ".join(terms) if terms else "0"


class _ElementAlgebra:
    """Parse into the fraction field, convert to the ring at the leaves.

    Extension fields are closed under division, so there the ring itself
    does the arithmetic and the symbol ``g`` is the generator.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self.tlocal = isinstance(ring, TLocal)
        if self.tlocal:
            self.frac = _TFracField(ring.p)
        elif isinstance(ring, ExtensionField):
            self.frac = ring
        else:
            self.frac = None

    def const(self, n):
        if self.frac is not None:
            return self.frac.from_int(n)
        return Fraction(n)

    def symbol(self, name):
        if self.tlocal and name == "t":
            return ((0, 1), (1,))
        if isinstance(self.frac, ExtensionField) and name == "g":
            return self.frac.p  # the generator is encoded as the integer p
        raise KeyError(name)

    def add(self, a, b):
        return self.frac.add(a, b) if self.frac else a + b

    def sub(self, a, b):
        return self.frac.sub(a, b) if self.frac else a - b

    def mul(self, a, b):
        return self.frac.mul(a, b) if self.frac else a * b

    def div(self, a, b):
        return self.frac.div(a, b) if self.frac else a / b

    def neg(self, a):
        return self.frac.neg(a) if self.frac else -a

    def pow(self, a, e):
        return self.frac.pow(a, e) if self.frac else a ** e


class _TFracField(TLocal):
    """F_p(t) without the unit-denominator restriction; used while parsing."""

    def _norm(self, num, den, check=False):
        return super()._norm(num, den, check=False)


def _parse_value(ring: Ring, text: str):
    alg = _ElementAlgebra(ring)
    value = parse_expression(text, alg)
    if alg.tlocal:
        return ring.coerce(value)
    if isinstance(alg.frac, ExtensionField):
        return value
    return ring.from_fraction(value)


# --- user-facing element wrapper ------------------------------------------

@dataclass(frozen=True)
class DvrElement:
    ring: DVR
    value: object

    def _other(self, other):
        if isinstance(other, DvrElement):
            if other.ring != self.ring:
                raise TypeError(f"mixed rings {self.ring} and {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return DvrElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return DvrElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return DvrElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return DvrElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return DvrElement(self.ring, self.ring.neg(self.value))

    def __truediv__(self, other):
        return DvrElement(self.ring, self.ring.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return DvrElement(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, DvrElement):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.coerce(other)
        except (ArithmeticError, ValueError, TypeError):
            return False

    def __hash__(self):
        return hash((self.ring, self.value))

    def valuation(self):
        return self.ring.valuation(self.value)

    def residue(self):
        return self.ring.residue(self.value)

    def __str__(self):
        return self.ring.format(self.value)


def valuation(x: DvrElement):
    """p-adic (resp. t-adic) valuation; ``INF`` for zero."""
    return x.ring.valuation(x.value)


def residue(x: DvrElement) -> int:
    return x.ring.residue(x.value)


def lift(a: int, ring: DVR) -> DvrElement:
    """Canonical lift: the representative in [0, p), resp. the constant polynomial."""
    return DvrElement(ring, ring.lift(a))


def parse_ring(spec: str) -> Ring:
    """``ZZ``, ``QQ``, ``Zp:5``, ``Fpt:5``, ``Fq:7`` or ``Fq:7^2``."""
    spec = spec.strip()
    if spec in ("ZZ", "Z"):
        return ZZ
    if spec in ("QQ", "Q"):
        return QQ
    kind, _, arg = spec.partition(":")
    try:
        if kind == "Zp":
            return PLocal(int(arg))
        if kind == "Fpt":
            return TLocal(int(arg))
        if kind == "Fq":
            base, _, m = arg.partition("^")
            return GF(int(base), int(m) if m else 1)
    except ValueError as exc:
        raise ValueError(f"bad ring spec {spec!r}: {exc}") from None
    raise ValueError(f"bad ring spec {spec!r}")


class IntegerPolyRing(Ring):
    """Z[t] with coefficient tuples; used to lift F_p[t] and F_{p^m} computations."""

    name = "ZZ[t]"
    spec = "ZZ[t]"
    zero, one = (), (1,)

    def from_int(self, n: int):
        return (n,) if n else ()

    def add(self, a, b):
        return upoly.zadd(a, b)

    def sub(self, a, b):
        return upoly.zsub(a, b)

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        return upoly.zmul(a, b)

    def is_zero(self, a) -> bool:
        return not a

    def div(self, a, b):
        return upoly.zdivexact(a, b)


ZT = IntegerPolyRing()
