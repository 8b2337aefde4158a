"""Dense univariate polynomials as coefficient tuples (low degree first).

Two flavours live here: polynomials over a field object ``K`` (anything with
the finite-field method set from :mod:`discval.rings`) and polynomials over
the integers, used to lift rational-function and extension-field
computations to characteristic zero.  The zero polynomial is ``()``.
"""

from __future__ import annotations

import random

Poly = tuple


def trim(coeffs, K=None) -> Poly:
    c = list(coeffs)
    if K is None:
        while c and c[-1] == 0:
            c.pop()
    else:
        while c and K.is_zero(c[-1]):
            c.pop()
    return tuple(c)


def deg(a: Poly) -> int:
    return len(a) - 1


# --- over a field ----------------------------------------------------------

def padd(K, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = K.add(out[i], x)
    return trim(out, K)


def psub(K, a: Poly, b: Poly) -> Poly:
    return padd(K, a, tuple(K.neg(x) for x in b))


def pscale(K, a: Poly, s) -> Poly:
    if K.is_zero(s):
        return ()
    return trim((K.mul(x, s) for x in a), K)


def pmul(K, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return trim(out, K)


def pdivmod(K, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return (), trim(r, K)
    inv_lead = K.inv(b[-1])
    q = [K.zero] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv_lead)
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = K.sub(r[i - db + j], K.mul(c, b[j]))
    return trim(q, K), trim(r[:db], K)


def pmonic(K, a: Poly) -> Poly:
    if not a:
        return a
    return pscale(K, a, K.inv(a[-1]))


def pgcd(K, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pdivmod(K, a, b)[1]
    return pmonic(K, a)


def peval(K, a: Poly, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def ppowmod(K, base: Poly, e: int, mod: Poly) -> Poly:
    result: Poly = (K.one,)
    base = pdivmod(K, base, mod)[1]
    while e:
        if e & 1:
            result = pdivmod(K, pmul(K, result, base), mod)[1]
        e >>= 1
        if e:
            base = pdivmod(K, pmul(K, base, base), mod)[1]
    return pdivmod(K, result, mod)[1]


def pderiv(K, a: Poly) -> Poly:
    return trim((K.mul(K.from_int(i), a[i]) for i in range(1, len(a))), K)


def roots(K, f: Poly, seed: int = 0) -> list:
    """Distinct roots of ``f`` in the finite field ``K``, sorted."""
    f = trim(f, K)
    if not f:
        raise ValueError("every element is a root of the zero polynomial")
    if len(f) == 1:
        return []
    f = pmonic(K, f)
    q = K.order
    if q <= 64:
        return sorted(x for x in K.elements() if K.is_zero(peval(K, f, x)))
    x: Poly = (K.zero, K.one)
    xq = ppowmod(K, x, q, f)
    g = pgcd(K, f, psub(K, xq, x))
    rng = random.Random(seed)
    found: list = []
    _split_linear(K, g, rng, found)
    return sorted(found)


def _split_linear(K, g: Poly, rng: random.Random, out: list) -> None:
    # g is monic, squarefree and splits into distinct linear factors over K
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append(K.neg(g[0]))
        return
    q = K.order
    while True:
        a = K.random_element(rng)
        if K.p == 2:
            k = q.bit_length() - 1
            term = pdivmod(K, (K.zero, a), g)[1]
            acc = term
            for _ in range(k - 1):
                term = pdivmod(K, pmul(K, term, term), g)[1]
                acc = padd(K, acc, term)
            h = pgcd(K, g, acc)
        else:
            w = ppowmod(K, (a, K.one), (q - 1) // 2, g)
            h = pgcd(K, g, psub(K, w, (K.one,)))
        if 1 < len(h) < len(g):
            _split_linear(K, h, rng, out)
            _split_linear(K, pdivmod(K, g, h)[0], rng, out)
            return


# --- over the integers -----------------------------------------------------

def zadd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def zsub(a: Poly, b: Poly) -> Poly:
    return zadd(a, tuple(-x for x in b))


def zmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def zdivexact(a: Poly, b: Poly) -> Poly:
    """Exact quotient in Z[t]; raises ArithmeticError if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        raise ArithmeticError("inexact division in Z[t]")
    lead = b[-1]
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        qc, rem = divmod(c, lead)
        if rem:
            raise ArithmeticError("inexact division in Z[t]")
        q[i - db] = qc
        for j in range(db + 1):
            r[i - db + j] -= qc * b[j]
    if any(r[:db]):
        raise ArithmeticError("inexact division in Z[t]")
    return trim(q)


def zmod(a: Poly, p: int) -> Poly:
    return trim(x % p for x in a)
