"""Regenerate tests/data/oracles.json with sympy as an independent oracle.

Run once by hand; the tests only read the frozen JSON, so sympy is not a
test or runtime dependency.

* binary forms: classical discriminant of f(x, 1)
* ternary forms: Poisson formula Res(g0, g1, g2) = Res(g1|x0=0, g2|x0=0)^deg g0
  * det(multiplication by g0 on Q[y, z]/(g1, g2) at x0 = 1), then / d^a
* quadrics: Hessian determinant (halved for an odd number of variables)
* Weierstrass: b2, b4, b6, b8 formula
* Groebner bases over F_p: sympy.groebner(..., modulus=p)
"""

import json
import random
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"


def monomials(nvars, d):
    if nvars == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in monomials(nvars - 1, d - a)]


def fmt_term(c, e):
    parts = [f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k]
    return f"({c})*" + "*".join(parts) if parts else f"({c})"


def random_form(rng, nvars, d, bound):
    coeffs = {m: rng.randint(-bound, bound) for m in monomials(nvars, d)}
    text = " + ".join(fmt_term(c, m) for m, c in coeffs.items() if c) or "0"
    return coeffs, text


def to_sympy(coeffs, xs):
    return sp.expand(sum(c * sp.prod([x ** k for x, k in zip(xs, m)]) for m, c in coeffs.items()))


def binary_disc(coeffs, d):
    x, y = sp.symbols("x y")
    f = to_sympy(coeffs, (x, y))
    return int(sp.discriminant(sp.Poly(f.subs(y, 1), x)))


def poisson_resultant(g0, g1, g2, xs):
    x0, y, z = xs
    d0 = sp.Poly(g0, *xs).total_degree()
    b1 = sp.Poly(g1.subs(x0, 0).subs(z, 1), y)
    b2 = sp.Poly(g2.subs(x0, 0).subs(z, 1), y)
    if b1.degree() != sp.Poly(g1, *xs).total_degree() or b2.degree() != sp.Poly(g2, *xs).total_degree():
        return None
    res_inf = sp.resultant(b1.as_expr(), b2.as_expr(), y)
    if res_inf == 0:
        return None  # common zero at infinity: formula does not apply
    a1, a2, a0 = (sp.expand(g.subs(x0, 1)) for g in (g1, g2, g0))
    G = sp.groebner([a1, a2], y, z, order="grevlex", domain=sp.QQ)
    lead = [sp.Poly(g, y, z).monoms(order="grevlex")[0] for g in G.exprs]
    basis = []
    for i in range(40):
        for j in range(40):
            if not any(i >= a and j >= b for a, b in lead):
                basis.append((i, j))
    if len(basis) >= 400:
        return None
    mons = [y ** i * z ** j for i, j in basis]
    M = []
    for m in mons:
        r = G.reduce(sp.expand(a0 * m))[1]
        p = sp.Poly(r, y, z)
        M.append([p.coeff_monomial(mm) for mm in mons])
    return sp.Matrix(M).det() * res_inf ** d0


def ternary_disc(coeffs, d):
    xs = sp.symbols("x0 x1 x2")
    f = to_sympy(coeffs, xs)
    g = [sp.diff(f, v) for v in xs]
    res = poisson_resultant(g[0], g[1], g[2], xs)
    if res is None:
        return None
    a = ((d - 1) ** 3 + 1) // d
    q = sp.Rational(res, d ** a)
    assert q.q == 1
    return int(q)


def quadric_det(coeffs, nvars):
    xs = sp.symbols(f"x0:{nvars}")
    f = to_sympy(coeffs, xs)
    det = sp.hessian(f, xs).det()
    return int(det if nvars % 2 == 0 else det / 2)


def weierstrass(a1, a2, a3, a4, a6):
    b2 = a1 ** 2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 ** 2 + 4 * a6
    b8 = a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2
    return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6


def groebner_case(p, gens_text, nvars):
    xs = sp.symbols(f"x0:{nvars}")
    loc = {f"x{i}": xs[i] for i in range(nvars)}
    polys = [sp.sympify(t.replace("^", "**"), locals=loc) for t in gens_text]
    G = sp.groebner(polys, *xs, order="grevlex", modulus=p)
    out = []
    for g in G.exprs:
        P = sp.Poly(g, *xs, modulus=p)
        inv = pow(int(P.LC(order="grevlex")) % p, -1, p)
        out.append({",".join(map(str, m)): int(c) * inv % p for m, c in P.terms()})
    return out


def main():
    rng = random.Random(20240611)
    data = {"binary": [], "ternary": [], "quadric": [], "weierstrass": [], "groebner": []}
    for d in (3, 4, 5):
        for _ in range(8):
            coeffs, text = random_form(rng, 2, d, 7)
            if coeffs[(d, 0)] == 0:
                continue
            data["binary"].append({"poly": text, "vars": 2, "d": d,
                                   "disc": str(binary_disc(coeffs, d))})
    for d, count in ((3, 10), (4, 4)):
        made = 0
        while made < count:
            coeffs, text = random_form(rng, 3, d, 4)
            val = ternary_disc(coeffs, d)
            if val is None:
                continue
            data["ternary"].append({"poly": text, "vars": 3, "d": d, "disc": str(val)})
            made += 1
    for nvars in (2, 3, 4, 5):
        for _ in range(5):
            coeffs, text = random_form(rng, nvars, 2, 9)
            data["quadric"].append({"poly": text, "vars": nvars,
                                    "disc": str(quadric_det(coeffs, nvars))})
    for a in [(0, 1, 0, 0, 5), (0, 0, 0, 0, 5), (0, 0, 0, -1, 0), (1, -1, 1, -2, 3), (1, 0, 1, -7, 6)]:
        data["weierstrass"].append({"a": list(a), "disc": str(weierstrass(*a))})
    cases = [
        (7, ["x0^2", "x0*x1 - x1"], 2),
        (7, ["x0^2 + x1^2", "x0*x1"], 2),
        (5, ["x0^2*x1 - x2^3", "x1^2 - x0*x2", "x0*x1*x2 - 1"], 3),
        (3, ["x0^3 + x1 + 1", "x1^2 + x0*x2", "x2^2 - x0"], 3),
        (11, ["x0*x1 + 3*x2^2", "x1^2 - 2*x0*x2 + x2", "x0^2 - x1*x2"], 3),
        (2, ["x0^2 + x1*x2", "x1^2 + x0*x2 + x2", "x2^3 + x0"], 3),
    ]
    for p, gens, nvars in cases:
        data["groebner"].append({"p": p, "vars": nvars, "gens": gens,
                                 "basis": groebner_case(p, gens, nvars)})
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
