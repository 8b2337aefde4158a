"""Reproducible verification suites over random and constructed instances.

Every suite is a generator of ``(payload, check)`` pairs.  ``payload`` is a
JSON-ready description of the instance (enough to replay it through a single
CLI command) and ``check()`` either returns a dict of per-instance stats,
raises :class:`Skip`, or raises :class:`Violation`.  Any other exception is
recorded as a failure too: instance-level problems never escape run_suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .constructions import (NotFound, isolated_singularities_example, line_singular_family,
                            singularity_constraint_space, weierstrass_cubic)
from .discriminant import (MAX_MATRIX, DegenerateMinor, SizeLimitExceeded, discriminant,
                           discriminant_degree, monomials, quadric_hessian_matrix)
from .linalg import det_leibniz
from .localanalysis import (UNDETERMINED, DecompositionError, DoublePointKind, check_theorem_1_1,
                            classify_double_point, decompose_quadratic_form, is_singular_point,
                            multiplicity, quadric_coefficients, quadric_discriminant,
                            reduce_poly, symbolic_discriminant_over, transform_is_unimodular,
                            vmin_exact_quadric)
from .mpoly import MPoly, PointProj
from .rings import DVR, GF, INF, ZZ, PLocal, Ring, parse_ring
from .specialfiber import DEFAULT_MAX_ENUM, BudgetExceeded, analyze_singular_locus

SCHEMA = 1

SUITES = ("thm1_1", "thm6_1", "thm9_4a", "thm9_4b", "thm9_4c", "thm9_4d", "prop3_1",
          "prop3_3", "prop5_1", "lemma9_1", "cor8_6", "degree_scaling", "smooth_criterion")

DEFAULT_TRIALS = {
    "prop3_1": 300, "degree_scaling": 120, "smooth_criterion": 200, "thm1_1": 500,
    "thm6_1": 40, "thm9_4a": 100, "thm9_4b": 100, "thm9_4c": 100, "thm9_4d": 60,
    "prop3_3": 300, "lemma9_1": 100, "cor8_6": 200, "prop5_1": 500,
}

THM11_MODES = ("random", "constructed", "char2")


class Skip(Exception):
    """Instance could not be decided (budget, undetermined, not found)."""


class Violation(Exception):
    """The instance contradicts the statement under test."""

    def __init__(self, message: str, **data):
        super().__init__(message)
        self.data = data


class ConfigError(ValueError):
    pass


@dataclass
class VerifyConfig:
    suite: str
    ring: str | None = None
    trials: int | None = None
    seed: int = 0
    max_matrix: int = MAX_MATRIX
    max_enum: int = DEFAULT_MAX_ENUM
    m_max: int = 4
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.trials is None:
            self.trials = DEFAULT_TRIALS[self.suite]
        if self.trials < 0:
            raise ConfigError("trials must be non-negative")
        if self.suite == "thm1_1" and self.params.get("mode", "random") not in THM11_MODES:
            raise ConfigError(f"thm1_1 mode must be one of {', '.join(THM11_MODES)}")
        if self.ring is not None:
            parse_ring(self.ring)  # validate early

    def to_json(self) -> dict:
        return {"suite": self.suite, "ring": self.ring, "trials": self.trials, "seed": self.seed,
                "max_matrix": self.max_matrix, "max_enum": self.max_enum, "m_max": self.m_max,
                "params": dict(sorted(self.params.items()))}


@dataclass
class VerifyReport:
    suite: str
    config: VerifyConfig
    instances: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def skip_rate(self) -> float:
        return len(self.skipped) / self.instances if self.instances else 0.0

    @property
    def exit_code(self) -> int:
        if self.failures:
            return 3
        if self.instances and len(self.skipped) == self.instances:
            return 4
        return 0

    def bump(self, key: str, by=1):
        self.stats[key] = self.stats.get(key, 0) + by

    def summary(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        return (f"{self.suite}: {state} ({self.instances} instances, {self.passed} passed, "
                f"{len(self.failures)} failed, {len(self.skipped)} skipped)")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": self.config.to_json(),
            "instances": self.instances,
            "passed": self.passed,
            "failed": len(self.failures),
            "skipped": len(self.skipped),
            "skip_rate": round(self.skip_rate, 6),
            "ok": self.ok,
            "failures": self.failures,
            "skips": self.skipped,
            "stats": dict(sorted(self.stats.items())),
        }


# --- shared helpers -----------------------------------------------------------

def _json_val(v):
    return "inf" if v == INF else v


def _poly_payload(f: MPoly, **extra) -> dict:
    out = {"ring": f.ring.spec, "vars": f.nvars, "poly": f.format()}
    out.update(extra)
    return out


def _replay(cmd: str, f: MPoly, *flags) -> list:
    opt = "--field" if cmd in ("singular", "vmin") else "--ring"
    return ["disc-val", cmd, opt, f.ring.spec, "--vars", str(f.nvars), *flags, f.format()]


def _rings(cfg: VerifyConfig, default: list[str]) -> list[Ring]:
    return [parse_ring(cfg.ring)] if cfg.ring else [parse_ring(s) for s in default]


def _rng(cfg: VerifyConfig, *tag) -> random.Random:
    return random.Random("/".join(map(str, (cfg.suite, cfg.seed) + tag)))


def _disc(f: MPoly, cfg: VerifyConfig):
    try:
        return discriminant(f, max_size=cfg.max_matrix)
    except (SizeLimitExceeded, DegenerateMinor) as exc:
        raise Skip(f"budget: {exc}") from None


def _analyze(f: MPoly, cfg: VerifyConfig, seed=0):
    return analyze_singular_locus(f, m_max=cfg.m_max, seed=seed, max_enum=cfg.max_enum)


def _random_form(K: Ring, nvars: int, d: int, rng: random.Random) -> MPoly:
    while True:
        f = MPoly(K, nvars, {m: K.random_element(rng) for m in monomials(nvars, d)})
        if f.terms:
            return f


def _int_form(nvars: int, d: int, rng: random.Random, bound: int) -> MPoly:
    while True:
        f = MPoly(ZZ, nvars, {m: rng.randint(-bound, bound) for m in monomials(nvars, d)})
        if f.terms:
            return f


def _random_point(K: Ring, nvars: int, rng: random.Random) -> PointProj:
    while True:
        c = tuple(K.random_element(rng) for _ in range(nvars))
        if any(not K.is_zero(x) for x in c):
            return PointProj(K, c)


def _distinct_points(K: Ring, nvars: int, r: int, rng: random.Random) -> list[PointProj]:
    pts: list = []
    while len(pts) < r:
        P = _random_point(K, nvars, rng)
        if P not in pts:
            pts.append(P)
    return pts


def _singular_form(K: Ring, nvars: int, d: int, rng: random.Random) -> MPoly:
    """Uniform member of the forms singular at a random rational point."""
    space = singularity_constraint_space([_random_point(K, nvars, rng)], d, K, check=False)
    while True:
        f = space.random_member(rng)
        if f.terms:
            return f


def _random_lift(fbar: MPoly, R: DVR, rng: random.Random) -> MPoly:
    """Canonical lift plus pi times a uniformly random form of the same degree."""
    k = fbar.ring
    d = fbar.total_degree()
    pert = {m: R.mul(R.uniformizer, R.lift(k.random_element(rng)))
            for m in monomials(fbar.nvars, d)}
    return fbar.map_coefficients(R, R.lift) + MPoly(R, fbar.nvars, pert)


def _single_nondegenerate(fbar: MPoly, rep) -> bool:
    if not (rep.dimension == 0 and rep.r == 1 and rep.degree == 1):
        return False
    m, P = rep.closed_points[0]
    return m == 1 and classify_double_point(fbar, P).kind is DoublePointKind.NONDEGENERATE


# --- suites -------------------------------------------------------------------

def _suite_prop3_1(cfg: VerifyConfig):
    """Macaulay Delta of an integer quadric against the Hessian determinant."""
    for i in range(cfg.trials):
        n = (1, 2, 3)[i % 3]
        f = _int_form(n + 1, 2, _rng(cfg, i), 9)

        def check(f=f, n=n):
            det = det_leibniz(quadric_hessian_matrix(f), ZZ)
            oracle = det if n % 2 else det // 2
            value = _disc(f, cfg).value
            if value not in (oracle, -oracle):
                raise Violation("Delta differs from the determinant oracle",
                                delta=str(value), oracle=str(oracle))
            return {"sign_flips": int(value != oracle)}
        yield _poly_payload(f, replay=_replay("disc", f)), check


DEGREE_PAIRS = ((1, 3), (1, 4), (2, 3), (2, 4), (3, 2), (3, 3))


def _suite_degree_scaling(cfg: VerifyConfig):
    lams = cfg.params.get("lambdas", (2, 3, 5))
    for i in range(cfg.trials):
        n, d = DEGREE_PAIRS[i % len(DEGREE_PAIRS)]
        f = _int_form(n + 1, d, _rng(cfg, i), 5)

        def check(f=f, n=n, d=d):
            base = _disc(f, cfg).value
            e = discriminant_degree(n, d)
            for lam in lams:
                got = _disc(f.scale(lam), cfg).value
                if got != lam ** e * base:
                    raise Violation("Delta(lambda f) != lambda^deg Delta(f)", lam=lam,
                                    degree=e, base=str(base), scaled=str(got))
            return {}
        yield _poly_payload(f, replay=_replay("disc", f)), check


def _suite_smooth_criterion(cfg: VerifyConfig):
    fields = _rings(cfg, ["Fq:5", "Fq:7"])
    shapes = cfg.params.get("shapes", ((2, 2), (2, 3)))
    for i in range(cfg.trials):
        K = fields[i % len(fields)]
        n, d = shapes[(i // len(fields)) % len(shapes)]
        rng = _rng(cfg, i)
        constructed = i % 4 >= 2
        f = _singular_form(K, n + 1, d, rng) if constructed else _random_form(K, n + 1, d, rng)

        def check(f=f):
            zero = _disc(f, cfg).is_zero
            rep = _analyze(f, cfg)
            if rep.dimension == -1:
                found = False
            elif rep.dimension == 0:
                found = bool(rep.closed_points)
            else:
                if rep.rational_points is None:
                    raise Skip("budget: rational point scan exceeded max_enum")
                found = bool(rep.rational_points)
            if zero and not found:
                if rep.points_possibly_incomplete or rep.dimension >= 1:
                    raise Skip("undetermined: no point within the searched extensions")
                raise Violation("Delta = 0 but no singular point exists")
            if found and not zero:
                raise Violation("singular point found but Delta != 0",
                                points=[P.format() for _, P in rep.closed_points])
            return {"singular": int(found)}
        yield _poly_payload(f, constructed=constructed, replay=_replay("singular", f)), check


def _suite_thm1_1(cfg: VerifyConfig):
    mode = cfg.params.get("mode", "random")
    yield from {"random": _thm11_random, "constructed": _thm11_constructed,
                "char2": _thm11_char2}[mode](cfg)


def _thm11_random(cfg: VerifyConfig):
    rings = _rings(cfg, ["Zp:5", "Zp:7"])
    n = int(cfg.params.get("n", 2))
    d = int(cfg.params.get("d", 3))
    for i in range(cfg.trials):
        R = rings[i % len(rings)]
        rng = _rng(cfg, "random", i)
        k = R.residue_field
        fbar = _singular_form(k, n + 1, d, rng) if i % 4 < 2 else _random_form(k, n + 1, d, rng)
        f = _random_lift(fbar, R, rng)

        def check(f=f):
            try:
                rep = check_theorem_1_1(f, m_max=cfg.m_max, max_size=cfg.max_matrix)
            except (SizeLimitExceeded, DegenerateMinor, BudgetExceeded) as exc:
                raise Skip(f"budget: {exc}") from None
            out = {"v_eq_1": int(rep.valuation == 1)}
            if rep.valuation == 1 and not (rep.regular is True and rep.nondeg_single_point):
                raise Violation("v(Delta) = 1 without a regular single nondegenerate point",
                                report=rep.to_json())
            if rep.equivalence_holds is False:
                raise Violation("regular single nondegenerate point but v(Delta) != 1",
                                report=rep.to_json())
            if rep.equivalence_holds == UNDETERMINED:
                raise Skip("undetermined: regularity not decidable")
            return out
        yield _poly_payload(f, replay=_replay("classify", f)), check


def _cone(R: DVR, n: int, rng: random.Random) -> MPoly:
    """diag(1, ..., 1, p) perturbed by pi on every other coefficient and pi^2 on x_n^2."""
    k = R.residue_field
    p = R.uniformizer
    last = tuple(2 if j == n else 0 for j in range(n + 1))
    terms = {}
    for m in monomials(n + 1, 2):
        noise = R.lift(k.random_element(rng))
        if m == last:
            terms[m] = R.add(p, R.mul(R.mul(p, p), noise))
        else:
            base = R.one if 2 in m else R.zero
            terms[m] = R.add(base, R.mul(p, noise))
    return MPoly(R, n + 1, terms)


def _weierstrass_v1(R: PLocal, rng: random.Random, tries: int = 5000):
    for _ in range(tries):
        a = [rng.randint(-30, 30) for _ in range(5)]
        f, classical = weierstrass_cubic(*a, ring=R)
        if R.valuation(classical) == 1:
            return f, a, classical
    raise Skip("NotFound: no Weierstrass cubic with classical valuation 1")


def _thm11_constructed(cfg: VerifyConfig):
    rings = _rings(cfg, ["Zp:5", "Zp:7"])
    for i in range(cfg.trials):
        R = rings[(i // 2) % len(rings)]
        rng = _rng(cfg, "constructed", i)
        if R.residue_field.characteristic in (2, 3) and i % 2 == 0:
            raise ConfigError("the Weierstrass oracle family needs residue characteristic >= 5")
        if i % 2 == 0:
            f, a, classical = _weierstrass_v1(R, rng)
            payload = _poly_payload(f, family="weierstrass", a=a, classical=R.format(classical))
        else:
            f = _cone(R, 1 + (i // 2) % 3, rng)
            payload = _poly_payload(f, family="cone")
        payload["replay"] = _replay("classify", f)

        def check(f=f):
            v = _disc(f, cfg).valuation
            if v != 1:
                raise Violation("constructed instance has v(Delta) != 1", valuation=_json_val(v))
            rep = check_theorem_1_1(f, m_max=cfg.m_max, max_size=cfg.max_matrix)
            if rep.equivalence_holds is False:
                raise Violation("checker disagrees on a constructed instance", report=rep.to_json())
            return {}
        yield payload, check


def _thm11_char2(cfg: VerifyConfig):
    R = parse_ring(cfg.ring) if cfg.ring else PLocal(2)
    if not isinstance(R, DVR) or R.residue_field.characteristic != 2:
        raise ConfigError("char2 mode needs a DVR with residue characteristic 2")
    k = R.residue_field
    for i in range(cfg.trials):
        n = (1, 3)[i % 2]
        d = (2, 3)[(i // 2) % 2]
        rng = _rng(cfg, "char2", i)
        f = _random_lift(_singular_form(k, n + 1, d, rng), R, rng)

        def check(f=f):
            v = _disc(f, cfg).valuation
            if v < 2:
                raise Violation("v(Delta) < 2 in residue characteristic 2 with n odd",
                                valuation=_json_val(v))
            return {}
        yield _poly_payload(f, replay=_replay("disc", f)), check


def _suite_thm6_1(cfg: VerifyConfig):
    rs = tuple(cfg.params.get("r", (2, 3)))
    lifts = int(cfg.params.get("lifts", 20))
    K = parse_ring(cfg.ring).residue_field if cfg.ring else GF(101)
    R = PLocal(K.p) if getattr(K, "m", 1) == 1 else None
    if R is None:
        raise ConfigError("thm6_1 lifts to Z_(p); use a prime residue field")
    witnesses: dict = {}

    def witness(r, group):
        key = (r, group)
        if key not in witnesses:
            rng = _rng(cfg, "witness", r, group)
            pts = _distinct_points(K, 3, r, rng)
            try:
                witnesses[key] = isolated_singularities_example(
                    2, 2 * r + 1, pts, K, seed=rng.randrange(2 ** 30))[0]
            except NotFound as exc:
                witnesses[key] = exc
        return witnesses[key]

    for i in range(cfg.trials):
        r = rs[i % len(rs)]
        group = i // (lifts * len(rs))
        w = witness(r, group)
        if isinstance(w, Exception):
            yield {"r": r, "group": group}, (lambda w=w: _raise(Skip(f"NotFound: {w}")))
            continue
        f = _random_lift(w, R, _rng(cfg, "lift", i))

        def check(f=f, r=r):
            v = _disc(f, cfg).valuation
            if v < r:
                raise Violation("v(Delta) below the number of singular points",
                                r=r, valuation=_json_val(v))
            return {f"min_v_r{r}": v}
        yield _poly_payload(f, r=r, witness=w.format(), replay=_replay("disc", f)), check


def _raise(exc):
    raise exc


def _g2h(k: Ring, d: int, m: int, rng: random.Random, n: int = 2) -> MPoly:
    g = _random_form(k, n + 1, m, rng)
    if d - 2 * m:
        return g * g * _random_form(k, n + 1, d - 2 * m, rng)
    return g * g


def _thm94_bound(which: str, n: int, d: int, dim: int, contains_line):
    if which == "a":
        return dim + 1
    if which == "b":
        return (d - 1) // 2
    if which == "c":
        return 4 if d == 4 else 2 * d - 3
    return d - 1 if contains_line is True else None


def _suite_thm9_4(cfg: VerifyConfig, which: str):
    n = int(cfg.params.get("n", 2))
    if which == "c" and n != 2:
        raise ConfigError("part (c) concerns plane curves (n = 2)")
    lifts = int(cfg.params.get("lifts", 10))
    degrees = tuple(cfg.params.get("degrees", (3, 4, 5)))
    combos = [(d, m) for d in degrees for m in (1, 2) if 2 * m <= d and (m == 1 or which != "d")]
    rings = _rings(cfg, ["Zp:5", "Zp:7"])
    bases: dict = {}

    def base(group):
        if group not in bases:
            d, m = combos[group % len(combos)]
            R = rings[(group // len(combos)) % len(rings)]
            rng = _rng(cfg, "base", group)
            fbar = _g2h(R.residue_field, d, m, rng, n)
            rep = _analyze(fbar, cfg)
            aux = None
            if which == "d":
                aux = _line_family_check(R.residue_field, n, d, rng, cfg)
            elif which == "c":
                aux = _bezout_check(R.residue_field, d, m, rng, cfg)
            bases[group] = (R, d, m, fbar, rep, aux)
        return bases[group]

    for i in range(cfg.trials):
        group = i // lifts
        R, d, m, fbar, rep, aux = base(group)
        f = _random_lift(fbar, R, _rng(cfg, "lift", i))

        def check(f=f, d=d, m=m, rep=rep, aux=aux, first=(i % lifts == 0)):
            stats = {}
            if first and aux is not None:
                if aux.get("violation"):
                    raise Violation(aux["violation"], auxiliary=aux)
                stats["aux_" + aux["status"]] = 1
            if rep.dimension < 1:
                raise Violation("g^2 h reduction without a positive-dimensional singular locus")
            bound = _thm94_bound(which, n, d, rep.dimension, rep.contains_line)
            if bound is None:
                raise Skip("undetermined: no line certified in the singular locus")
            v = _disc(f, cfg).valuation
            if v < bound:
                raise Violation(f"v(Delta) = {v} below the bound {bound}", bound=bound,
                                valuation=_json_val(v), dim=rep.dimension)
            stats[f"min_v_d{d}_m{m}"] = v
            return stats
        yield _poly_payload(f, d=d, m=m, reduction=fbar.format(),
                            replay=_replay("disc", f)), check


def _line_family_check(k: Ring, n: int, d: int, rng: random.Random, cfg: VerifyConfig) -> dict:
    """The auxiliary form has finite singular locus with d - 1 points on the line."""
    if k.order < d - 1:
        return {"status": "skipped"}
    cs = rng.sample(list(k.elements()), d - 1)
    try:
        h = line_singular_family(n, d, cs, field=k, seed=rng.randrange(2 ** 30))
    except NotFound:
        return {"status": "skipped"}
    rep = _analyze(h, cfg)
    on_line = []
    for c in cs:
        coords = [k.zero] * (n + 1)
        coords[0], coords[1] = k.one, c
        on_line.append(PointProj(k, tuple(coords)))
    found = {P for _, P in rep.closed_points}
    if rep.dimension != 0:
        return {"status": "checked", "violation": "auxiliary form has non-finite singular locus",
                "form": h.format()}
    if not set(on_line) <= found:
        return {"status": "checked", "violation": "auxiliary form misses points on the line",
                "form": h.format()}
    return {"status": "checked"}


def _bezout_check(k: Ring, d: int, m: int, rng: random.Random, cfg: VerifyConfig) -> dict:
    """#sing(g1 g2 h) = m^2 + 2m(d - 2m) for smooth, transverse, rational configurations."""
    parts = [_random_form(k, 3, m, rng), _random_form(k, 3, m, rng)]
    if d - 2 * m:
        parts.append(_random_form(k, 3, d - 2 * m, rng))
    for g in parts:
        if g.total_degree() >= 2 and _disc(g, cfg).is_zero:
            return {"status": "skipped"}
    a = parts[0]
    for g in parts[1:]:
        a = a * g
    rep = _analyze(a, cfg)
    if (rep.dimension != 0 or rep.points_possibly_incomplete
            or any(deg != 1 for deg, _ in rep.closed_points) or any(mu != 1 for mu in rep.multiplicities)):
        return {"status": "skipped"}
    expected = m * m + 2 * m * (d - 2 * m)
    if rep.r != expected:
        return {"status": "checked", "violation": f"Bezout count {rep.r} != {expected}",
                "form": a.format()}
    return {"status": "checked"}


def _suite_prop3_3(cfg: VerifyConfig):
    rings = _rings(cfg, ["Zp:2", "Zp:3"])
    max_vars = int(cfg.params.get("max_vars", 5))
    for i in range(cfg.trials):
        R = rings[i % len(rings)]
        rng = _rng(cfg, i)
        nvars = rng.randint(2, max_vars)
        p = R.residue_field.characteristic
        terms = {}
        for mon in monomials(nvars, 2):
            if rng.random() < 0.25:
                continue
            e = rng.choice((0, 0, 1, 1, 2, 3))
            u = rng.randrange(1, 10 * p)
            while u % p == 0:
                u = rng.randrange(1, 10 * p)
            terms[mon] = R.coerce(rng.choice((1, -1)) * u * p ** e)
        q = MPoly(R, nvars, terms)

        def check(q=q):
            try:
                dec = decompose_quadratic_form(q)
            except DecompositionError as exc:
                raise Violation(f"decomposition failed: {exc}") from None
            if q.substitute_linear(dec.transform) != dec.normal_form():
                raise Violation("decomposition does not reconstruct the form")
            if not transform_is_unimodular(dec):
                raise Violation("transform is not unimodular")
            delta = quadric_discriminant(q)
            if q.terms:
                mac = _disc(q, cfg).value
                if not (R.eq(mac, delta) or R.eq(mac, R.neg(delta))):
                    raise Violation("explicit and Macaulay discriminants disagree",
                                    explicit=R.format(delta), macaulay=R.format(mac))
            v = R.valuation(delta)
            qbar = reduce_poly(q)
            dim = _analyze(qbar, cfg).dimension if qbar.terms else q.nvars - 1
            if dim >= 0 and v < dim + 1:
                raise Violation("v(Delta) below dim of the singular locus plus one",
                                valuation=_json_val(v), dim=dim)
            if dim == -1 and v != 0:
                raise Violation("smooth reduction with v(Delta) > 0", valuation=_json_val(v))
            return {"singular_reduction": int(dim >= 0)}
        yield _poly_payload(q, replay=_replay("disc", q)), check


def _suite_lemma9_1(cfg: VerifyConfig):
    K = parse_ring(cfg.ring) if cfg.ring else GF(101)
    for i in range(cfg.trials):
        rng = _rng(cfg, i)
        n = (2, 3)[i % 2]
        r = rng.randint(1, 3)
        d = rng.randint(max(2 * r - 1, 1), 2 * r + 1)
        pts = _distinct_points(K, n + 1, r, rng)
        rc = rng.choice((2, 3))
        line = _distinct_points(K, n + 1, 2, rng)
        coll = []
        while len(coll) < rc:
            s, t = K.random_element(rng), K.random_element(rng)
            if K.is_zero(s) and K.is_zero(t):
                continue
            P = PointProj(K, tuple(K.add(K.mul(s, a), K.mul(t, b))
                                   for a, b in zip(line[0].coords, line[1].coords)))
            if P not in coll:
                coll.append(P)
        payload = {"field": K.spec, "n": n, "d": d, "points": [P.format() for P in pts],
                   "collinear_d": 2 * rc - 2, "collinear_points": [P.format() for P in coll]}

        def check(pts=pts, d=d, coll=coll, rc=rc):
            sp = singularity_constraint_space(pts, d, K, check=False)
            if sp.kernel_dim != sp.expected_nullity:
                raise Violation("nullity differs from N - r(n+1)", nullity=sp.kernel_dim,
                                expected=sp.expected_nullity)
            sc = singularity_constraint_space(coll, 2 * rc - 2, K, check=False)
            if sc.kernel_dim <= sc.expected_nullity:
                raise Violation("collinear configuration has the generic nullity",
                                nullity=sc.kernel_dim, expected=sc.expected_nullity)
            return {}
        yield payload, check


def _quadric_sample(K: Ring, nvars: int, rng: random.Random, kind: int) -> MPoly:
    mons = monomials(nvars, 2)
    while True:
        if kind == 0:
            q = MPoly(K, nvars, {m: K.random_element(rng) for m in mons})
        elif kind == 1:
            # sum of rho < nvars scaled squares of random linear forms
            rho = rng.randrange(0, nvars)
            q = MPoly.zero(K, nvars)
            for _ in range(rho):
                lin = MPoly(K, nvars, {tuple(int(j == i) for j in range(nvars)): K.random_element(rng)
                                       for i in range(nvars)})
                q = q + (lin * lin).scale(K.random_element(rng))
        else:
            dead = set(rng.sample(range(nvars), rng.randint(1, nvars - 1))) if nvars > 1 else set()
            q = MPoly(K, nvars, {m: K.random_element(rng) for m in mons
                                 if not any(m[j] for j in dead)})
        if q.terms:
            return q


def _suite_cor8_6(cfg: VerifyConfig):
    fields = _rings(cfg, ["Fq:5", "Fq:7"])
    for i in range(cfg.trials):
        K = fields[i % len(fields)]
        rng = _rng(cfg, i)
        nvars = (2, 3, 4)[(i // len(fields)) % 3]
        q = _quadric_sample(K, nvars, rng, i % 3)
        line_dir = [K.random_element(rng) for _ in monomials(nvars, 2)]

        def check(q=q, K=K, nvars=nvars, line_dir=line_dir, spot=(i % 5 == 0)):
            R = PLocal(K.p)
            a = quadric_coefficients(q)
            vmin = vmin_exact_quadric(q, R)
            dbar = symbolic_discriminant_over(K, nvars)
            mult = multiplicity(dbar, a)
            if vmin > mult:
                raise Violation("vmin exceeds the multiplicity of Delta at a", vmin=vmin, mult=mult)
            # vmin >= 2 iff a is singular on V(Delta) and some lift has v(Delta) >= 2
            sing = all(K.is_zero(g.evaluate(a)) for g in [dbar] + dbar.gradient())
            delta = symbolic_discriminant_over(R, nvars)
            lifts = [[R.lift(c) for c in a]]
            for _ in range(3):
                lifts.append([R.add(R.lift(c), R.mul(R.uniformizer, R.lift(K.random_element(rng))))
                              for c in a])
            deep = any(R.valuation(delta.evaluate(b)) >= 2 for b in lifts)
            if (vmin >= 2) != (sing and deep):
                raise Violation("vmin >= 2 does not match the singular-and-liftable criterion",
                                vmin=vmin, singular_on_delta=sing, deep_lift=deep)
            rep = _analyze(q, cfg)
            single = _single_nondegenerate(q, rep)
            if (vmin == 1) != single:
                raise Violation("vmin = 1 does not match a single nondegenerate double point",
                                vmin=vmin, single_nondegenerate=single)
            coord = [j for j in range(nvars)
                     if is_singular_point(q, PointProj(K, tuple(int(t == j) for t in range(nvars))))]
            if coord and (vmin < len(coord) or mult < len(coord)):
                raise Violation("coordinate singular points exceed vmin or mult",
                                coordinate_points=coord, vmin=vmin, mult=mult)
            if rep.dimension >= 0 and rep.span_dim is not None and vmin < rep.span_dim + 1:
                raise Violation("vmin below span dimension plus one", vmin=vmin, span=rep.span_dim)
            stats = {f"vmin_{vmin}": 1}
            if spot:
                _line_spot_check(K, R, nvars, a, line_dir, dbar)
                stats["line_checks"] = 1
            return stats
        yield _poly_payload(q, replay=_replay("vmin", q, "--exact-quadric")), check


def _line_spot_check(K, R, nvars, a, w, dbar):
    """Along a(s) = a + s w the sets {vmin >= 1}, {vmin >= 2} match the zero sets
    of Delta and of Delta with its gradient."""
    grad = dbar.gradient()
    for s in K.elements():
        pt = [K.add(x, K.mul(s, y)) for x, y in zip(a, w)]
        vm = vmin_exact_quadric(pt, R, nvars)
        zero = K.is_zero(dbar.evaluate(pt))
        if (vm >= 1) != zero:
            raise Violation("vmin >= 1 differs from Delta = 0 along a line", s=s, vmin=vm)
        if vm >= 2 and not all(K.is_zero(g.evaluate(pt)) for g in grad):
            raise Violation("vmin >= 2 at a smooth point of Delta = 0", s=s, vmin=vm)


def _suite_prop5_1(cfg: VerifyConfig):
    K = parse_ring(cfg.ring) if cfg.ring else GF(101)
    degrees = tuple(cfg.params.get("degrees", (3, 4)))
    for i in range(cfg.trials):
        d = degrees[i % len(degrees)]
        f = _singular_form(K, 3, d, _rng(cfg, i))

        def check(f=f):
            rep = _analyze(f, cfg)
            return {"generic": int(_single_nondegenerate(f, rep))}
        yield _poly_payload(f, replay=_replay("singular", f)), check


PROP51_THRESHOLD = 0.95


# --- runner -------------------------------------------------------------------

_SUITE_FNS = {
    "prop3_1": _suite_prop3_1,
    "degree_scaling": _suite_degree_scaling,
    "smooth_criterion": _suite_smooth_criterion,
    "thm1_1": _suite_thm1_1,
    "thm6_1": _suite_thm6_1,
    "thm9_4a": lambda cfg: _suite_thm9_4(cfg, "a"),
    "thm9_4b": lambda cfg: _suite_thm9_4(cfg, "b"),
    "thm9_4c": lambda cfg: _suite_thm9_4(cfg, "c"),
    "thm9_4d": lambda cfg: _suite_thm9_4(cfg, "d"),
    "prop3_3": _suite_prop3_3,
    "lemma9_1": _suite_lemma9_1,
    "cor8_6": _suite_cor8_6,
    "prop5_1": _suite_prop5_1,
}


def _merge_stats(report: VerifyReport, stats: dict):
    for key, val in stats.items():
        if key.startswith("min_"):
            old = report.stats.get(key)
            report.stats[key] = val if old is None else min(old, val)
        else:
            report.bump(key, val)


def run_suite(config: VerifyConfig, progress=None) -> VerifyReport:
    """Run one suite; failures and skips are collected, never raised."""
    report = VerifyReport(config.suite, config)
    for index, (payload, check) in enumerate(_SUITE_FNS[config.suite](config)):
        report.instances += 1
        try:
            stats = check() or {}
        except Skip as exc:
            report.skipped.append({"index": index, "reason": str(exc)})
        except (BudgetExceeded, NotFound) as exc:
            report.skipped.append({"index": index, "reason": f"{type(exc).__name__}: {exc}"})
        except Violation as exc:
            report.failures.append({"index": index, "instance": payload, "reason": str(exc),
                                    "data": _jsonable(exc.data)})
        except ConfigError:
            raise
        except Exception as exc:  # noqa: BLE001 - recorded, not raised
            report.failures.append({"index": index, "instance": payload,
                                    "reason": f"error: {type(exc).__name__}: {exc}"})
        else:
            report.passed += 1
            _merge_stats(report, stats)
        if progress:
            progress(report)
    if config.suite == "prop5_1" and report.passed:
        rate = report.stats.get("generic", 0) / report.passed
        report.stats["generic_rate"] = round(rate, 6)
        report.stats["threshold"] = PROP51_THRESHOLD
        if rate < PROP51_THRESHOLD:
            report.failures.append({"index": None, "instance": None,
                                    "reason": f"generic rate {rate:.4f} below {PROP51_THRESHOLD}"})
    return report


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x == INF:
        return "inf"
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)
