"""``disc-val`` command line: one JSON document on stdout per invocation.

Exit codes: 0 success, 1 computation error, 2 usage or parse error,
3 verification failures, 4 every verification instance skipped.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .constructions import (NotFound, QuadricKind, isolated_singularities_example,
                            line_singular_family, quadric_normal_form, weierstrass_cubic)
from .discriminant import MAX_MATRIX, InvalidInput, discriminant
from .harness import SUITES, THM11_MODES, ConfigError, VerifyConfig, run_suite
from .localanalysis import (check_theorem_1_1, classify_double_point, vmin_exact_quadric,
                            vmin_sample)
from .mpoly import MPoly, PointProj, parse_poly
from .parsing import ParseError
from .rings import DVR, INF, PLocal, parse_ring
from .specialfiber import DEFAULT_MAX_ENUM, DEFAULT_MMAX, analyze_singular_locus

SCHEMA = 1

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_FAILURES, EXIT_ALL_SKIPPED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _ring(spec: str):
    try:
        return parse_ring(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _poly(text: str, ring, nvars: int | None, degree: int | None = None) -> MPoly:
    try:
        f = parse_poly(text, ring, nvars)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}") from None
    except (ZeroDivisionError, ArithmeticError) as exc:
        raise UsageError(f"parse error: {exc}") from None
    if degree is not None and f.terms and not f.is_homogeneous(degree):
        raise UsageError(f"polynomial is not a form of degree {degree}")
    return f


def _val(v):
    return "inf" if v == INF else v


# --- commands -----------------------------------------------------------------

def cmd_disc(args) -> tuple[dict, str]:
    R = _ring(args.ring)
    f = _poly(args.poly, R, args.vars, args.degree)
    res = discriminant(f, max_size=args.max_matrix, seed=args.seed)
    out = res.to_json()
    msg = f"Delta = {out['value']}"
    if isinstance(R, DVR):
        msg += f", v(Delta) = {out['valuation']}"
    return out, msg


def cmd_singular(args):
    K = _ring(args.field)
    if not getattr(K, "characteristic", 0):
        raise UsageError("--field must be a finite field such as Fq:7 or Fq:3^2")
    f = _poly(args.poly, K, args.vars, args.degree)
    rep = analyze_singular_locus(f, m_max=args.mmax, seed=args.seed or 0, max_enum=args.max_enum)
    out = rep.to_json()
    if rep.dimension == 0:
        out["classifications"] = [classify_double_point(f, P).to_json()
                                  for _, P in rep.closed_points]
    return out, f"singular locus: dimension {rep.dimension}, r = {rep.r}, degree {rep.degree}"


def cmd_classify(args):
    R = _ring(args.ring)
    if not isinstance(R, DVR):
        raise UsageError("--ring must be a DVR (Zp:p or Fpt:p)")
    f = _poly(args.poly, R, args.vars, args.degree)
    rep = check_theorem_1_1(f, m_max=args.mmax, seed=args.seed or 0, max_size=args.max_matrix)
    out = rep.to_json()
    return out, (f"v(Delta) = {out['valuation']}, regular = {rep.regular}, "
                 f"single nondegenerate point = {rep.nondeg_single_point}, "
                 f"equivalence = {rep.equivalence_holds}")


def _dvr_over(K, spec: str | None):
    if spec is None:
        if getattr(K, "m", 1) != 1:
            raise UsageError("vmin lifts to Z_(p); the residue field must be prime")
        return PLocal(K.characteristic)
    R = _ring(spec)
    if not isinstance(R, DVR) or R.residue_field != K:
        raise UsageError("--ring must be a DVR whose residue field is --field")
    return R


def cmd_vmin(args):
    K = _ring(args.field)
    if not getattr(K, "characteristic", 0):
        raise UsageError("--field must be a finite field")
    f = _poly(args.poly, K, args.vars, args.degree)
    R = _dvr_over(K, args.ring)
    if args.exact_quadric:
        if not f.is_homogeneous(2):
            raise UsageError("--exact-quadric needs a quadratic form")
        v = vmin_exact_quadric(f, R)
        out = {"vmin": _val(v), "method": "exact-quadric", "ring": R.spec, "exact": True}
    else:
        v = vmin_sample(f, args.trials, R, seed=args.seed or 0, max_size=args.max_matrix)
        out = {"vmin": _val(v), "method": "sampled", "ring": R.spec, "trials": args.trials,
               "seed": args.seed or 0, "exact": False}
    return out, f"vmin = {out['vmin']} ({out['method']})"


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _points(text: str, K, nvars: int) -> list[PointProj]:
    pts = []
    for chunk in text.split(";"):
        coords = chunk.strip().strip("()").split(":")
        if len(coords) != nvars:
            raise UsageError(f"point {chunk!r} needs {nvars} coordinates")
        try:
            pts.append(PointProj(K, tuple(K.parse(c) for c in coords)))
        except (ValueError, ArithmeticError) as exc:
            raise UsageError(f"bad point {chunk!r}: {exc}") from None
    return pts


def cmd_make(args):
    what = args.family
    if what == "lemma93":
        K = _ring(args.field)
        pts = _points(args.points, K, args.n + 1)
        f, rep = isolated_singularities_example(args.n, args.degree, pts, K, seed=args.seed or 0,
                                                budget=args.budget)
        check = {"singular_report": rep.to_json(),
                 "prescribed": [P.format() for P in pts]}
    elif what == "line-family":
        K = _ring(args.field)
        f = line_singular_family(args.n, args.degree, [K.from_int(c) for c in _int_list(args.c)],
                                 field=K, seed=args.seed or 0)
        rep = analyze_singular_locus(f, m_max=args.mmax)
        check = {"singular_report": rep.to_json()}
    elif what == "quadric":
        R = _ring(args.ring)
        f = quadric_normal_form(args.kind, args.n, R)
        res = discriminant(f, max_size=args.max_matrix) if f.nvars >= 2 else None
        check = {"discriminant": res.to_json() if res else None}
    else:
        R = _ring(args.ring)
        coeffs = [R.parse(c) for c in args.a.split(",")]
        if len(coeffs) != 5:
            raise UsageError("--a takes a1,a2,a3,a4,a6")
        f, classical = weierstrass_cubic(*coeffs, ring=R)
        res = discriminant(f, max_size=args.max_matrix)
        check = {"discriminant": res.to_json(), "classical": R.format(classical),
                 "agree_up_to_sign": R.eq(res.value, classical)
                 or R.eq(res.value, R.neg(classical))}
        if isinstance(R, DVR):
            check["classical_valuation"] = _val(R.valuation(classical))
    out = {"family": what, "ring": f.ring.spec, "vars": f.nvars, "poly": f.format(),
           "verification": check}
    return out, f"{what}: {f.format()}"


def cmd_verify(args):
    params = {}
    if args.mode:
        params["mode"] = args.mode
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    try:
        cfg = VerifyConfig(args.suite, ring=args.ring, trials=args.trials, seed=args.seed or 0,
                           max_matrix=args.max_matrix, max_enum=args.max_enum, m_max=args.mmax,
                           params=params)
        report = run_suite(cfg)
    except (ConfigError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return report.to_json(), report.summary(), report.exit_code


# --- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", type=int, help="number of variables (n + 1)")
    common.add_argument("--degree", type=int, help="require a form of this degree")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--mmax", type=int, default=DEFAULT_MMAX,
                        help="largest extension degree searched for points")
    common.add_argument("--max-matrix", type=int, default=MAX_MATRIX)
    common.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM)
    common.add_argument("--quiet", action="store_true", help="no summary on stderr")
    common.add_argument("--json-only", action="store_true", help="alias of --quiet")

    p = argparse.ArgumentParser(prog="disc-val", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("disc", parents=[common], help="discriminant and its valuation")
    s.add_argument("--ring", default="ZZ")
    s.add_argument("poly")

    s = sub.add_parser("singular", parents=[common], help="singular locus of a form over F_q")
    s.add_argument("--field", required=True)
    s.add_argument("poly")

    s = sub.add_parser("classify", parents=[common], help="v(Delta) = 1 characterisation check")
    s.add_argument("--ring", required=True)
    s.add_argument("poly")

    s = sub.add_parser("vmin", parents=[common], help="minimal valuation of Delta over lifts")
    s.add_argument("--field", required=True)
    s.add_argument("--ring", default=None, help="DVR to lift into (default Zp:p)")
    s.add_argument("--exact-quadric", action="store_true")
    s.add_argument("--trials", type=int, default=64)
    s.add_argument("poly")

    s = sub.add_parser("make", parents=[common], help="construct example forms")
    s.add_argument("family", choices=["lemma93", "line-family", "quadric", "weierstrass"])
    s.add_argument("--field", default="Fq:101")
    s.add_argument("--ring", default="Zp:5")
    s.add_argument("--n", type=int, default=2, help="projective dimension")
    s.add_argument("--points", default="1:0:0;0:1:0", help="e.g. '1:0:0;0:1:0'")
    s.add_argument("--c", default="0,1", help="distinct constants c_1..c_{d-1}")
    s.add_argument("--kind", default="smooth-split", choices=[k.value for k in QuadricKind])
    s.add_argument("--a", default="0,0,0,-1,0", help="a1,a2,a3,a4,a6")
    s.add_argument("--budget", type=int, default=50)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--ring", default=None, help="override the suite's default ring or field")
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--mode", choices=THM11_MODES, default=None, help="thm1_1 family")
    s.add_argument("--param", action="append", help="extra suite parameter key=value")
    return p


_COMMANDS = {"disc": cmd_disc, "singular": cmd_singular, "classify": cmd_classify,
             "vmin": cmd_vmin, "make": cmd_make, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "make" and args.degree is None:
        args.degree = 5 if args.family == "lemma93" else 3
    quiet = args.quiet or args.json_only
    try:
        result = _COMMANDS[args.command](args)
    except (UsageError, InvalidInput) as exc:
        print(f"disc-val: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotFound as exc:
        print(f"disc-val: not found: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except Exception as exc:  # noqa: BLE001 - any library error is a computation error
        print(f"disc-val: computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    payload, summary, *code = result
    doc = {"schema": SCHEMA, "command": args.command}
    doc.update(payload)
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    if not quiet:
        print(summary, file=sys.stderr)
    return code[0] if code else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
