"""The twelve acceptance criteria, each run at its stated size.

Every test prints one ``CRITERION k: PASS|FAIL`` line (also when run with
``python tests/test_acceptance.py``).
"""
import sys
import time

import pytest

from discval.harness import VerifyConfig, run_suite

SEED = 0


@pytest.fixture
def report_line(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nCRITERION {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
    return emit


def _run(suite, trials, **params):
    start = time.perf_counter()
    rep = run_suite(VerifyConfig(suite, trials=trials, seed=SEED, params=params))
    return rep, time.perf_counter() - start


def _detail(rep, elapsed):
    return f"[{rep.passed}/{rep.instances} passed, {len(rep.skipped)} skipped, {elapsed:.1f}s]"


def test_c01_quadric_determinant(report_line):
    rep, t = _run("prop3_1", 300)
    ok = rep.ok and rep.passed == 300 and t < 10
    report_line(1, "quadric Delta = +-Det (/2)", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed == 300
    assert t < 10


def test_c02_degree_scaling(report_line):
    rep, t = _run("degree_scaling", 120)
    ok = rep.ok and rep.passed == 120 and t < 60
    report_line(2, "Delta(lambda f) = lambda^deg Delta(f)", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed == 120
    assert t < 60


def test_c03_smoothness_criterion(report_line):
    rep, t = _run("smooth_criterion", 200)
    ok = rep.ok and rep.passed > 0
    report_line(3, "Delta(fbar) = 0 iff a singular point exists", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed > 0


def test_c04_valuation_one_forward(report_line):
    rep, t = _run("thm1_1", 500, mode="random")
    hits = rep.stats.get("v_eq_1", 0)
    ok = rep.ok and hits > 0
    report_line(4, "v = 1 => regular + one nondegenerate point", ok,
                _detail(rep, t) + f" v=1 instances: {hits}")
    assert rep.failures == [] and hits > 0


def test_c05_valuation_one_backward(report_line):
    rep, t = _run("thm1_1", 50, mode="constructed")
    ok = rep.ok and rep.passed == 50
    report_line(5, "constructed regular nodes have v = 1", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed == 50


def test_c06_char_two_obstruction(report_line):
    rep, t = _run("thm1_1", 200, mode="char2")
    ok = rep.ok and rep.passed > 0
    report_line(6, "residue char 2, n odd: v >= 2", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed > 0


def test_c07_isolated_points_bound(report_line):
    rep, t = _run("thm6_1", 40)
    ok = rep.ok and rep.passed > 0
    report_line(7, "r isolated singular points: v >= r", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed > 0


def test_c08_positive_dimensional_bounds(report_line):
    results = {part: _run(f"thm9_4{part}", 100) for part in "bcd"}
    ok = all(rep.ok and rep.passed > 0 for rep, _ in results.values())
    detail = " ".join(f"({p}) {_detail(rep, t)}" for p, (rep, t) in results.items())
    report_line(8, "curve singular locus bounds (b)/(c)/(d)", ok, detail)
    for rep, _ in results.values():
        assert rep.failures == [] and rep.passed > 0


def test_c09_quadric_decomposition(report_line):
    rep, t = _run("prop3_3", 300)
    ok = rep.ok and rep.passed == 300
    report_line(9, "DVR quadric decomposition and v >= dim + 1", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed == 300


def test_c10_constraint_nullity(report_line):
    rep, t = _run("lemma9_1", 100)
    ok = rep.ok and rep.passed == 100
    report_line(10, "constraint nullity N - r(n+1); collinear excess", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed == 100


def test_c11_vmin_quadrics(report_line):
    rep, t = _run("cor8_6", 200)
    ok = rep.ok and rep.passed > 0
    report_line(11, "vmin on quadrics: mult, biconditional, single node, spans", ok, _detail(rep, t))
    assert rep.failures == [] and rep.passed > 0


def test_c12_generic_singular_curves(report_line):
    rep, t = _run("prop5_1", 500)
    rate = rep.stats.get("generic_rate", 0.0)
    ok = rep.ok and rate >= 0.95
    report_line(12, "generic singular curve has one node (>= 95%)", ok,
                _detail(rep, t) + f" rate {rate:.3f}")
    assert rep.failures == [] and rate >= 0.95


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
