import json

import pytest

from discval import harness
from discval.cli import main
from discval.harness import Violation, _poly_payload, _replay
from discval.mpoly import MPoly
from discval.rings import PLocal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_disc_integer_example(capsys):
    code, doc, err = run(capsys, "disc", "2*x0^2 + 3*x0*x1 + 5*x1^2")
    assert code == 0
    assert doc["schema"] == 1 and doc["command"] == "disc"
    assert abs(int(doc["value"])) == 31


def test_disc_valuation(capsys):
    code, doc, _ = run(capsys, "disc", "--ring", "Zp:5", "x0^2 + x1^2 + 5*x2^2")
    assert code == 0 and doc["valuation"] == 1
    code, doc, _ = run(capsys, "disc", "--ring", "Zp:5", "--vars", "3", "x0^2 + x1^2")
    assert code == 0 and doc["valuation"] == "inf"


def test_usage_errors(capsys):
    code, doc, err = run(capsys, "disc", "x0^2 + * x1")
    assert code == 2 and doc is None and "error" in err
    code, _, _ = run(capsys, "disc", "x0^2 + x1")
    assert code == 2
    code, _, _ = run(capsys, "disc", "--degree", "3", "x0^2 + x1^2")
    assert code == 2
    code, _, _ = run(capsys, "disc", "--ring", "Zp:6", "x0^2")
    assert code == 2
    code, _, _ = run(capsys, "bogus")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--suite", "thm1_1", "--param", "oops")
    assert code == 2


def test_singular_and_classify(capsys):
    code, doc, _ = run(capsys, "singular", "--field", "Fq:7", "x0*x1*x2")
    assert code == 0 and doc["r"] == 3 and doc["dimension"] == 0
    code, doc, _ = run(capsys, "classify", "--ring", "Zp:5", "x0^2 + x1^2 + 5*x2^2")
    assert code == 0 and doc["equivalence_holds"] is True and doc["valuation"] == 1


def test_vmin(capsys):
    code, doc, _ = run(capsys, "vmin", "--field", "Fq:5", "--exact-quadric", "--vars", "3",
                       "x0^2 + x1^2")
    assert code == 0 and doc["vmin"] == 1
    code, doc, _ = run(capsys, "vmin", "--field", "Fq:5", "--trials", "8", "--seed", "1",
                       "x0^2 + x1^2 + x2^2")
    assert code == 0 and doc["vmin"] == 0


@pytest.mark.parametrize("argv", [
    ["make", "lemma93", "--seed", "1"],
    ["make", "line-family", "--field", "Fq:7", "--c", "1,2"],
    ["make", "quadric", "--kind", "nodal-cone", "--n", "2", "--ring", "Zp:3"],
    ["make", "weierstrass", "--ring", "Zp:5", "--a", "0,1,0,0,5"],
])
def test_make_families(capsys, argv):
    code, doc, _ = run(capsys, *argv)
    assert code == 0 and doc["command"] == "make" and doc["poly"]


def test_make_not_found_is_computation_error(capsys):
    code, _, err = run(capsys, "make", "lemma93", "--budget", "0")
    assert code == 1 and "not found" in err


def test_verify_and_byte_identical(capsys):
    argv = ["verify", "--suite", "prop3_1", "--trials", "20", "--seed", "7", "--quiet"]
    assert main(argv) == 0
    first = capsys.readouterr()
    assert main(argv) == 0
    second = capsys.readouterr()
    assert first.out == second.out and first.err == "" == second.err
    doc = json.loads(first.out)
    assert doc["suite"] == "prop3_1" and doc["passed"] == 20


def test_verify_summary_on_stderr(capsys):
    code, doc, err = run(capsys, "verify", "--suite", "lemma9_1", "--trials", "5")
    assert code == 0 and "lemma9_1: PASS" in err


def test_failing_instance_can_be_replayed(capsys, monkeypatch):
    R = PLocal(5)
    f = MPoly.parse("x0^2 + x1^2 + 5*x2^2", R)

    def suite(cfg):
        def check():
            raise Violation("planted", valuation=1)
        yield _poly_payload(f, replay=_replay("disc", f)), check
    monkeypatch.setitem(harness._SUITE_FNS, "prop3_1", suite)
    code, doc, _ = run(capsys, "verify", "--suite", "prop3_1", "--trials", "1", "--quiet")
    assert code == 3
    replay = doc["failures"][0]["instance"]["replay"]
    assert replay[0] == "disc-val"
    code, again, _ = run(capsys, *replay[1:])
    assert code == 0 and again["valuation"] == 1


def test_all_skipped_exit_code(capsys, monkeypatch):
    def suite(cfg):
        def check():
            raise harness.Skip("undetermined")
        yield {}, check
    monkeypatch.setitem(harness._SUITE_FNS, "cor8_6", suite)
    code, doc, _ = run(capsys, "verify", "--suite", "cor8_6", "--trials", "1", "--quiet")
    assert code == 4 and doc["skipped"] == 1
