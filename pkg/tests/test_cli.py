import io
import json

import pytest

from cyclok.cli import RunConfig, main, run


def call(*argv, capsys):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_find_t0_d5(capsys):
    code, out, _ = call("find-t0", "D:5:1", capsys=capsys)
    assert code == 0
    assert "1/2, 3/8, 1/4, 1/8, 0" in out and "star: pass" in out


def test_gram_g24(capsys):
    code, out, _ = call("gram", "grassmannian:2:4", "--json-only", capsys=capsys)
    report = json.loads(out)
    assert code == 0 and report["gram"]["identity"]
    assert len(report["gram"]["entries"]) == 6


def test_star_g2_reports_parity(capsys):
    code, out, _ = call("star", "G2:2:1", "--json-only", capsys=capsys)
    report = json.loads(out)
    assert code == 1
    assert report["obstruction"] == {"dimension": 5, "node": 1, "order_mod_Qi": 1}


def test_star_search_fallback(capsys):
    code, out, _ = call("star", "F4:4:2", "--order-bound", "6", "--json-only", capsys=capsys)
    report = json.loads(out)
    assert code == 1 and report["search"]["found"] == []


def test_gram_failure_exit_code(capsys):
    code, out, _ = call("gram", "projective:3", "--collection", "O(0);O(0);O(1)", capsys=capsys)
    assert code == 1 and "NOT" in out


def test_congruence(capsys):
    code, out, _ = call("congruence", "quadric-even:4", "--p", "2", "--collection", "spinor+;O(2)", "--json-only",
                        capsys=capsys)
    report = json.loads(out)
    assert code == 0
    spinor, o2 = report["classes"]
    assert spinor["match"] is None
    assert o2["match"] == {"label": "O(2)", "sign": 1}
    assert set(spinor) >= {"basis", "class", "coefficients", "reduced", "match", "checks"}


@pytest.mark.parametrize(
    "argv",
    [["star", "nowhere:1"], ["gram"], ["congruence", "projective:4"], ["star", "hirzebruch:3"], ["bogus"],
     ["gram", "projective:3", "--collection", "O(1"]],
)
def test_usage_errors(argv, capsys):
    code, _, err = call(*argv, capsys=capsys)
    assert code == 2


def test_output_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(RunConfig("gram", "quadric-odd:5", out=path), stdout=io.StringIO())
    assert a.read_bytes() == b.read_bytes()
    assert list(json.loads(a.read_text())) == sorted(json.loads(a.read_text()))


def test_suite_family(capsys):
    code, out, _ = call("suite", "--family", "projective", capsys=capsys)
    assert code == 0 and out.count("[PASS]") == 4
