import io
import json
from fractions import Fraction

import pytest

import cspoly.cli as cli
from cspoly.cache import ResultCache, config_key
from cspoly.coeffs import KAPPA, scalar_from_json, scalar_to_json
from cspoly.fbasis import f_vector
from cspoly.model import ModelSpec, preset
from cspoly.serialize import poly_from_json, poly_to_json
from cspoly.solver import solve_eigenfunction
from cspoly.symcore import BiSymmetricPoly


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


def test_repr_example():
    code, out, _ = run("repr", "--partition", "8,7,3,3,3,2,2,2,1")
    assert code == 0
    assert json.loads(out) == {"M": 2, "Mtilde": 3}


def test_fpoly_example(cache_dir):
    code, out, _ = run("fpoly", "--case", "II", "--kappa-symbolic", "--N", "2", "--n", "0,1", "--cache-dir", cache_dir)
    assert code == 0
    P = poly_from_json(json.loads(out))
    assert P == f_vector((0, 1), ModelSpec(preset("II").ab, KAPPA, 2))
    assert P.terms == {(1,): KAPPA * (1 - KAPPA)}


def test_poly_matches_library(cache_dir):
    code, out, _ = run("poly", "--N", "2", "--n", "2,0", "--kappa", "2/3", "--cache-dir", cache_dir)
    assert code == 0
    obj = json.loads(out)
    r = solve_eigenfunction((2, 0), ModelSpec(preset("II").ab, Fraction(2, 3), 2))
    assert json.dumps(obj, sort_keys=True) == json.dumps(json.loads(cli.dumps(cli.eigenresult_to_json(r))), sort_keys=True)


def test_text_and_latex_formats():
    for fmt in ("text", "latex"):
        code, out, _ = run("eigenvalue", "--N", "2", "--partition", "2,1", "--format", fmt, "--no-cache")
        assert code == 0 and out.strip()
    code, out, _ = run("presets", "--format", "text")
    assert code == 0 and len(out.strip().splitlines()) == 7


@pytest.mark.parametrize("argv", [
    ("poly", "--N", "2", "--n", "1", "--no-cache"),
    ("poly", "--N", "2", "--n", "a,b", "--no-cache"),
    ("poly", "--kappa", "-1", "--N", "1", "--n", "1", "--no-cache"),
    ("repr", "--partition", "1,2"),
    ("frobnicate",),
    ("poly", "--case", "II", "--custom", "1,0,0,1,0", "--n", "1", "--no-cache"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert json.loads(err.strip().splitlines()[-1])["error"]


def test_degenerate_exits_3():
    code, out, err = run("poly", "--case", "VII", "--N", "2", "--n", "1,1", "--no-cache")
    assert code == 3
    assert json.loads(err)["error"] == "degenerate_eigenvalue"


def test_verify_passes():
    assert run("verify", "source-identity", "--case", "II", "--N", "3")[0] == 0
    assert run("verify", "source-identity", "--case", "VI", "--masses", "1,1,-1", "--kappa", "3/4")[0] == 0
    assert run("verify", "eigen", "--N", "2", "--Ntilde", "1", "--n", "1,1,0")[0] == 0
    assert run("verify", "action", "--case", "I", "--N", "2", "--n", "3,1")[0] == 0
    assert run("verify", "membership", "--N", "1", "--Ntilde", "1", "--n", "2,1")[0] == 0
    for oracle, argv in (("jack", ("--N", "3", "--n", "2,1,0")), ("schur", ("--N", "3", "--n", "2,1,0")),
                         ("classical", ("--case", "IV", "--N", "1", "--n", "4")), ("series", ("--N", "2", "--n", "0,2"))):
        code, out, _ = run("verify", "oracle", "--oracle", oracle, *argv)
        assert code == 0, oracle
        assert json.loads(out)["passed"]


def test_verify_failure_exits_4(monkeypatch):
    monkeypatch.setattr(cli, "source_identity_residual", lambda masses, ab, kappa, pts: [Fraction(1)] * len(pts))
    code, out, _ = run("verify", "source-identity", "--N", "2", "--points", "3")
    assert code == 4
    assert json.loads(out) == {"check": "source-identity", "passed": False, "points": 3, "seed": 0xC5D0,
                               "nonzero_at": [0, 1, 2]}


def test_cache_hits_are_byte_identical(cache_dir, monkeypatch):
    argv = ("poly", "--N", "3", "--n", "1,1,1", "--cache-dir", cache_dir)
    first = run(*argv)
    calls = []
    monkeypatch.setitem(cli._CACHED, "poly", lambda cfg: calls.append(cfg) or "recomputed\n")
    second = run(*argv)
    assert first == second
    assert not calls


def test_no_cache_bypasses(cache_dir, monkeypatch, tmp_path):
    run("poly", "--N", "2", "--n", "1,0", "--cache-dir", cache_dir)
    monkeypatch.setitem(cli._CACHED, "poly", lambda cfg: "fresh\n")
    assert run("poly", "--N", "2", "--n", "1,0", "--no-cache")[1] == "fresh\n"
    empty = tmp_path / "unused"
    run("poly", "--N", "2", "--n", "1,0", "--no-cache", "--cache-dir", str(empty))
    assert not empty.exists()


def test_corrupt_entry_is_recomputed(cache_dir):
    argv = ("fpoly", "--N", "2", "--n", "1,1", "--cache-dir", cache_dir)
    good = run(*argv)
    paths = list(ResultCache(cache_dir).root.rglob("*.json"))
    assert len(paths) == 1
    paths[0].write_text("{not json", encoding="utf-8")
    assert run(*argv) == good
    entry = json.loads(paths[0].read_text(encoding="utf-8"))
    entry["payload"] = "tampered\n"
    paths[0].write_text(json.dumps(entry), encoding="utf-8")
    assert run(*argv) == good


def test_cache_key_depends_on_config():
    a = {"command": "poly", "n": [1, 0]}
    assert config_key(a) == config_key(dict(reversed(list(a.items()))))
    assert config_key(a) != config_key({"command": "poly", "n": [0, 1]})


def test_serialization_round_trip():
    spec = ModelSpec(preset("VI").ab, KAPPA, 2)
    P = solve_eigenfunction((2, 1), spec).monomial_form
    assert poly_from_json(json.loads(cli.dumps(poly_to_json(P)))) == P
    B = BiSymmetricPoly(1, 1, {(1, 0): Fraction(2, 3), (0, 1): -1})
    assert poly_from_json(poly_to_json(B)) == B
    for x in (Fraction(0), Fraction(-7, 3), KAPPA / (KAPPA + 1), KAPPA * 0 + 5):
        y = scalar_from_json(scalar_to_json(x))
        assert y == x
