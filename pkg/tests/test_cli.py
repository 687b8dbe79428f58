import json

import pytest

from coxstokes.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


def run(args):
    return main(args)


def test_describe(tmp_path, capsys):
    out = tmp_path / "a2.json"
    assert run(["describe", "--type", "A2", "--json-out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["coxeter_number"] == 3
    assert doc["num_roots"] == 6


def test_describe_bad_type():
    assert run(["describe", "--type", "A1"]) == EXIT_DOMAIN
    assert run(["describe", "--type", "Z9"]) == EXIT_DOMAIN


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["describe"])
    assert exc.value.code == EXIT_USAGE


def test_plane_e8_sidecar(tmp_path):
    js = tmp_path / "e8.json"
    svg = tmp_path / "e8.svg"
    assert run(["plane", "--type", "E8", "--json-out", str(js), "--svg-out", str(svg)]) == EXIT_OK
    doc = json.loads(js.read_text())
    assert doc["spokes"] == 60 and doc["wheels"] == 8
    text = svg.read_text()
    assert text.startswith("<svg") and "d60" in text


def test_plane_deterministic_bytes(tmp_path):
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    for path in (a, b):
        assert run(["plane", "--type", "D4", "--json-out", str(tmp_path / "x.json"),
                    "--svg-out", str(path)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_verify_single(tmp_path):
    out = tmp_path / "v.json"
    assert run(["verify", "--type", "B3", "--json-out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["passed"] and any(c["name"] == "apposition_spectrum" for c in doc["checks"])


def test_verify_spectrum_skipped_by_cap(tmp_path):
    out = tmp_path / "v.json"
    assert run(["verify", "--type", "B3", "--spec-dim-cap", "5",
                "--json-out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert all(c["name"] != "apposition_spectrum" for c in doc["checks"])


def test_stokes_roundtrip(tmp_path):
    out = tmp_path / "s.json"
    assert run(["stokes", "--type", "A2", "--m", "0,0", "--json-out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["spectrum_check"]["ok"]
    assert doc["k1_support"] == [[0, 1]]
    assert max(abs(re) + abs(im) for re, im in doc["t"]) < 1e-10


def test_stokes_inadmissible(tmp_path):
    out = tmp_path / "s.json"
    assert run(["stokes", "--type", "A2", "--m=-5,0", "--json-out", str(out)]) == EXIT_DOMAIN
    doc = json.loads(out.read_text())
    assert doc["alcove"]["admissible"] is False


def test_monodromy_pass_and_fail(tmp_path):
    out = tmp_path / "m.json"
    assert run(["monodromy", "--rank", "2", "--k", "0,1,1",
                "--json-out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["passed"] and doc["max_coeff_residual"] < 1e-6
    assert run(["monodromy", "--rank", "2", "--k", "0,1,1", "--tol", "1e-30",
                "--json-out", str(out)]) == EXIT_VERIFY


def test_monodromy_domain_error():
    assert run(["monodromy", "--rank", "2", "--k", "0,1,2"]) == EXIT_DOMAIN
