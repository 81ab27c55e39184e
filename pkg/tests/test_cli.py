import io
import json

import pytest

from hopfkit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_STAGE, main
from hopfkit.commutative import cyclic, group_algebra
from hopfkit.hopf import check_hopf, element_to_json, from_json, same_tables, to_json, unit_element
from hopfkit.linalg import PrimeField
from hopfkit.plie import abelian2, enveloping, generator_element
from hopfkit.twists import exp_twist
from hopfkit.linalg import SparseTensor


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_catalog_lists_fixtures():
    code, text = run("catalog", "--json")
    assert code == EXIT_OK
    names = [fx["name"] for fx in json.loads(text)["fixtures"]]
    assert len(names) >= 12
    for want in ("abelianres-p2", "2dim-p3", "witt-p3-i1", "heisenberg-Z3", "vanish1-mu2", "isocat-D4"):
        assert want in names
    assert all(fx["origin"] for fx in json.loads(text)["fixtures"])


def test_catalog_section():
    code, text = run("catalog", "--section", "examples", "--json")
    assert code == EXIT_OK
    names = {fx["name"].split("-p")[0] for fx in json.loads(text)["fixtures"]}
    assert names == {"abelianres", "2dim", "witt", "frobenius-gl3"}
    assert run("catalog", "--section", "nope")[0] == EXIT_INPUT


def test_verify_fixture_with_checks():
    code, text = run("verify", "2dim-p2", "--checks", "triangular,noncomm,nococomm", "--json")
    assert code == EXIT_OK
    rep = json_lines(text)[0]
    assert {c["name"].split(".")[0] for c in rep["checks"]} == {"triangular", "noncomm", "nococomm"}
    assert run("verify", "2dim-p2", "--checks", "bogus")[0] == EXIT_INPUT


def test_verify_abelianres_p3_values():
    code, text = run("verify", "abelianres-p3", "--json")
    assert code == EXIT_OK
    v = json_lines(text)[0]["values"]
    assert v["minimality_rank"] == 9 and v["nondegenerate"] is True and v["verdict"] == "simple_matrix(3)"


def test_bad_antipode_is_reported(tmp_path):
    obj = to_json(group_algebra(cyclic(3), PrimeField(2)))
    obj["antipode"] = [[i, i, 1] for i in range(3)]                 # identity instead of inversion
    path = tmp_path / "bad_hopf.json"
    path.write_text(json.dumps(obj))
    code, text = run("verify", str(path), "--json")
    assert code == EXIT_FAIL
    rep = json_lines(text)[0]
    failed = [c for c in rep["checks"] if not c["passed"]]
    assert failed[0]["name"].startswith("antipode")
    assert failed[0]["witness"]["element"] in ("g", "g^2")


@pytest.mark.parametrize("content", ["{not json", json.dumps({"dim": 2, "mult": []}), json.dumps([1, 2])])
def test_malformed_input(tmp_path, content):
    path = tmp_path / "junk.json"
    path.write_text(content)
    assert run("verify", str(path))[0] == EXIT_INPUT


def test_unknown_target():
    assert run("verify", "no-such-thing")[0] == EXIT_INPUT


def test_verify_presentation_name():
    code, text = run("verify", "fun(Z4)", "--field", "Q", "--quiet")
    assert code == EXIT_OK and text.strip() == "PASS fun(Z4)"


def test_isocat_exit_codes(tmp_path):
    code, text = run("isocat", "isocat-D4", "--json")
    assert code == EXIT_OK
    rep = json.loads(text)
    assert rep["failed_stage"] is None
    assert rep["artifacts"]["btilde"] == [["e", "e"], ["e", "r^2"]]

    nonnormal = tmp_path / "s3.json"
    nonnormal.write_text(json.dumps({"group": "S3", "subgroup": [0, 1], "field": "Fp:5"}))
    code, text = run("isocat", str(nonnormal), "--json")
    assert code == EXIT_STAGE and json.loads(text)["failed_stage"] == "embedding"

    degenerate = tmp_path / "d4.json"
    degenerate.write_text(json.dumps({"group": "D4", "subgroup": [0, 2, 4, 6], "field": "Fp:3",
                                      "form": {"table": [[1] * 4] * 4}}))
    code, text = run("isocat", str(degenerate), "--json")
    assert code == EXIT_STAGE + 1 and json.loads(text)["failed_stage"] == "skew_form"


def test_isocat_text_output():
    code, text = run("isocat", "isocat-D4")
    assert code == EXIT_OK
    assert "G_b type: D4" in text


def test_enumerate_streams_and_summarises():
    code, text = run("enumerate", "mu2-F2")
    assert code == EXIT_OK
    lines = json_lines(text)
    assert lines[-1]["summary"]["orbit_count"] == 1
    assert len(lines) - 1 == lines[-1]["summary"]["twists"] == 2
    code, text = run("enumerate", "mu2-F2", "--gauge-degree", "1")
    assert json_lines(text)[-1]["summary"]["orbit_count"] == 2


def test_enumerate_trivial_and_budget():
    code, text = run("enumerate", "trivial-hopf")
    lines = json_lines(text)
    assert code == EXIT_OK and lines[0]["twist"] == [["1", "1", 1]]
    assert run("enumerate", "k(Z3)", "--budget", "2^8")[0] == EXIT_INPUT


def test_dual_roundtrip(tmp_path):
    out = tmp_path / "dual.json"
    assert run("dual", "k(Z3)", "--field", "Fp:2", "-o", str(out))[0] == EXIT_OK
    h = from_json(json.loads(out.read_text()))
    assert check_hopf(h).passed and h.is_commutative()
    back = tmp_path / "back.json"
    assert run("dual", str(out), "-o", str(back))[0] == EXIT_OK
    assert same_tables(from_json(json.loads(back.read_text())), group_algebra(cyclic(3), PrimeField(2)))


def test_twist_apply(tmp_path):
    L = abelian2(3)
    U = enveloping(L)
    f = L.field
    h = SparseTensor.from_dense(f, generator_element(L, [1, 0]))
    x = SparseTensor.from_dense(f, generator_element(L, [0, 1]))
    hopf_file = tmp_path / "u.json"
    hopf_file.write_text(json.dumps(to_json(U)))
    twist_file = tmp_path / "J.json"
    twist_file.write_text(json.dumps(element_to_json(U, exp_twist(U, h, x))))
    out = tmp_path / "uJ.json"
    assert run("twist-apply", str(hopf_file), str(twist_file), "-o", str(out))[0] == EXIT_OK
    assert check_hopf(from_json(json.loads(out.read_text()))).passed

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(element_to_json(U, unit_element(U, 2).scale(2))))
    assert run("twist-apply", str(hopf_file), str(bad))[0] == EXIT_FAIL


def test_output_is_deterministic(monkeypatch):
    def strip(text):
        reps = json_lines(text)
        for r in reps:
            r.pop("timings", None)
        return reps

    monkeypatch.setenv("HOPFKIT_THREADS", "1")
    _, a = run("verify", "2dim-p2", "heisenberg-Z2", "--json")
    monkeypatch.setenv("HOPFKIT_THREADS", "4")
    _, b = run("verify", "2dim-p2", "heisenberg-Z2", "--json")
    assert strip(a) == strip(b)
    assert [r["fixture"] for r in strip(a)] == ["2dim-p2", "heisenberg-Z2"]
