import json
import subprocess
import sys

import pytest

from jconf import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_theta_example(capsys):
    code, out, _ = run(capsys, "theta", "--model", "Herm3O", "--param", '{"variant":"EuclideanHW","k":0}')
    assert code == 0
    obj = json.loads(out)
    assert obj["output"] == {"variant": "HolDiscrete", "k": "12"}
    assert obj["schema_version"] == 1


@pytest.mark.parametrize("param,field", [
    ('{"variant":"EuclideanHW"', "JSON"),
    ('{"variant":"AqModule"}', "'k'"),
    ('{"variant":"NonEuclPrincipal","xi":0}', "'mu'"),
    ('{"k":0}', "variant"),
    ('{"variant":"EuclideanHW","k":"two"}', "k"),
])
def test_malformed_params_exit_2(capsys, param, field):
    code, out, err = run(capsys, "theta", "--model", "M3R", "--param", param)
    assert code == 2
    assert field in err
    assert out == ""


def test_rejected_param_exit_2(capsys):
    code, _, err = run(capsys, "theta", "--model", "Herm3O", "--param", '{"variant":"EuclideanHW","k":3}')
    assert code == 2


def test_unknown_model_exit_2(capsys):
    assert run(capsys, "build", "--model", "Nonexistent")[0] == 2


def test_usage_error_exit_2(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_verify_sym3r_full(capsys):
    code, out, _ = run(capsys, "verify", "--model", "Sym3R", "--level", "full")
    rep = json.loads(out)
    assert code == 0 and rep["overall"] == "pass"
    assert len(rep["checks"]) >= 25
    for c in rep["checks"]:
        assert set(c) >= {"check_id", "paper_ref", "status", "millis"}
        assert c["paper_ref"]
        assert c["status"] in ("pass", "fail", "skipped")


def test_verify_is_deterministic(capsys):
    a = json.loads(run(capsys, "verify", "--model", "M3R", "--seed", "7")[1])
    b = json.loads(run(capsys, "verify", "--model", "M3R", "--seed", "7")[1])
    assert cli.strip_millis(a) == cli.strip_millis(b)
    assert json.dumps(cli.strip_millis(a)) == json.dumps(cli.strip_millis(b))


def test_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("JCONF_SEED", "11")
    rep = json.loads(run(capsys, "verify", "--model", "SpinR3_1")[1])
    assert rep["seed"] == 11
    monkeypatch.setenv("JCONF_SEED", "eleven")
    assert run(capsys, "verify", "--model", "SpinR3_1")[0] == 2


def test_build_export_import_roundtrip(capsys, tmp_path):
    f = tmp_path / "m.json"
    assert run(capsys, "build", "--model", "Herm3C", "--out", str(f))[0] == 0
    code, out, _ = run(capsys, "import", str(f))
    assert code == 0
    assert json.loads(out) == json.loads(f.read_text())
    code, out2, _ = run(capsys, "export", "--model", "Herm3C", "--what", "algebra")
    assert json.loads(out2) == json.loads(out)


def test_import_bad_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"name": "x"}')
    assert run(capsys, "import", str(f))[0] == 2


def test_export_lie(capsys):
    code, out, _ = run(capsys, "export", "--model", "Sym3R", "--what", "lie")
    assert code == 0
    assert json.loads(out)["model"] == "Sym3R"


def test_roots_and_dualpair(capsys):
    code, out, _ = run(capsys, "roots", "--model", "M3R")
    rep = json.loads(out)
    assert code == 0
    for key in ("model", "r", "d", "delta", "mult_alpha", "mult_2alpha", "rho_a_coeff", "rho_t_coeff",
                "dualpair_ok", "dims"):
        assert key in rep
    assert (rep["mult_alpha"], rep["mult_2alpha"], rep["rho_a_coeff"]) == (2, 1, "2")
    code, out, _ = run(capsys, "dualpair", "--model", "Sym3R")
    rep = json.loads(out)
    assert rep["dualpair_ok"] and rep["dims"]["aut"] == 3


def test_peirce(capsys):
    code, out, _ = run(capsys, "peirce", "--model", "M3R")
    rep = json.loads(out)
    assert code == 0 and rep["blocks"]["V12"] == 2 and rep["theta_signs"]["V12"] == [1, 1]


def test_keylemma(capsys):
    code, out, _ = run(capsys, "keylemma", "--model", "Sym2C", "--degree", "2", "--points", "2")
    rep = json.loads(out)
    assert code == 0 and rep["overall"] == "pass"
    assert len(rep["identities"]) == 7


def test_plancherel(capsys):
    code, out, _ = run(capsys, "plancherel", "--model", "Sym3R", "--max-k", "4")
    rep = json.loads(out)
    assert [p["k"] for p in rep["discrete"]] == [0, 2, 4]
    assert run(capsys, "plancherel", "--model", "SpinR3_2")[0] == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "jconf", "theta", "--model", "M3R", "--param",
                        '{"variant":"AqModule","k":1}'], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["output"] == {"variant": "Discrete", "k": "4"}
    p = subprocess.run([sys.executable, "-m", "jconf", "build", "--model", "Nonexistent"],
                       capture_output=True, text=True)
    assert p.returncode == 2 and p.stdout == ""
