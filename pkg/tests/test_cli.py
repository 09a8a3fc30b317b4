import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from toeplitz_completion import is_normal_symbol, matrix_from_json
from toeplitz_completion.cli import parse_symbol, run
from toeplitz_completion.errors import InvalidZero, ParseError
from toeplitz_completion.gallery import quasinormal_completion, z

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = cli(*argv)
    return code, json.loads(out)


# examples

def test_analyze_hyponormal():
    code, rep = report("analyze", "--test", "hyponormal", "--N", 48, "--tol", "1e-8",
                       FIX / "hyponormal_nonnormal.json")
    assert code == 0
    assert rep["verdict"]["status"] == "Holds"
    assert "lambda_min" in rep["verdict"]["details"]
    assert list(rep) == ["command", "inputs", "verdict", "timings"]


def test_classify_family1():
    code, rep = report("completion", "classify", "--alpha", 0, "--beta", 0,
                       "--phi", FIX / "family1.json", "--psi", FIX / "family1psi.json")
    assert code == 0
    assert rep["verdict"]["status"] == "Normal"
    assert rep["verdict"]["matchedFamily"]["tag"] == "Family1"


def test_two_hyponormal_failure_has_witness():
    code, rep = report("analyze", "--test", "2-hyponormal", FIX / "hyponormal_nonnormal.json")
    assert code == 1
    w = rep["verdict"]["witness"]
    assert w["eigenvalue"] < 0 and len(w["vector"]) > 0


def test_quasinormal_fixture():
    assert cli("analyze", "--test", "quasinormal", FIX / "quasinormal.json")[0] == 0
    code, rep = report("analyze", "--test", "rank", FIX / "quasinormal.json")
    assert rep["verdict"]["details"]["commutator_rank"] == 1


def test_classify_exceptional():
    code, rep = report("completion", "classify", "--alpha", 0, "--beta", 0,
                       "--phi", FIX / "exceptional_phi.json", "--psi", FIX / "exceptional_psi.json")
    assert code == 2
    assert rep["verdict"]["status"] == "ExceptionalCaseUnresolved"


def test_classify_with_verification():
    code, rep = report("completion", "classify", "--alpha", 0.3, "--beta", 0.3, "--verify",
                       "--phi", FIX / "family2phi.json", "--psi", FIX / "family2psi.json")
    assert code == 0
    assert rep["verdict"]["verification"]["consistent"] is True


def test_classify_alpha_mismatch():
    code, rep = report("completion", "classify", "--alpha", 0.3, "--beta", 0.4,
                       "--phi", FIX / "family1.json", "--psi", FIX / "family1psi.json")
    assert code == 1 and rep["verdict"]["status"] == "NotSubnormal"


def test_build_round_trips_through_json():
    code, rep = report("completion", "build", "--family", "QuasinormalFamily")
    assert code == 0
    assert matrix_from_json(rep["verdict"]["symbol"]).isclose(quasinormal_completion())


def test_kernel_hull_coprime_factor():
    code, rep = report("kernel", "--phi-minus", FIX / "kernel_phi_minus.json", FIX / "kernel_delta.json")
    assert code == 0 and rep["verdict"]["details"]["hankel_rank"] == 4
    code, rep = report("hull", FIX / "kernel_delta.json")
    assert code == 0 and rep["verdict"]["hull"]["degree"] == 3
    code, rep = report("coprime", "--theta-zeros", "0.5", FIX / "kernel_delta.json")
    assert code == 1 and rep["verdict"]["routes_agree"] is True
    code, rep = report("coprime", "--theta-zeros", "0.1+0.2i,-0.4", FIX / "kernel_delta.json")
    assert code == 0
    code, rep = report("factor", FIX / "fminus.json")
    assert code == 0 and rep["verdict"]["inner"]["degree"] == 2


def test_text_output():
    code, out, _ = cli("analyze", "--test", "normal-symbol", "--text", FIX / "hyponormal_nonnormal.json")
    assert code == 0
    assert out.startswith("command: analyze") and "status: Holds" in out


# exit codes

@pytest.mark.parametrize("argv", [
    [],
    ["analyze", "--test", "nonsense", "x.json"],
    ["analyze", "--test", "psd", "--N", "0", "x.json"],
    ["analyze", "--bogus-flag", "x.json"],
    ["completion", "build", "--family", "Family2", "--mu", "0"],
    ["coprime", "--theta-zeros", "abc", "x.json"],
])
def test_usage_errors(argv):
    code, _, _ = cli(*argv)
    assert code == 64


def test_missing_file_is_data_error():
    code, _, err = cli("analyze", "--test", "psd", "/nonexistent/file.json")
    assert code == 65 and "parse error" in err


def test_boundary_zero_is_data_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 1, "entries": [[[{"coeff": [1, 0], "kind": "analytic",
                                                    "zeros": [[1.0, 0]]}]]]}))
    assert cli("analyze", "--test", "psd", p)[0] == 65


def test_malformed_json_is_data_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n  \"n\": 1,\n")
    code, _, err = cli("hull", p)
    assert code == 65 and "line" in err


def test_help_exits_zero():
    code, out, _ = cli("--help")
    assert code == 0 and "analyze" in out


# determinism

@pytest.mark.parametrize("argv", [
    ["analyze", "--test", "hyponormal", "--N", "16", str(FIX / "control.json")],
    ["completion", "classify", "--alpha", "0.3", "--beta", "0.3",
     "--phi", str(FIX / "family2phi.json"), "--psi", str(FIX / "family2psi.json")],
    ["hull", str(FIX / "kernel_delta.json")],
])
def test_byte_identical_reports(argv):
    first, second = cli(*argv)[1], cli(*argv)[1]
    assert first == second
    assert "-0," not in first and "-0]" not in first


def test_timings_opt_in():
    _, rep = report("hull", FIX / "kernel_delta.json")
    assert rep["timings"] is None
    _, rep = report("hull", "--timings", FIX / "kernel_delta.json")
    assert rep["timings"]["total_seconds"] >= 0


# parse_symbol

def test_parse_symbol_z(tmp_path):
    p = tmp_path / "z.json"
    p.write_text(json.dumps({"n": 1, "entries": [[[{"coeff": [1, 0], "kind": "analytic",
                                                    "constant": [1, 0], "zeros": [[0, 0]]}]]]}))
    assert parse_symbol(p)[0, 0] == z()


def test_parse_shipped_example_is_normal_valued():
    assert is_normal_symbol(parse_symbol(FIX / "hyponormal_nonnormal.json"))[0]


def test_parse_symbol_errors(tmp_path):
    p = tmp_path / "b.json"
    p.write_text(json.dumps({"n": 1, "entries": [[[{"coeff": [1, 0], "kind": "analytic",
                                                    "zeros": [[1.0, 0]]}]]]}))
    with pytest.raises(InvalidZero):
        parse_symbol(p)
    p.write_text("[1, 2")
    with pytest.raises(ParseError):
        parse_symbol(p)


# packaging

def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "toeplitz_completion", "hull", str(FIX / "kernel_delta.json")],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["command"] == "hull"


def test_shipped_fixtures_match_generator():
    sys.path.insert(0, str(ROOT / "scripts"))
    try:
        from make_fixtures import fixtures
    finally:
        sys.path.pop(0)
    expected = fixtures()
    assert sorted(expected) == sorted(p.name for p in FIX.glob("*.json"))
    for name, obj in expected.items():
        assert json.loads((FIX / name).read_text()) == json.loads(json.dumps(obj)), name
