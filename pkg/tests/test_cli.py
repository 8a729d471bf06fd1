import json
import subprocess
import sys

import pytest

from drinfeld.cli import main

MODULE_TEXT = """\
[field]
p = 3
e = 1

[module]
rank = 2
g1 = "T^5 + 2*T"
g2 = "T"
"""

PROBE_MODULE_TEXT = """\
[field]
p = 3
e = 1

[module]
rank = 2
g1 = "T"
g2 = "1"
"""


@pytest.fixture
def module_file(tmp_path):
    path = tmp_path / "m.ini"
    path.write_text(MODULE_TEXT, encoding="utf-8")
    return str(path)


@pytest.fixture
def probe_module_file(tmp_path):
    path = tmp_path / "p.ini"
    path.write_text(PROBE_MODULE_TEXT, encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_heights_running_example(capsys, module_file):
    code, out, _ = run_cli(
        capsys, "heights", "--module", module_file, "--reproducible"
    )
    assert code == 0
    assert "h(phi)                5" in out
    assert "5/2" in out
    assert "15" in out


def test_heights_json(capsys, module_file):
    code, out, _ = run_cli(
        capsys, "heights", "--module", module_file, "--format", "json",
        "--reproducible",
    )
    assert code == 0
    data = json.loads(out)
    assert data["naive_height"] == "5"
    assert data["graded_height"] == "5/2"
    assert data["height_ineq_slack"] == "15"
    assert "generated_at" not in data


def test_heights_constant_module(capsys, tmp_path):
    path = tmp_path / "c.ini"
    path.write_text(
        "[field]\np = 3\ne = 1\n[module]\nrank = 2\ng1 = \"0\"\ng2 = \"1\"\n",
        encoding="utf-8",
    )
    code, out, _ = run_cli(
        capsys, "heights", "--module", str(path), "--format", "json",
        "--reproducible",
    )
    assert code == 0
    data = json.loads(out)
    assert data["naive_height"] == "0" and data["graded_height"] == "0"


def test_heights_parse_error_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text(
        "[field]\np = 3\ne = 1\n[module]\nrank = 1\ng1 = \"T^^2\"\n",
        encoding="utf-8",
    )
    code, _, err = run_cli(capsys, "heights", "--module", str(path))
    assert code == 2
    assert "offset" in err


def test_bound_running_example(capsys, module_file):
    code, out, _ = run_cli(
        capsys, "bound", "--module", module_file, "--format", "json",
        "--reproducible",
    )
    assert code == 0
    data = json.loads(out)
    assert data["n_d"] == 1280
    assert abs(data["threshold"] - 15370.016) < 0.5
    assert data["assumptions"]["log_c2"] == 0.0
    assert data["assumptions"]["exp_base"] == "d"
    assert data["assumptions"]["ineq2_reading"] == "log(d*h)"


def test_bound_case_verdicts(capsys, module_file):
    code, out, _ = run_cli(
        capsys, "bound", "--module", module_file, "--ell", "T^2 + 1",
        "--format", "json", "--reproducible",
    )
    data = json.loads(out)
    cases = data["cases"]
    assert cases[0]["deg_ell"] == 2
    assert cases[0]["case1_holds"] and cases[0]["case2_holds"]


def test_bound_log_c2_monotone(capsys, module_file):
    _, out0, _ = run_cli(
        capsys, "bound", "--module", module_file, "--format", "json",
        "--reproducible",
    )
    _, out10, _ = run_cli(
        capsys, "bound", "--module", module_file, "--log-c2", "10",
        "--format", "json", "--reproducible",
    )
    t0 = json.loads(out0)["threshold"]
    t10 = json.loads(out10)["threshold"]
    assert t10 > t0


def test_bound_without_module(capsys):
    code, out, _ = run_cli(
        capsys, "bound", "--q", "3", "--r", "2", "--h", "5", "--h-g", "5/2",
        "--format", "json", "--reproducible",
    )
    assert code == 0
    data = json.loads(out)
    assert data["n_d"] == 1280
    code, _, err = run_cli(capsys, "bound", "--q", "3", "--r", "2")
    assert code == 2


def test_probe_inconclusive_single_place(capsys, probe_module_file):
    code, out, _ = run_cli(
        capsys, "probe", "--module", probe_module_file, "--ell", "T + 2",
        "--places", "T", "--format", "json", "--reproducible",
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "inconclusive"
    assert data["surviving_dims"] == [1]
    assert data["places"][0]["factor_degrees"] == [1, 1]


def test_probe_skips_ell_with_warning(capsys, probe_module_file):
    code, out, err = run_cli(
        capsys, "probe", "--module", probe_module_file, "--ell", "T + 2",
        "--place-deg-max", "1", "--format", "csv", "--reproducible",
    )
    assert code == 0
    assert "skipping place T + 2" in err
    assert out.splitlines()[0] == "place,deg_p,char_poly,factor_degrees,dim_set"


def test_probe_no_usable_places_exit_3(capsys, module_file):
    # g2 = T has a rank drop at (T); the only requested place is bad
    code, _, err = run_cli(
        capsys, "probe", "--module", module_file, "--ell", "T + 1",
        "--places", "T",
    )
    assert code == 3
    assert "no usable places" in err


def test_probe_cap_exit_3(capsys, tmp_path):
    path = tmp_path / "c.ini"
    path.write_text(
        "[field]\np = 3\ne = 1\n[module]\nrank = 1\ng1 = \"1\"\n",
        encoding="utf-8",
    )
    code, _, err = run_cli(
        capsys, "probe", "--module", str(path), "--ell", "T^2 + T + 2",
        "--places", "T^2 + 1", "--field-cap", "100",
    )
    assert code == 3
    assert "cap" in err


def test_phi_at_round_trip(capsys, module_file, F3):
    from drinfeld import parse_twisted

    code, out, _ = run_cli(
        capsys, "phi-at", "--module", module_file, "T^2", "--format", "json",
        "--reproducible",
    )
    assert code == 0
    data = json.loads(out)
    assert data["tau_degree"] == 4
    reparsed = parse_twisted(data["phi_a"], F3)
    assert reparsed.tau_degree == 4


def test_check_isogeny(capsys, module_file):
    code, out, _ = run_cli(
        capsys, "check-isogeny", "--module", module_file,
        "T + (T^5 + 2*T)*t + T*t^2", "--format", "json", "--reproducible",
    )
    data = json.loads(out)
    assert data["is_morphism"] and data["is_isogeny"]
    assert data["degree"] == 9
    code, out, _ = run_cli(
        capsys, "check-isogeny", "--module", module_file, "t",
        "--format", "json", "--reproducible",
    )
    assert not json.loads(out)["is_morphism"]


def test_subprocess_determinism(probe_module_file):
    cmd = [
        sys.executable, "-m", "drinfeld.cli", "probe",
        "--module", probe_module_file, "--ell", "T + 2",
        "--place-deg-max", "1", "--format", "json",
        "--reproducible", "--seed", "7",
    ]
    r1 = subprocess.run(cmd, capture_output=True)
    r2 = subprocess.run(cmd, capture_output=True)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout


def test_timestamp_present_without_reproducible(capsys, module_file):
    code, out, _ = run_cli(
        capsys, "heights", "--module", module_file, "--format", "json"
    )
    assert "generated_at" in json.loads(out)
