"""End-to-end command line checks, run in process through main(argv)."""

import json
import subprocess
import sys

import pytest

from finfree.cli import main

SEMICIRCLE2 = '{"degree": 2, "a": ["1", "0", "-1/2"]}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip() else None
    err = json.loads(captured.err) if captured.err.strip() else None
    return code, out, err


def test_convolve(capsys):
    x2 = '{"degree": 2, "a": ["1", "0", "0"]}'
    code, out, _ = run(capsys, "convolve", SEMICIRCLE2, x2)
    assert code == 0
    assert out == {"degree": 2, "a": ["1", "0", "-1/2"]}


def test_convolve_self(capsys):
    code, out, _ = run(capsys, "convolve", SEMICIRCLE2, SEMICIRCLE2)
    assert code == 0
    assert out["a"] == ["1", "0", "-1"]


def test_power(capsys):
    code, out, _ = run(capsys, "power", SEMICIRCLE2, "--t", "2")
    assert code == 0
    assert out["a"] == ["1", "0", "-1"]


def test_cumulants_example(capsys):
    code, out, _ = run(capsys, "cumulants", SEMICIRCLE2)
    assert code == 0
    assert out == {"d": 2, "variant": "standard", "kappa": ["0", "1"]}


def test_cumulants_rescaled(capsys):
    code, out, _ = run(capsys, "cumulants", SEMICIRCLE2, "--rescaled")
    assert code == 0
    assert out["variant"] == "rescaled" and out["kappa"] == ["0", "1/2"]


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--roots", "1,-1", "--N", "4")
    assert code == 0
    assert out["m"] == ["0", "1", "0", "1"]


def test_coeffs_from_cumulants(capsys):
    code, out, _ = run(
        capsys, "coeffs", '{"d": 2, "variant": "standard", "kappa": ["0", "1"]}'
    )
    assert code == 0
    assert out == {"degree": 2, "a": ["1", "0", "-1/2"]}


def test_coeffs_from_moments(capsys):
    # m2 = 1 at degree 2 is the root pair {1, -1}
    code, out, _ = run(capsys, "coeffs", '{"m": ["0", "1"]}', "--d", "2")
    assert code == 0
    assert out["a"] == ["1", "0", "-1"]
    # without --d and without an embedded degree there is nothing to target
    code, _, err = run(capsys, "coeffs", '{"m": ["0", "1"]}')
    assert code == 3 and err["error"]["type"] == "InputFormatError"


def test_rtransform(capsys):
    code, out, _ = run(capsys, "rtransform", SEMICIRCLE2)
    assert code == 0
    assert out == {"var": "s", "coeffs": ["0", "1"]}


def test_family_poisson_example(capsys):
    code, out, _ = run(capsys, "family", "poisson", "--lambda", "1/4", "--d", "4")
    assert code == 0
    assert out == {"degree": 4, "a": ["1", "1", "0", "0", "0"]}


def test_family_hermite(capsys):
    code, out, _ = run(capsys, "family", "hermite", "--d", "2")
    assert code == 0
    assert out["a"] == ["1", "0", "-1/2"]
    code, out, _ = run(capsys, "family", "hermite", "--d", "2", "--marcus")
    assert out["a"] == ["1", "0", "-1/4"]


def test_converge_pads_short_vector(capsys):
    code, out, _ = run(
        capsys, "converge", "--r", "0,1,1", "--n", "4", "--d", "16,32"
    )
    assert code == 0
    assert out["free_kappa"] == "0"
    assert [row["d"] for row in out["rows"]] == [16, 32]


def test_check_id(capsys):
    code, out, _ = run(capsys, "check-id", "--roots", "1,-1")
    assert code == 0
    assert out["verdict"] == "infinitely_divisible"


def test_threshold(capsys):
    code, out, _ = run(capsys, "threshold", "--roots", "1,-1", "--tmax", "16")
    assert code == 0
    assert out == {"threshold": "1/16"}


def test_cramer(capsys):
    code, out, _ = run(capsys, "cramer", "--d", "4", "--eps", "1/32")
    assert code == 0
    assert out["p_plus_real_rooted"] and out["p_minus_real_rooted"]
    assert out["convolution"]["degree"] == 4


def test_verify_mc(capsys):
    code, out, _ = run(
        capsys, "verify-mc", SEMICIRCLE2, SEMICIRCLE2, "--samples", "5000",
        "--seed", "4",
    )
    assert code == 0
    assert out["all_pass"] is True
    assert out["exact"]["a"] == ["1", "0", "-1"]
    assert len(out["per_coefficient"]) == 3


def test_partitions_listing(capsys):
    code, out, _ = run(capsys, "partitions", "--n", "3")
    assert code == 0
    assert out["count"] == 5
    assert out["partitions"][0]["partition"] == "{1,2,3}"
    code, out, _ = run(capsys, "partitions", "--n", "4", "--noncrossing")
    assert out["count"] == 14
    code, out, _ = run(capsys, "partitions", "--n", "3", "--types")
    assert sum(row["count_all"] for row in out["types"]) == 5


def test_unknown_command_exits_2(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2
    assert err["error"]["type"] == "UnknownCommand"
    assert main([]) == 2
    capsys.readouterr()


def test_malformed_input_exits_3(capsys):
    code, _, err = run(capsys, "convolve", '{"degree": 2', "{}")
    assert code == 3 and err["error"]["type"] == "InputFormatError"
    # non-monic leading coefficient
    code, _, err = run(
        capsys, "convolve", '{"degree": 2, "a": ["2", "0", "0"]}',
        '{"degree": 2, "a": ["1", "0", "0"]}',
    )
    assert code == 3 and err["error"]["type"] == "NonMonicError"
    # missing required flag
    code, _, err = run(capsys, "moments", "--roots", "1,-1")
    assert code == 3 and err["error"]["type"] == "UsageError"
    # both a polynomial and --roots
    code, _, err = run(capsys, "cumulants", SEMICIRCLE2, "--roots", "1,-1")
    assert code == 3 and err["error"]["type"] == "InputFormatError"


def test_size_cap_exits_4(capsys):
    code, _, err = run(capsys, "partitions", "--n", "15")
    assert code == 4 and err["error"]["type"] == "SizeCapError"
    # raising the cap on the command line clears it
    code, out, _ = run(capsys, "partitions", "--n", "13", "--types")
    assert code == 0 and out["n"] == 13


def test_domain_errors_exit_5(capsys):
    code, _, err = run(capsys, "power", SEMICIRCLE2, "--t", "0")
    assert code == 5 and err["error"]["type"] == "DomainError"
    code, _, err = run(capsys, "family", "poisson", "--lambda", "1/3", "--d", "4")
    assert code == 5 and err["error"]["type"] == "DomainError"
    code, _, err = run(capsys, "check-id", "--plain", "1,0,1")
    assert code == 5 and err["error"]["type"] == "DomainError"


def test_plain_input_and_file_input(tmp_path, capsys):
    code, out, _ = run(capsys, "cumulants", "--plain", "1,0,-1/2")
    assert code == 0 and out["kappa"] == ["0", "1"]
    path = tmp_path / "p.json"
    path.write_text(SEMICIRCLE2)
    code, out, _ = run(capsys, "cumulants", str(path))
    assert code == 0 and out["kappa"] == ["0", "1"]


def test_config_file_with_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"nmax": 3}')
    code, _, err = run(capsys, "partitions", "--n", "5", "--config", str(cfg))
    assert code == 4 and err["error"]["type"] == "SizeCapError"
    # an explicit flag wins over the config value
    code, out, _ = run(
        capsys, "partitions", "--n", "5", "--config", str(cfg), "--nmax", "6"
    )
    assert code == 0 and out["count"] == 52


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    assert "convolve" in capsys.readouterr().out


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "finfree.cli", "cumulants", SEMICIRCLE2],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kappa"] == ["0", "1"]


def test_round_trip_through_cli_json(capsys):
    code, kj, _ = run(capsys, "cumulants", "--roots", "1,2,4")
    assert code == 0
    code, pj, _ = run(capsys, "coeffs", json.dumps(kj))
    assert code == 0
    code, kj2, _ = run(capsys, "cumulants", json.dumps(pj))
    assert code == 0 and kj2 == kj
