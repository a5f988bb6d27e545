"""Command-line front end: outputs, exit codes, determinism."""

import json
import os
import subprocess
import sys

import pytest

from carlitz_goss.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_zeta_poly(capsys):
    code, data = run_json(capsys, "zeta", "poly", "--q", "2", "--n", "-1")
    assert code == 0 and data["exit_code"] == 0
    assert data["result"]["poly_in_z"] == "1+z"
    assert data["command"] == "zeta" and data["subcommand"] == "poly"


def test_zeta_padic(capsys):
    code, data = run_json(capsys, "zeta", "padic", "--q", "3", "--P", "t", "--n", "1", "--s", "1")
    assert code == 0
    assert data["result"]["cutoff_D"] == 8 and data["result"]["value"]["val"] == 0


def test_zeta_inf(capsys):
    code, data = run_json(capsys, "zeta", "inf", "--q", "2", "--n", "1", "--prec", "8")
    assert code == 0 and "result" in data


@pytest.mark.parametrize(
    "argv,expect",
    [
        (["--q", "2", "--prime", "t^2+t+1"], "t^2+t"),
        (["--q", "2", "--prime", "t^2+t+1", "--deformed"], "t^2+t+1+z^2"),
        (["--q", "3", "--ring", "Fq^r[t](r=2)", "--prime", "t"], "t^2+2"),
    ],
)
def test_fitting(capsys, argv, expect):
    code, data = run_json(capsys, "fitting", *argv)
    assert code == 0 and data["result"]["fitting"] == expect and data["result"]["cyclic"]


@pytest.mark.parametrize("ident", [["padic"], ["period"], ["taelman", "--prec", "10"], ["deformed", "--zmax", "3"]])
def test_verify_passes(capsys, ident):
    code, data = run_json(capsys, "verify", *ident)
    assert code == 0 and data["result"]["pass"] is True


def test_theorem4_basis_flags(capsys):
    code, data = run_json(capsys, "verify", "theorem4", "--q", "3", "--ring", "F9[t]", "--basis", "1,u", "--H", "1")
    assert code == 0 and data["result"]["pass"]
    code, data = run_json(capsys, "verify", "theorem4", "--q", "3", "--ring", "F9[t]", "--basis", "t,u", "--H", "1")
    assert code == 1 and data["result"]["pass"] is False


def test_outside_domain_exit_code(capsys):
    code, data = run_json(capsys, "zeta", "padic", "--q", "3", "--P", "t", "--n", "5", "--s", "1")
    assert code == 3 and data["error"]["code"] == "outside_domain"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["zeta", "poly", "--q", "2"])
    assert exc.value.code == 2


def test_flags_after_subcommand(capsys):
    a = run(capsys, "--seed", "5", "zeta", "poly", "--q", "3", "--n", "-2")[1]
    b = run(capsys, "zeta", "poly", "--q", "3", "--n", "-2", "--seed", "5")[1]
    assert a == b and json.loads(a)["config"]["seed"] == 5


def test_text_format(capsys):
    code, out = run(capsys, "--format", "text", "zeta", "poly", "--q", "2", "--n", "-1")
    assert code == 0 and "poly_in_z: 1+z" in out


def test_workers_do_not_change_bytes(capsys):
    argv = ["zeta", "inf", "--q", "3", "--n", "1", "--prec", "8"]
    outs = {run(capsys, "--workers", str(w), *argv)[1] for w in (1, 2)}
    assert len(outs) == 1


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "carlitz_goss", "zeta", "poly", "--q", "2", "--n", "-1"],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["poly_in_z"] == "1+z"
