import json
import os
import subprocess

import pytest

CLI = os.environ.get("JSPEC_CLI")
CONFIGS = os.environ.get("JSPEC_CONFIGS", os.path.join(os.path.dirname(__file__), "..", "..", "configs"))

pytestmark = pytest.mark.skipif(not CLI, reason="JSPEC_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=300)


def cfg(name):
    return os.path.join(CONFIGS, name)


def test_spectrum_command():
    r = run("spectrum", "--config", cfg("linearfree.json"), "--region", "-3.5,3.5,-1,1", "--tol", "1e-10")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert list(rep) == ["region", "eigenpoints", "excluded_zones", "unknown_points", "diagnostics"]
    assert [round(p["z"]["re"]) for p in rep["eigenpoints"]] == list(range(-3, 4))


def test_bad_region_is_a_config_error():
    r = run("spectrum", "--config", cfg("linearfree.json"), "--region", "1,2,3")
    assert r.returncode == 1
    assert json.loads(r.stdout)["error"]["kind"] == "ConfigError"


def test_missing_config_file():
    r = run("charfn", "--config", "/nonexistent.json", "--z", "1+1i")
    assert r.returncode == 1


def test_math_error_exit_code():
    r = run("green", "--config", cfg("linearfree.json"), "--z", "1", "--i", "0", "--j", "0")
    assert r.returncode == 2
    assert json.loads(r.stdout)["error"]["kind"] in {"NearSpectrum", "PoleHit"}


def test_grid_headers_and_pole_rows():
    r = run("grid", "--config", cfg("linearfree.json"), "--region", "-1,1,0,0.5", "--nx", "3", "--ny", "2")
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("re,im,f_re,f_im,abs,tail_err,window_n")
    assert sum("PoleHit" in line for line in lines[1:]) == 3
    r = run("grid", "--config", cfg("linearfree.json"), "--region", "-1,1,0,0.5", "--nx", "3", "--ny", "2",
            "--regularized")
    assert r.stdout.splitlines()[0] == "re,im,f_re,f_im,abs,tail_err,window_n"


def test_detp_command():
    r = run("detp", "--config", cfg("bessel.json"), "--p", "2", "--z", "1.25", "--N", "16")
    assert r.returncode == 0
    assert json.loads(r.stdout)["identity_residual"] <= 1e-12


def test_eigvec_command():
    r = run("eigvec", "--config", cfg("linearfree.json"), "--z", "2", "--range", "-5,10", "--order", "0")
    out = json.loads(r.stdout)
    assert out["residual"] < 1e-7
    assert len(out["eigenvector"]["values"]) == 16


def test_deterministic_output():
    args = ("spectrum", "--config", cfg("qgeometric.json"), "--region", "0.1,1.1,-0.1,0.1")
    assert run(*args).stdout == run(*args).stdout


def test_verify_detects_a_broken_tolerance():
    env = dict(os.environ, JSPEC_BREAK="1")
    r = subprocess.run([CLI, "verify"], capture_output=True, text=True, timeout=600, env=env)
    assert r.returncode == 3
    lines = [l for l in r.stdout.splitlines() if l.startswith("CHECK ")]
    assert lines and all(len(l.split()) == 5 for l in lines)
    assert any(" FAIL " in l for l in lines)
