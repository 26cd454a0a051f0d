import cmath
import json

import pytest

import ellint


def test_gamma_reflection_and_normalization():
    p, q = 0.2 + 0.1j, 0.15 - 0.05j
    t = 0.4 + 0.3j
    assert abs(ellint.elliptic_gamma(t, p, q) * ellint.elliptic_gamma(p * q / t, p, q) - 1) < 1e-12
    assert abs(ellint.elliptic_gamma(cmath.sqrt(p * q), p, q) - 1) < 1e-13


def test_theta_and_pochhammer():
    assert ellint.qpochhammer(0, 0.5) == 1
    assert abs(ellint.theta(1, 0.4)) == 0
    assert abs(ellint.jacobi_theta(1, 0, 0.8j)) < 1e-15


def test_permutations():
    assert ellint.act("s2s1s3s2", ["u1", "u2", "v1", "v2"]) == ["v1", "v2", "u1", "u2"]
    assert ellint.word_identity("s1s2s1", "s2s1s2", 3)
    assert not ellint.word_identity("s1s2", "s2s1", 3)
    assert ellint.word_gate()


def test_registry():
    ids = [s["id"] for s in ellint.suites()]
    assert ids[0] == "theta_addition"
    assert {"beta", "beta_control", "ybe"} <= set(ids)


def test_run_beta():
    out = ellint.run(["beta", "beta_control"], seed=7, reproducible=True)
    assert out["all_pass"]
    assert [r["identity_id"] for r in out["records"]] == ["beta", "beta_control"]
    beta = out["records"][0]
    assert beta["residual"] <= 1e-8 and beta["seed"] == 7 and beta["N_used"] == 128
    assert out["csv"].splitlines()[0] == "identity_id,seed,residual,tolerance,pass,N,runtime_ms"
    assert json.loads(out["json"])["records"][0]["identity_id"] == "beta"
    assert ellint.run(["beta"], seed=7, reproducible=True)["csv"] == ellint.run(["beta"], seed=7, reproducible=True)["csv"]


def test_errors():
    with pytest.raises(ValueError):
        ellint.run(["no_such_suite"])
    with pytest.raises(ValueError):
        ellint.run(["beta"], regime="Sideways")
