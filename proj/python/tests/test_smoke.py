import numpy as np
import pytest

import plasma_inverse as pi


def test_zero_potential_boundary_values():
    k = pi.kgrid(0.05, 20.0, 256)
    out = pi.forward(pi.sample_potential("zero", n_x=101), k)
    want = 1j * np.exp(1j * k) / (2 * k)
    assert np.max(np.abs(out["u_plus"] - want)) < 1e-12
    assert np.max(np.abs(out["u_minus"] - want)) < 1e-12
    assert out["unitarity_defect"] < 1e-12


def test_bump_round_trip():
    q = pi.sample_potential("bump", {"c": 2.0})
    data = pi.forward(q, pi.kgrid())
    spec = pi.recover_spectrum(data["k"], data["u_minus"], data["u_plus"])
    assert spec["indices"]["ind_m"] == 0
    n = len(data["k"])
    assert np.max(np.abs(spec["a"]["values"][n:] - data["a"])[data["k"] <= 40]) < 1e-3

    rec = pi.invert(data["k"], data["u_minus"], data["u_plus"], n_x=401)
    assert rec["x"][0] == -1.0 and rec["x"][-1] == 1.0
    assert pi.relative_l2_error(rec["q"], q) < 1e-2


def test_bound_state_is_refused():
    q = pi.sample_potential("square_well", {"q0": -2.0})
    data = pi.forward(q, pi.kgrid())
    with pytest.raises(pi.HypothesisError) as err:
        pi.invert(data["k"], data["u_minus"], data["u_plus"])
    assert err.value.index != 0
    assert err.value.exit_code == 4
    assert isinstance(err.value, pi.PlasmaError)


def test_diagnose():
    rep = pi.diagnose(pi.sample_potential("square_well", {"q0": -2.0}), pi.kgrid())
    assert rep["j"] == 1
    assert rep["ind_a"] == 1
    assert rep["norming"][0]["s"] > 0
    assert rep["kappa1"] <= rep["kappa0"] + 1e-8


def test_bad_input():
    with pytest.raises(pi.ConfigError):
        pi.sample_potential("triangle")
    with pytest.raises(pi.ConfigError):
        pi.kgrid(1.0, 0.5, 10)
