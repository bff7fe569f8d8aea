import math

import numpy as np
import pytest

import dicke
from dicke import thermo


def test_critical_coupling():
    assert dicke.critical_coupling(1.0, 1.0) == pytest.approx(0.5)
    assert dicke.critical_coupling(2.0, 0.5) == pytest.approx(0.5)


def test_invalid_params_raise_value_error():
    with pytest.raises(ValueError):
        dicke.ModelParams(omega=-1.0)
    with pytest.raises(dicke.ValidationError):
        dicke.ModelParams(n_atoms=0)


def test_hamiltonian_is_symmetric_and_matches_ground_state():
    p = dicke.ModelParams(lambda_=0.4, n_atoms=4, boson_cutoff=20)
    h = dicke.hamiltonian(p, "even")
    assert np.allclose(h, h.T)
    gs = dicke.ground_state(p, converge=False)
    assert gs["energy"] == pytest.approx(np.linalg.eigvalsh(h)[0], abs=1e-10)
    assert np.linalg.norm(gs["amplitudes"]) == pytest.approx(1.0)
    assert len(gs["basis"]) == h.shape[0]


def test_converged_observables():
    rec = dicke.observables(dicke.ModelParams(lambda_=0.5, n_atoms=16, boson_cutoff=16))
    assert rec.energy == pytest.approx(-8.20813619254757, abs=1e-9)
    assert rec.entropy == pytest.approx(0.795386574889949, abs=1e-8)
    assert 0.0 < rec.scaled_concurrence < 2.0
    assert rec.params.boson_cutoff >= 16


def test_two_atom_rdm_and_concurrence():
    w = dicke.CollectiveExpectations()
    n = 10
    j = n / 2
    w.jz = -j + 1
    w.jz2 = (j - 1) ** 2
    rho = dicke.two_atom_rdm(w, n)
    assert np.trace(rho) == pytest.approx(1.0)
    assert n * dicke.concurrence(rho) == pytest.approx(2.0)
    assert dicke.von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0)


def test_sweep_rows():
    rows = dicke.sweep(1.0, 1.0, [0.0, 0.3, 0.7], [4, 8], initial_cutoff=8)
    assert len(rows) == 6
    assert all(r["ok"] for r in rows)
    assert rows[0]["record"].entropy == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        dicke.sweep(1.0, 1.0, [0.3, 0.1], [4])


def test_fits_and_maximum():
    n = [8, 12, 16, 24, 32, 45]
    fit = dicke.fit_power_law(n, [0.3 * x ** -0.75 for x in n])
    assert fit.exponent == pytest.approx(-0.75)
    log_fit = dicke.fit_log_scaling(n, [0.14 * math.log2(x) + 0.5 for x in n])
    assert log_fit.slope == pytest.approx(0.14)
    xs = [0.1 * k for k in range(11)]
    peak = dicke.find_maximum(xs, [1 - (x - 0.42) ** 2 for x in xs])
    assert peak.lambda_ == pytest.approx(0.42)
    with pytest.raises(dicke.BoundaryMaximumError):
        dicke.find_maximum(xs, xs)


def test_thermodynamic_limit():
    pp = thermo.phase_params(1.0, 1.0, 0.5)
    assert pp.eps_minus == 0.0
    assert pp.eps_plus == pytest.approx(math.sqrt(2.0))
    with pytest.raises(dicke.DivergenceError):
        thermo.entropy_infinite(pp)
    assert thermo.concurrence_resonance(1.0) == pytest.approx(1 - math.sqrt(2) / 2, abs=1e-12)
    assert thermo.momentum_squeezing(pp) == pytest.approx(math.sqrt(2) / 4)
    sr = thermo.phase_params(1.0, 1.0, 0.8)
    assert sr.phase == thermo.Phase.superradiant
    assert thermo.entropy_infinite(sr, cat=True) - thermo.entropy_infinite(sr) == pytest.approx(1.0)
    assert thermo.concurrence_smalllambda(1.0, 1.0, 0.1) == pytest.approx(0.0049875, abs=1e-7)
    assert math.isfinite(thermo.entropy_finite_cutoff(pp, 100.0))
