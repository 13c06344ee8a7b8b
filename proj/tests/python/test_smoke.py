import math

import numpy as np
import pytest

import tpjc


@pytest.fixture
def fig1b():
    return tpjc.params_from_ratios(kappa=0.04, beta_diff=0.02)


def test_version():
    assert tpjc.__version__


def test_params(fig1b):
    assert fig1b.omega_shift == 1.0
    assert fig1b.beta2 - fig1b.beta1 == pytest.approx(0.02)
    assert fig1b.mean_photons == pytest.approx(1.0)
    assert fig1b.dimensionless
    raw = tpjc.params_from_couplings(omega=1.0, omega0=2.5, lambda1=0.1, lambda2=0.1, delta_int=1.0)
    assert raw.beta1 == pytest.approx(0.01)
    assert not raw.dimensionless


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        tpjc.make_params(0.0, 0.0, 1.0, -0.1, 1.0)
    with pytest.raises(tpjc.TruncationError):
        tpjc.coherent_vector(1.0, 2)


def test_truncation_and_coherent_vector():
    assert tpjc.choose_truncation(1.0, 30.0, 1e-12) == 14
    amps, tail = tpjc.coherent_vector(1.0, 15)
    assert len(amps) == 15
    assert sum(abs(a) ** 2 for a in amps) + tail == pytest.approx(1.0, abs=1e-14)


def test_spectrum():
    p = tpjc.params_from_couplings(omega=1.0, omega0=2.5, lambda1=0.1, lambda2=0.1, delta_int=1.0)
    h = tpjc.block_hamiltonian(p, 3)
    assert h.shape == (2, 2)
    plus, minus = tpjc.exact_eigenvalues(p, 3)
    assert sorted([plus, minus]) == pytest.approx(sorted(np.linalg.eigvalsh(h)), abs=1e-12)
    # β₁(n+2)/|δ−β₂| = 0.04/0.49 at n = 2 and 0.05/0.49 at n = 3
    assert tpjc.dispersive_valid(p, 2)
    assert not tpjc.dispersive_valid(p, 3)
    d_plus, _ = tpjc.dispersive_eigenvalues(p, 2)
    assert d_plus == pytest.approx(tpjc.effective_diagonal(p, 2, tpjc.AtomLevel.Excited))
    with pytest.raises(tpjc.DispersiveError):
        tpjc.dispersive_eigenvalues(p, 3)


def test_field_state_matches_oracle(fig1b):
    dim = tpjc.choose_truncation(fig1b.alpha, 5.0, 1e-12) + 1
    closed = tpjc.field_state(fig1b, 5.0, dim)
    oracle = tpjc.oracle_field_state(fig1b, 5.0, dim, step=5e-4)
    assert np.max(np.abs(closed - oracle)) <= 1e-6
    assert np.allclose(closed, closed.conj().T, atol=1e-12)
    g = tpjc.branch_density(fig1b, tpjc.Branch.Ground, 5.0, dim)
    e = tpjc.branch_density(fig1b, tpjc.Branch.Excited, 5.0, dim)
    assert np.max(np.abs(g + e - closed)) <= 1e-15


def test_entropy_routes_agree(fig1b):
    dim = 16
    for t in (0.0, 2.0, 10.0):
        rho = tpjc.field_state(fig1b, t, dim)
        purity = float(np.sum(np.abs(rho) ** 2))
        assert tpjc.linear_entropy(fig1b, t, dim) == pytest.approx(1.0 - purity, abs=1e-9)


def test_kernel_and_moment(fig1b):
    assert tpjc.kernel(fig1b, 2, 2, 0.0) == (0.0, 0.0, 0.0)
    gamma, tg, te = tpjc.kernel(fig1b, 3, 1, 4.0)
    _, tg2, te2 = tpjc.kernel(fig1b, 1, 3, 4.0)
    assert tg == pytest.approx(-tg2)
    assert te == pytest.approx(-te2)
    assert gamma < 0
    assert tpjc.amplitude_moment(fig1b, 1, 0.0) == pytest.approx(1.0)
    assert tpjc.superop_commutators_check(6)


def test_lossless_reference():
    p = tpjc.params_from_ratios(kappa=0.0, beta_diff=0.02)
    ref = tpjc.unitary_reference(p, 3.0, 15)
    assert np.max(np.abs(ref - tpjc.field_state(p, 3.0, 15))) <= 1e-10


def test_entropy_trace(fig1b):
    times = [0.1 * i for i in range(51)]
    rows = tpjc.entropy_trace(fig1b, times)
    assert len(rows) == 51
    assert rows[0][1] == pytest.approx(0.0, abs=1e-12)
    for omega_t, s_f, trace, tail, _ in rows:
        assert 0.0 <= s_f < 1.0
        assert abs(trace - 1.0) <= tail + 1e-9
    assert math.isclose(rows[-1][0], 5.0)
