import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoatom.errors import DomainError
from twoatom.hamiltonian import SystemParams, build_transformed_hamiltonian, eigensystem_resonant
from twoatom.numerics import hermitian_eigensystem


def test_undriven_is_diagonal():
    h = build_transformed_hamiltonian(SystemParams(0.0, 1.0), 0.0)
    np.testing.assert_array_equal(h, np.diag([0, 0, 1, -1]))


def test_pure_drive_couplings():
    h = build_transformed_hamiltonian(SystemParams(math.sqrt(2), 0.0), 0.0)
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[2, 0] = expected[1, 2] = expected[2, 1] = -1.0
    np.testing.assert_allclose(h, expected, atol=1e-15)


def test_detuning_on_diagonal():
    h = build_transformed_hamiltonian(SystemParams(1.0, 2.0), 0.3)
    np.testing.assert_allclose(np.diag(h).real, [-0.3, 0.3, 2.0, -2.0])


def test_hermitian(rng):
    for _ in range(20):
        p = SystemParams(rng.uniform(0, 20), rng.uniform(-30, 30), rng.uniform(-1, 1))
        h = build_transformed_hamiltonian(p, rng.uniform(-5, 5))
        np.testing.assert_array_equal(h, h.conj().T)


def test_no_shift_energies():
    p = SystemParams(1.0, 0.0)
    assert p.big_omega == 1.0
    assert p.alpha_plus == p.alpha_minus == 0.5
    np.testing.assert_allclose(eigensystem_resonant(p).energies, [-1, 1, 0, 0])


def test_first_resonance_energies():
    p = SystemParams(10.0, 11.547)
    # omega0/omega12 = sqrt(3/4) makes big_omega equal omega12
    assert p.big_omega == pytest.approx(11.547, abs=1e-3)
    np.testing.assert_allclose(
        eigensystem_resonant(p).energies, [-5.7735, 17.3205, 0.0, -11.547], atol=2e-3
    )


def _check_eigensystem(p):
    es = eigensystem_resonant(p)
    h = build_transformed_hamiltonian(p, 0.0)
    v = es.vectors
    assert np.abs(v.conj().T @ v - np.eye(4)).max() < 1e-12
    assert np.abs(h @ v - v * es.energies).max() < 1e-10 * max(1.0, np.abs(h).max())
    w, _ = hermitian_eigensystem(h)
    np.testing.assert_allclose(np.sort(es.energies), w, atol=1e-10 * max(1.0, np.abs(h).max()))


@settings(max_examples=300, deadline=None)
@given(st.floats(0, 50, allow_subnormal=False), st.floats(-60, 60, allow_subnormal=False))
def test_closed_form_matches_numeric(omega0, omega12):
    if omega0 == 0 and omega12 == 0:
        return
    _check_eigensystem(SystemParams(omega0, omega12))


def test_extreme_ratio():
    _check_eigensystem(SystemParams(1e-4, 1e4))
    _check_eigensystem(SystemParams(1e-4, -1e4))
    _check_eigensystem(SystemParams(1e4, 1e-4))


def test_inverse_relations(rng):
    # |g>, |e>, |s>, |a> rebuilt from the eigenvectors with the inverse coefficients
    for _ in range(50):
        p = SystemParams(rng.uniform(0.01, 20), rng.uniform(-30, 30))
        v = eigensystem_resonant(p).vectors
        ap, am = math.sqrt(p.alpha_plus), math.sqrt(p.alpha_minus)
        r2 = 1 / math.sqrt(2)
        g = r2 * (ap * v[:, 0] - am * v[:, 1] - v[:, 2])
        e = r2 * (ap * v[:, 0] - am * v[:, 1] + v[:, 2])
        s = am * v[:, 0] + ap * v[:, 1]
        a = v[:, 3]
        np.testing.assert_allclose(np.column_stack([g, e, s, a]), np.eye(4), atol=1e-12)


def test_param_invariants(rng):
    for _ in range(100):
        p = SystemParams(rng.uniform(0, 20), rng.uniform(-30, 30))
        assert p.alpha_plus + p.alpha_minus == pytest.approx(1.0, abs=1e-14)
        assert p.alpha_plus * p.alpha_minus == pytest.approx(
            p.omega0**2 / (4 * p.big_omega**2), abs=1e-14
        )
        assert p.big_omega >= abs(p.omega12) / 2


def test_degenerate_origin():
    es = eigensystem_resonant(SystemParams(0.0, 0.0))
    assert es.degenerate
    np.testing.assert_array_equal(es.energies, 0)
    np.testing.assert_array_equal(es.vectors, np.eye(4))


@pytest.mark.parametrize(
    "kwargs", [dict(omega0=-1, omega12=1), dict(omega0=1, omega12=float("nan")), dict(omega0=1, omega12=1, gamma12=1.5)]
)
def test_invalid_params(kwargs):
    with pytest.raises(DomainError):
        SystemParams(**kwargs)
