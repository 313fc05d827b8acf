"""The compiled and pure-Python kernels must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from twoatom import _pykernels
from twoatom.master import StateVector15
from twoatom.states import DensityMatrix

ckernels = pytest.importorskip("twoatom._ckernels")


def test_jacobi_parity(rng):
    for n in (2, 4, 7, 16):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = a + a.conj().T
        w_py, v_py = _pykernels.jacobi_eigh(a)
        w_c, v_c = ckernels.jacobi_eigh(a)
        np.testing.assert_allclose(w_c, w_py, atol=1e-12 * np.abs(w_py).max())
        # eigenvectors agree up to phase
        overlap = np.abs(np.sum(v_py.conj() * v_c, axis=0))
        np.testing.assert_allclose(overlap, 1.0, atol=1e-10)


def test_rhs_parity(rng):
    for _ in range(50):
        z = rng.normal(size=15) + 1j * rng.normal(size=15)
        args = (rng.uniform(0, 20), rng.uniform(-30, 30), rng.uniform(-1, 1), rng.uniform(0, 1))
        np.testing.assert_allclose(
            ckernels.master_rhs(z, *args), _pykernels.master_rhs(z, *args), rtol=0, atol=1e-12
        )


@pytest.mark.parametrize("params", [(10.0, 26.22, 0.97), (10.0, 11.547, 0.0), (3.0, -5.0, 0.4)])
def test_trajectory_parity(params):
    z0 = StateVector15.from_density_matrix(DensityMatrix.ground()).as_array()
    t = np.linspace(0, 5, 51)
    a, *_ = _pykernels.integrate_master(z0, *params, 1.0, t, 1e-9, 1e-9)
    b, *_ = ckernels.integrate_master(z0, *params, 1.0, t, 1e-9, 1e-9)
    assert np.abs(a - b).max() < 1e-10


def test_env_var_forces_python_backend():
    env = dict(os.environ, TWOATOM_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import twoatom; print(twoatom.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_default_backend_is_compiled():
    env = {k: v for k, v in os.environ.items() if k != "TWOATOM_PURE_PYTHON"}
    out = subprocess.run(
        [sys.executable, "-c", "import twoatom; print(twoatom.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "cython"
