"""Dissipative dynamics of the driven pair at two-photon resonance.

The density matrix is carried as 15 complex numbers: nine in the X sector
(populations and triplet coherences, driven by an inhomogeneous term) and six
in the Y sector (coherences with the antisymmetric state, homogeneous).  The
ground population follows from unit trace.  Conjugate pairs are integrated as
independent components and their pairing is checked, not imposed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError, IntegrationError, SingularMatrixError
from .hamiltonian import SystemParams
from .numerics import integrate_adaptive, linear_solve
from .states import A, Basis, DensityMatrix, E, G, S

X_LABELS = ("ee", "ss", "aa", "ge", "eg", "es", "se", "gs", "sg")
Y_LABELS = ("ae", "ea", "ga", "ag", "sa", "as")
_IDX = {"g": G, "e": E, "s": S, "a": A}
X_INDEX = [(_IDX[k[0]], _IDX[k[1]]) for k in X_LABELS]
Y_INDEX = [(_IDX[k[0]], _IDX[k[1]]) for k in Y_LABELS]
# positions of (component, conjugate partner) pairs inside each sector
X_PAIRS = ((3, 4), (5, 6), (7, 8))
Y_PAIRS = ((0, 1), (2, 3), (4, 5))

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class StateVector15:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=complex).reshape(9)
        y = np.array(self.y, dtype=complex).reshape(6)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_array(cls, z) -> StateVector15:
        z = np.asarray(z, dtype=complex)
        return cls(z[:9], z[9:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.x, self.y])

    @classmethod
    def from_density_matrix(cls, rho: DensityMatrix) -> StateVector15:
        m = rho.require(Basis.COLLECTIVE).data
        return cls([m[i, j] for i, j in X_INDEX], [m[i, j] for i, j in Y_INDEX])

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        for v, (i, j) in zip(self.x, X_INDEX):
            m[i, j] = v
        for v, (i, j) in zip(self.y, Y_INDEX):
            m[i, j] = v
        m[G, G] = 1.0 - self.x[0] - self.x[1] - self.x[2]
        return m

    def to_density_matrix(self) -> DensityMatrix:
        return DensityMatrix(self.to_matrix(), Basis.COLLECTIVE)

    def pairing_error(self) -> float:
        errs = [abs(self.x[i] - np.conj(self.x[j])) for i, j in X_PAIRS]
        errs += [abs(self.y[i] - np.conj(self.y[j])) for i, j in Y_PAIRS]
        errs += [abs(self.x[k].imag) for k in range(3)]
        return float(max(errs))


def rhs(s: StateVector15, p: SystemParams, decay: float = 1.0) -> StateVector15:
    """Time derivative of the 15-component state.

    ``decay`` scales every dissipative rate (single-atom and collective);
    ``decay=0`` switches dissipation off.
    """
    dz = _backend.kernels.master_rhs(s.as_array(), p.omega0, p.omega12, p.gamma12, decay)
    return StateVector15.from_array(dz)


def _as_times(t_grid):
    t = np.asarray(t_grid, dtype=float).ravel()
    if t.size == 0:
        raise DomainError("time grid is empty")
    if np.any(np.diff(t) < 0):
        raise DomainError("time grid must be sorted")
    if not np.all(np.isfinite(t)):
        raise DomainError("time grid must be finite")
    return t


def evolve_array(initial, p: SystemParams, t_grid, tol=DEFAULT_TOL, decay=1.0, check=True):
    """Integrate and return the raw ``(len(t_grid), 15)`` sample array.

    ``t_grid[0]`` is the time at which ``initial`` is given.
    """
    if initial is None:
        initial = DensityMatrix.ground()
    z0 = StateVector15.from_density_matrix(initial.validate()).as_array()
    t = _as_times(t_grid)
    samples, _, _ = _backend.kernels.integrate_master(
        z0, p.omega0, p.omega12, p.gamma12, decay, t, tol, tol
    )
    if not np.all(np.isfinite(samples)):
        raise IntegrationError("integration produced non-finite values")
    if check:
        for tk, z in zip(t, samples):
            _check_sample(tk, StateVector15.from_array(z))
    return samples


def _check_sample(t, sv):
    bad = sv.to_density_matrix().violations(scale=10.0)
    if bad:
        raise IntegrationError(f"unphysical state at t={t:.6g}: " + "; ".join(bad))


def evolve(initial, p: SystemParams, t_grid, tol=DEFAULT_TOL, decay=1.0, check=True):
    """Density-matrix trajectory sampled on ``t_grid``.

    Uses an adaptive Dormand-Prince 5(4) integrator with absolute and relative
    per-step tolerance ``tol``; every sample lands on an accepted step.  With
    ``check`` set, each sample must satisfy the density-matrix invariants to
    within ten times their tolerances, otherwise :class:`IntegrationError`.
    ``initial=None`` means the ground state.
    """
    samples = evolve_array(initial, p, t_grid, tol, decay, check)
    return [StateVector15.from_array(z).to_density_matrix() for z in samples]


def evolve_y(initial_y, p: SystemParams, t_grid, tol=DEFAULT_TOL, decay=1.0):
    """Trajectory of the homogeneous six-component sector alone, shape ``(n, 6)``."""
    t = _as_times(t_grid)
    y0 = np.asarray(initial_y, dtype=complex).reshape(6)
    if t.size == 1 or t[-1] == t[0]:
        return np.tile(y0, (t.size, 1))
    kern = _backend.kernels
    pad = np.zeros(15, dtype=complex)

    def f(_, y):
        pad[9:] = y
        return kern.master_rhs(pad, p.omega0, p.omega12, p.gamma12, decay)[9:]

    sol = integrate_adaptive(f, y0, (t[0], t[-1]), rtol=tol, atol=tol, t_eval=t)
    return sol.y_eval


def steady_denominator(p: SystemParams) -> float:
    w2 = p.omega_tilde**2
    return w2 * w2 + 2.0 * w2 + (1.0 + p.gamma12) ** 2 + p.omega12**2


def steady_state_closed_form(p: SystemParams) -> DensityMatrix:
    """Analytic stationary state; the Y sector vanishes."""
    w = p.omega_tilde
    w2 = w * w
    d = steady_denominator(p)
    u = p.u12
    m = np.zeros((4, 4), dtype=complex)
    m[E, E] = m[A, A] = w2 * w2 / (4 * d)
    m[S, S] = (w2 + 4.0) * w2 / (4 * d)
    m[G, E] = -(1.0 + u) * w2 / (2 * d)
    m[E, S] = 1j * w * w2 / (2 * d)
    m[G, S] = -1j * w * (w2 + 2.0 * (1.0 + u)) / (2 * d)
    for i, j in ((G, E), (E, S), (G, S)):
        m[j, i] = np.conj(m[i, j])
    m[G, G] = 1.0 - (m[E, E] + m[S, S] + m[A, A]).real
    return DensityMatrix(m, Basis.COLLECTIVE)


def x_sector_system(p: SystemParams):
    """Return ``(M, I)`` with ``dX/dt = M X + I`` assembled by probing the RHS."""
    kern = _backend.kernels
    z = np.zeros(15, dtype=complex)
    inhom = kern.master_rhs(z, p.omega0, p.omega12, p.gamma12)[:9]
    m = np.empty((9, 9), dtype=complex)
    for k in range(9):
        z[:] = 0
        z[k] = 1.0
        m[:, k] = kern.master_rhs(z, p.omega0, p.omega12, p.gamma12)[:9] - inhom
    return m, inhom


def steady_state_numeric(p: SystemParams) -> DensityMatrix:
    """Stationary state from a direct solve of ``M X = -I``.

    Raises :class:`SingularMatrixError` (with a condition estimate) when the
    X-sector matrix is singular, e.g. for ``gamma12 = 1`` where the
    antisymmetric population decouples.
    """
    m, inhom = x_sector_system(p)
    try:
        x = linear_solve(m, -inhom)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"steady state is not unique for {p}: {exc}", exc.condition_estimate
        ) from exc
    return StateVector15(x, np.zeros(6)).to_density_matrix()
