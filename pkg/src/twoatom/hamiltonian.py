"""Rotating-frame Hamiltonian in the collective basis and its resonant eigensystem."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import A, E, G, S


@dataclass(frozen=True)
class SystemParams:
    """Drive and coupling parameters, all in units of the single-atom decay rate.

    Attributes
    ----------
    omega0 : float
        Rabi frequency of the drive (>= 0).
    omega12 : float
        Dipole-dipole shift (may be negative).
    gamma12 : float
        Collective decay rate, ``|gamma12| <= 1``.
    """

    omega0: float
    omega12: float
    gamma12: float = 0.0

    def __post_init__(self):
        for name in ("omega0", "omega12", "gamma12"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.omega0 < 0:
            raise DomainError(f"omega0 must be non-negative, got {self.omega0}")
        if abs(self.gamma12) > 1.0:
            raise DomainError(f"|gamma12| must not exceed 1, got {self.gamma12}")

    @classmethod
    def from_geometry(cls, omega0, geom) -> SystemParams:
        from .geometry import collective_params

        cp = collective_params(geom)
        return cls(omega0, cp.omega12, cp.gamma12)

    @property
    def omega_tilde(self) -> float:
        """Effective coupling of |g> and |e> to |s>."""
        return self.omega0 / math.sqrt(2.0)

    @property
    def big_omega(self) -> float:
        return math.hypot(self.omega0, 0.5 * self.omega12)

    # omega_plus * omega_minus = omega0**2; the smaller one is formed from the
    # product to avoid cancellation when |omega12| >> omega0
    @property
    def omega_plus(self) -> float:
        if self.omega12 >= 0:
            return self.big_omega + 0.5 * self.omega12
        return self.omega0 * (self.omega0 / (self.big_omega - 0.5 * self.omega12))

    @property
    def omega_minus(self) -> float:
        if self.omega12 <= 0:
            return self.big_omega - 0.5 * self.omega12
        return self.omega0 * (self.omega0 / (self.big_omega + 0.5 * self.omega12))

    @property
    def alpha_plus(self) -> float:
        return self.omega_plus / (2.0 * self.big_omega)

    @property
    def alpha_minus(self) -> float:
        return self.omega_minus / (2.0 * self.big_omega)

    @property
    def u12(self) -> complex:
        """Complex interaction strength gamma12 + i*omega12."""
        return complex(self.gamma12, self.omega12)


@dataclass(frozen=True)
class Eigensystem:
    """Energies and eigenvectors (columns, basis order g, e, s, a)."""

    energies: np.ndarray
    vectors: np.ndarray
    degenerate: bool = False


def build_transformed_hamiltonian(p: SystemParams, delta: float = 0.0) -> np.ndarray:
    if not math.isfinite(delta):
        raise DomainError("delta must be finite")
    w = p.omega_tilde
    h = np.zeros((4, 4), dtype=complex)
    h[G, G] = -delta
    h[E, E] = delta
    h[S, S] = p.omega12
    h[A, A] = -p.omega12
    h[G, S] = h[S, G] = -w
    h[E, S] = h[S, E] = -w
    return h


def eigensystem_resonant(p: SystemParams) -> Eigensystem:
    """Closed-form eigensystem of the rotating-frame Hamiltonian at zero detuning.

    Energies are ordered ``(-omega_minus, omega_plus, 0, -omega12)``.  When the
    drive and the shift both vanish the Hamiltonian is zero; the identity basis
    is returned with ``degenerate=True``.
    """
    if p.omega0 == 0.0 and p.omega12 == 0.0:
        return Eigensystem(np.zeros(4), np.eye(4, dtype=complex), degenerate=True)
    ap, am = p.alpha_plus, p.alpha_minus
    r2 = 1.0 / math.sqrt(2.0)
    vecs = np.zeros((4, 4), dtype=complex)
    vecs[:, 0] = [math.sqrt(ap / 2), math.sqrt(ap / 2), math.sqrt(am), 0.0]
    vecs[:, 1] = [-math.sqrt(am / 2), -math.sqrt(am / 2), math.sqrt(ap), 0.0]
    vecs[:, 2] = [-r2, r2, 0.0, 0.0]
    vecs[:, 3] = [0.0, 0.0, 0.0, 1.0]
    energies = np.array([-p.omega_minus, p.omega_plus, 0.0, -p.omega12])
    return Eigensystem(energies, vecs)
