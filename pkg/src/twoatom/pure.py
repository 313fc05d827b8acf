"""Dissipation-free evolution of the driven pair.

Two independent routes are provided: the closed-form amplitudes for the
ground-state initial condition (:func:`amplitudes_from_ground`) and a
general spectral propagator for any initial pure state (:func:`evolve_pure`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DomainError
from .hamiltonian import SystemParams, eigensystem_resonant

NORM_TOL = 1e-6


@dataclass(frozen=True)
class CollectiveAmplitudes:
    c_g: complex
    c_e: complex
    c_s: complex
    c_a: complex = 0j
    time: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c_g, self.c_e, self.c_s, self.c_a], dtype=complex)

    @classmethod
    def from_vector(cls, v, time=0.0) -> CollectiveAmplitudes:
        v = np.asarray(v, dtype=complex)
        return cls(complex(v[0]), complex(v[1]), complex(v[2]), complex(v[3]), float(time))

    def norm(self) -> float:
        return float(np.sum(np.abs(self.vector) ** 2))

    def populations(self) -> np.ndarray:
        return np.abs(self.vector) ** 2


def ground_amplitude_arrays(p: SystemParams, t):
    """Vectorized closed-form amplitudes ``(c_g, c_e, c_s)`` on an array of times."""
    t = np.asarray(t, dtype=float)
    if p.big_omega == 0.0:
        one = np.ones_like(t, dtype=complex)
        return one, 0 * one, 0 * one
    ep = np.exp(1j * p.omega_minus * t)
    em = np.exp(-1j * p.omega_plus * t)
    mix = p.alpha_plus * ep + p.alpha_minus * em
    c_g = 0.5 * (mix + 1.0)
    c_e = 0.5 * (mix - 1.0)
    c_s = p.omega0 / p.big_omega * (ep - em) / (2.0 * math.sqrt(2.0))
    return c_g, c_e, c_s


def amplitudes_from_ground(p: SystemParams, t: float) -> CollectiveAmplitudes:
    """Closed-form amplitudes at time ``t`` starting from ``|g>`` at zero detuning.

    The antisymmetric amplitude stays exactly zero because the drive couples
    only to the symmetric state.
    """
    c_g, c_e, c_s = ground_amplitude_arrays(p, t)
    return CollectiveAmplitudes(complex(c_g), complex(c_e), complex(c_s), 0j, float(t))


def evolve_pure(psi0, p: SystemParams, times) -> list[CollectiveAmplitudes]:
    """Propagate an arbitrary initial pure state by spectral decomposition."""
    if isinstance(psi0, CollectiveAmplitudes):
        psi0 = psi0.vector
    psi0 = np.asarray(psi0, dtype=complex)
    es = eigensystem_resonant(p)
    coeff = es.vectors.conj().T @ psi0
    out = []
    for t in np.atleast_1d(np.asarray(times, dtype=float)):
        psi = es.vectors @ (np.exp(-1j * es.energies * t) * coeff)
        out.append(CollectiveAmplitudes.from_vector(psi, t))
    return out


def pure_concurrence(a: CollectiveAmplitudes) -> float:
    """Concurrence ``|2 c_g c_e - c_s**2 + c_a**2|`` of a normalized pure state."""
    dev = abs(a.norm() - 1.0)
    if dev > NORM_TOL:
        raise ContractViolation(f"amplitudes are not normalized (|norm - 1| = {dev:.3e})")
    c = abs(2 * a.c_g * a.c_e - a.c_s**2 + a.c_a**2)
    if 1.0 < c <= 1.0 + 1e-12:
        c = 1.0
    return float(c)


def coherences_from_ground(p: SystemParams, t: float):
    """Slowly varying coherences ``(rho_gs, rho_es, rho_ge)`` of the driven pure state."""
    if p.big_omega == 0.0:
        return 0j, 0j, 0j
    big, om_p, om_m = p.big_omega, p.omega_plus, p.omega_minus
    ap, am = p.alpha_plus, p.alpha_minus
    pref = 0.25 * p.omega_tilde / big
    common = am * (np.exp(-2j * big * t) - 1) - ap * (np.exp(2j * big * t) - 1)
    rho_gs = pref * (np.exp(-1j * om_m * t) - np.exp(1j * om_p * t) + common)
    rho_es = pref * (-np.exp(-1j * om_m * t) + np.exp(1j * om_p * t) + common)
    rho_ge = -0.5 * (p.omega_tilde / big) ** 2 * np.sin(big * t) ** 2 + 0.5j * (
        am * np.sin(om_p * t) - ap * np.sin(om_m * t)
    )
    return complex(rho_gs), complex(rho_es), complex(rho_ge)


def resonant_ratio(n: int) -> float:
    """Drive-to-shift ratio at which the state is a Bell state at ``t = pi/omega12``."""
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return math.sqrt(n * n - 0.25)


def bell_time(p: SystemParams) -> float:
    if p.omega12 == 0:
        raise DomainError("no Bell time without a dipole-dipole shift")
    return math.pi / abs(p.omega12)


def approx_concurrence_large_shift(p: SystemParams, t):
    """Two-level approximation of the concurrence valid for ``omega12 >> big_omega``."""
    if p.omega12 == 0:
        raise DomainError("large-shift approximation requires omega12 != 0")
    val = 0.5 * np.abs(-1.0 + np.exp(-2j * p.omega0**2 * np.asarray(t, dtype=float) / p.omega12))
    return float(val) if np.ndim(val) == 0 else val
