"""Concurrence, X-state bounds, steady-state entanglement and fidelity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DomainError, InvalidStateError
from .hamiltonian import SystemParams
from .master import steady_denominator
from .numerics import hermitian_eigensystem
from .pure import CollectiveAmplitudes, pure_concurrence
from .states import COLLECTIVE_TO_PRODUCT, A, Basis, DensityMatrix, E, G, S

__all__ = [
    "COLLECTIVE_TO_PRODUCT",
    "SIGMA_YY",
    "SteadyConcurrenceReport",
    "approx_mixed_state",
    "fidelity",
    "pure_concurrence",
    "steady_concurrence",
    "to_collective_basis",
    "to_product_basis",
    "wootters_concurrence",
    "wootters_roots",
    "x_state_concurrence_mixed",
    "x_state_concurrence_pure",
]

# sigma_y (x) sigma_y in the product ordering (g1g2, e1e2, g1e2, e1g2)
SIGMA_YY = np.array(
    [
        [0, -1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)

NEG_EIG_ABORT = 1e-8
NEG_ROOT_CLIP = 1e-10
# eigenvalues this small relative to the largest are round-off; their square
# roots (~1e-8) would otherwise leak into the concurrence
ROUNDOFF_FLOOR = 16 * np.finfo(float).eps


def to_product_basis(rho: DensityMatrix) -> DensityMatrix:
    u = COLLECTIVE_TO_PRODUCT
    m = rho.require(Basis.COLLECTIVE).data
    return DensityMatrix(u @ m @ u.T, Basis.PRODUCT)


def to_collective_basis(rho: DensityMatrix) -> DensityMatrix:
    u = COLLECTIVE_TO_PRODUCT
    m = rho.require(Basis.PRODUCT).data
    return DensityMatrix(u.T @ m @ u, Basis.COLLECTIVE)


def wootters_roots(rho: DensityMatrix) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho @ rho_tilde``, descending.

    Computed from the Hermitian matrix ``sqrt(rho) rho_tilde sqrt(rho)``,
    which has the same spectrum.
    """
    m = rho.require(Basis.PRODUCT).data
    w, v = hermitian_eigensystem(m)
    if w[0] < -NEG_EIG_ABORT:
        raise InvalidStateError(f"density matrix has eigenvalue {w[0]:.3e}")
    root = (v * np.sqrt(_clip_roundoff(w))) @ v.conj().T
    flipped = SIGMA_YY @ m.conj() @ SIGMA_YY
    lam, _ = hermitian_eigensystem(root @ flipped @ root, check=False)
    if lam[0] < -NEG_ROOT_CLIP:
        raise InvalidStateError(f"spin-flip product has eigenvalue {lam[0]:.3e}")
    return np.sqrt(_clip_roundoff(lam))[::-1]


def _clip_roundoff(w):
    return np.where(w > ROUNDOFF_FLOOR * max(w[-1], 0.0), w, 0.0)


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Concurrence of a two-qubit mixed state given in the product basis."""
    r = wootters_roots(rho)
    return float(max(0.0, r[0] - r[1] - r[2] - r[3]))


def x_state_concurrence_pure(a: CollectiveAmplitudes) -> float:
    """X-state concurrence ``max(0, 2|c_g c_e*| - |c_s|**2)``; needs ``c_a = 0``."""
    if a.c_a != 0:
        raise ContractViolation("X-state form requires zero antisymmetric amplitude")
    return float(max(0.0, 2 * abs(a.c_g * np.conj(a.c_e)) - abs(a.c_s) ** 2))


def x_state_concurrence_mixed(rho: DensityMatrix) -> float:
    """X-state lower bound from the two-photon coherence and single-excitation block."""
    m = rho.require(Basis.COLLECTIVE).data
    pop = (m[S, S] + m[A, A]).real
    re_sa = 2.0 * m[S, A].real
    disc = pop * pop - re_sa * re_sa
    if disc < -1e-12:
        raise DomainError(
            f"non-physical X parameters: (rho_ss + rho_aa)^2 < (2 Re rho_sa)^2 ({disc:.3e})"
        )
    return float(max(0.0, 2 * abs(m[G, E]) - math.sqrt(max(disc, 0.0))))


@dataclass(frozen=True)
class SteadyConcurrenceReport:
    value: float
    above_threshold: bool
    threshold_margin: float
    eigen_roots: tuple


def steady_concurrence(p: SystemParams) -> SteadyConcurrenceReport:
    """Closed-form stationary concurrence and its threshold.

    Entanglement survives in the steady state iff ``|U12| > omega_tilde**2 / 2``
    with ``U12 = gamma12 + i omega12``.
    """
    w2 = p.omega_tilde**2
    mod_u = abs(p.u12)
    d = steady_denominator(p)
    margin = mod_u - 0.5 * w2
    value = max(0.0, w2 * margin / d)
    big = math.sqrt(w2 * w2 + 4.0 * mod_u * mod_u)
    r12 = (0.25 * w2 * (big + 2 * mod_u) / d, 0.25 * w2 * (big - 2 * mod_u) / d)
    r34 = 0.25 * w2 * w2 / d
    roots = tuple(sorted((*r12, r34, r34), reverse=True))
    return SteadyConcurrenceReport(float(value), margin > 0, float(margin), roots)


def approx_mixed_state(a: CollectiveAmplitudes, rho_aa: float) -> DensityMatrix:
    """Pure state mixed with white noise of weight ``4 rho_aa``."""
    if not 0.0 <= rho_aa <= 0.25:
        raise DomainError(f"rho_aa must lie in [0, 1/4], got {rho_aa}")
    psi = a.vector
    m = (1.0 - 4.0 * rho_aa) * np.outer(psi, psi.conj()) + rho_aa * np.eye(4)
    return DensityMatrix(m, Basis.COLLECTIVE)


def fidelity(rho: DensityMatrix) -> float:
    """Overlap with the two-photon Bell state ``(|e> - i|g>)/sqrt(2)``."""
    m = rho.require(Basis.COLLECTIVE).data
    return float(0.5 * (m[E, E] + m[G, G]).real + m[E, G].imag)
