"""Distance- and orientation-dependent collective parameters of the atom pair.

Both functions return values in units of the single-atom decay rate and
depend on the orientation only through ``cos(theta)**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# below this kr the collective-decay bracket is evaluated by its Taylor series
_SERIES_X = 0.2


@dataclass(frozen=True)
class PairGeometry:
    """Separation in wavelengths and the dipole angle to the interatomic axis."""

    separation_over_wavelength: float
    theta: float = math.pi / 2

    def __post_init__(self):
        r, th = self.separation_over_wavelength, self.theta
        if not (math.isfinite(r) and math.isfinite(th)):
            raise DomainError("geometry parameters must be finite")
        if r <= 0:
            raise DomainError(f"separation must be positive, got {r}")
        if not 0.0 <= th <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {th}")

    @property
    def x(self) -> float:
        """Dimensionless separation k*r12."""
        return 2.0 * math.pi * self.separation_over_wavelength

    @classmethod
    def from_x(cls, x: float, theta: float = math.pi / 2) -> PairGeometry:
        return cls(x / (2.0 * math.pi), theta)


@dataclass(frozen=True)
class CollectiveParams:
    omega12: float
    gamma12: float


def _angular(theta):
    c2 = math.cos(theta) ** 2
    return 1.0 - c2, 1.0 - 3.0 * c2


def dipole_dipole_shift(geom: PairGeometry) -> float:
    """Coherent dipole-dipole shift for parallel dipoles (diverges as 1/x**3)."""
    x = geom.x
    transverse, longitudinal = _angular(geom.theta)
    return 0.75 * (
        -transverse * math.cos(x) / x
        + longitudinal * (math.sin(x) / x**2 + math.cos(x) / x**3)
    )


def _cos_over_x2_minus_sin_over_x3(x):
    if x < _SERIES_X:
        # sum_k (-1)^k 2k x^(2k-2) / (2k+1)!, truncation below 1e-19 at x = 0.2
        x2 = x * x
        total = 0.0
        for k in range(6, 0, -1):
            total = total * x2 + (-1) ** k * 2 * k / math.factorial(2 * k + 1)
        return total
    return math.cos(x) / x**2 - math.sin(x) / x**3


def collective_decay(geom: PairGeometry) -> float:
    """Cross-damping rate; tends to 1 as x -> 0 and to 0 as x -> infinity."""
    x = geom.x
    transverse, longitudinal = _angular(geom.theta)
    sinc = math.sin(x) / x
    return 1.5 * (transverse * sinc + longitudinal * _cos_over_x2_minus_sin_over_x3(x))


def collective_params(geom: PairGeometry) -> CollectiveParams:
    return CollectiveParams(dipole_dipole_shift(geom), collective_decay(geom))
