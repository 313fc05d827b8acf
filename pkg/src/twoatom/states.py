"""Density matrices tagged with the basis they are written in.

Collective ordering is ``(g, e, s, a)``; product ordering is
``(g1g2, e1e2, g1e2, e1g2)``.  The two are related by a fixed real
orthogonal matrix, see :data:`COLLECTIVE_TO_PRODUCT`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, InvalidStateError

G, E, S, A = 0, 1, 2, 3

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-8

_r = 1.0 / np.sqrt(2.0)
# columns are |g>, |e>, |s>, |a> expressed in the product basis
COLLECTIVE_TO_PRODUCT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, _r, -_r],
        [0.0, 0.0, _r, _r],
    ]
)


class Basis(enum.Enum):
    COLLECTIVE = "collective"
    PRODUCT = "product"


@dataclass(frozen=True)
class DensityMatrix:
    """A 4x4 density matrix and the basis its entries refer to."""

    data: np.ndarray
    basis: Basis = Basis.COLLECTIVE

    def __post_init__(self):
        m = np.array(self.data, dtype=complex)
        if m.shape != (4, 4):
            raise ContractViolation(f"density matrix must be 4x4, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ContractViolation("density matrix has non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "data", m)

    def __getitem__(self, key):
        return self.data[key]

    @classmethod
    def from_pure(cls, psi, basis=Basis.COLLECTIVE):
        psi = np.asarray(psi, dtype=complex)
        return cls(np.outer(psi, psi.conj()), basis)

    @classmethod
    def ground(cls):
        m = np.zeros((4, 4), complex)
        m[G, G] = 1.0
        return cls(m)

    def hermiticity_error(self):
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def trace_error(self):
        return float(abs(np.trace(self.data) - 1.0))

    def min_eigenvalue(self):
        from .numerics import hermitian_eigensystem

        w, _ = hermitian_eigensystem(0.5 * (self.data + self.data.conj().T), check=False)
        return float(w[0])

    def purity(self):
        return float(np.real(np.trace(self.data @ self.data)))

    def violations(self, scale=1.0):
        """Return a list of human-readable invariant violations (empty if valid)."""
        out = []
        herm = self.hermiticity_error()
        if herm > scale * HERMITIAN_TOL:
            out.append(f"hermiticity error {herm:.3e}")
        tr = self.trace_error()
        if tr > scale * TRACE_TOL:
            out.append(f"trace error {tr:.3e}")
        lo = self.min_eigenvalue()
        if lo < -scale * POSITIVITY_TOL:
            out.append(f"min eigenvalue {lo:.3e}")
        return out

    def validate(self, scale=1.0):
        bad = self.violations(scale)
        if bad:
            raise InvalidStateError("invalid density matrix: " + "; ".join(bad))
        return self

    def require(self, basis):
        if self.basis is not basis:
            raise ContractViolation(
                f"expected a {basis.value}-basis matrix, got {self.basis.value}"
            )
        return self
