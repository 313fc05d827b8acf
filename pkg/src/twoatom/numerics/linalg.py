"""Small dense complex linear algebra (dimension <= 16)."""

import numpy as np

from .. import _backend
from ..errors import ContractViolation, DomainError, SingularMatrixError

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-8


def _as_square(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolation(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation("matrix has non-finite entries")
    return m


def hermitian_eigensystem(m, check=True):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    The input is symmetrized before diagonalization by cyclic Jacobi rotations.
    With ``check`` set, a departure from Hermiticity larger than ``1e-10``
    (relative to the largest entry, floor 1) raises :class:`ContractViolation`.
    """
    m = _as_square(m)
    if check:
        dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if dev > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(m)))):
            raise ContractViolation(f"matrix is not Hermitian (deviation {dev:.3e})")
    w, v = _backend.kernels.jacobi_eigh(0.5 * (m + m.conj().T))
    return np.asarray(w), np.asarray(v)


def hermitian_sqrt(m):
    """Principal square root of a Hermitian positive-semidefinite matrix.

    Eigenvalues in ``[-1e-8, 0)`` are treated as round-off and clipped to zero.
    """
    w, v = hermitian_eigensystem(m)
    if w.size and w[0] < -PSD_TOL:
        raise DomainError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root) @ v.conj().T


def linear_solve(a, b):
    """Solve ``a x = b`` by Gaussian elimination with partial pivoting.

    Raises :class:`SingularMatrixError` when a pivot falls below
    ``1e-14 * ||a||`` (max-abs norm); the error carries a crude condition
    estimate (largest over smallest pivot magnitude).
    """
    a = _as_square(a).copy()
    b = np.array(b, dtype=complex)
    n = a.shape[0]
    if b.shape[0] != n:
        raise ContractViolation(f"right-hand side has length {b.shape[0]}, expected {n}")
    scale = float(np.max(np.abs(a))) if n else 0.0
    if scale == 0.0:
        raise SingularMatrixError("matrix is zero")
    pivots = []
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = abs(a[p, k])
        pivots.append(piv)
        if piv < 1e-14 * scale:
            big = max(pivots[:-1], default=scale)
            cond = big / piv if piv > 0 else float("inf")
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot {piv:.3e} at column {k}, "
                f"condition estimate {cond:.3e})",
                cond,
            )
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        f = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k:] -= np.outer(f, a[k, k:])
        b[k + 1 :] -= np.multiply.outer(f, b[k])
    x = np.zeros_like(b)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    return x
