"""Independent reference implementations used only by the tests.

None of these share code with the package: the master equation is built
from spin operators in the product basis, eigenvalues come from numpy/scipy
or from bisection on the characteristic polynomial.
"""

import numpy as np
from scipy.linalg import expm

_sp = np.array([[0, 0], [1, 0]], dtype=complex)  # |e><g| with (g, e) ordering
_I2 = np.eye(2)
S1P = np.kron(_sp, _I2)
S2P = np.kron(_I2, _sp)
S1M = S1P.conj().T
S2M = S2P.conj().T
# kron ordering is (g1g2, g1e2, e1g2, e1e2); collective states as columns
_gg, _ge, _eg, _ee = np.eye(4)
KRON_FROM_COLLECTIVE = np.column_stack(
    [_gg, _ee, (_eg + _ge) / np.sqrt(2), (_eg - _ge) / np.sqrt(2)]
).astype(complex)


def lindblad_rhs(rho_c, omega0, omega12, gamma12, gamma=1.0):
    """Full master equation (interaction picture, zero detuning) on a collective-basis matrix."""
    u = KRON_FROM_COLLECTIVE
    rho = u @ rho_c @ u.conj().T
    h = omega12 * (S1P @ S2M + S2P @ S1M) - 0.5 * omega0 * (S1P + S2P + S1M + S2M)
    d = -1j * (h @ rho - rho @ h)
    rates = [[gamma, gamma12], [gamma12, gamma]]
    sp, sm = (S1P, S2P), (S1M, S2M)
    for i in range(2):
        for j in range(2):
            op = sp[i] @ sm[j]
            d -= rates[i][j] * (rho @ op + op @ rho - 2 * sm[j] @ rho @ sp[i])
    return u.conj().T @ d @ u


def lindblad_generator(omega0, omega12, gamma12, gamma=1.0):
    """16x16 superoperator acting on row-major vec(rho)."""
    gen = np.empty((16, 16), dtype=complex)
    for k in range(16):
        e = np.zeros(16, dtype=complex)
        e[k] = 1
        gen[:, k] = lindblad_rhs(e.reshape(4, 4), omega0, omega12, gamma12, gamma).ravel()
    return gen


def propagate_lindblad(rho0, omega0, omega12, gamma12, t, gamma=1.0):
    gen = lindblad_generator(omega0, omega12, gamma12, gamma)
    return (expm(gen * t) @ np.asarray(rho0).ravel()).reshape(4, 4)


def unitary_amplitudes(psi0, omega0, omega12, t):
    """exp(-i H t) psi0 with H assembled directly in the collective basis."""
    w = omega0 / np.sqrt(2)
    h = np.array(
        [[0, 0, -w, 0], [0, 0, -w, 0], [-w, -w, omega12, 0], [0, 0, 0, -omega12]], dtype=complex
    )
    return expm(-1j * h * t) @ np.asarray(psi0, dtype=complex)


def wootters_direct(rho_c):
    """Wootters concurrence from the non-Hermitian product in the kron basis."""
    u = KRON_FROM_COLLECTIVE
    rho = u @ rho_c @ u.conj().T
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    lam = np.sort(np.abs(np.linalg.eigvals(rho @ yy @ rho.conj() @ yy).real))[::-1]
    r = np.sqrt(lam)
    return max(0.0, r[0] - r[1] - r[2] - r[3])


def pure_concurrence_kron(psi_c):
    """2|c_gg c_ee - c_ge c_eg| from product-basis amplitudes."""
    v = KRON_FROM_COLLECTIVE @ np.asarray(psi_c, dtype=complex)
    return abs(2 * (v[0] * v[3] - v[1] * v[2]))


def charpoly_eigenvalues(m, tol=1e-13):
    """Eigenvalues of a Hermitian matrix by bisection on det(m - x I)."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = np.real(np.poly(m))
    radius = float(np.max(np.sum(np.abs(m), axis=1))) + 1.0
    grid = np.linspace(-radius, radius, 20001)
    vals = np.polyval(coeffs, grid)
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0:
            roots.append(a)
            continue
        if fa * fb < 0:
            lo, hi = a, b
            while hi - lo > tol * max(1.0, abs(lo)):
                mid = 0.5 * (lo + hi)
                fm = np.polyval(coeffs, mid)
                if np.sign(fm) == np.sign(np.polyval(coeffs, lo)):
                    lo = mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    return np.array(sorted(roots)[:n])


def random_density_matrix(rng, rank=4):
    x = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_pure(rng, n=4):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)
