"""Pure-Python reference kernels.

Used when the compiled :mod:`twoatom._ckernels` extension is unavailable, and
as the parity reference for it in the test suite.  Function signatures are
identical between the two modules.
"""

import math

import numpy as np

from .numerics.ode import integrate_adaptive

BACKEND = "python"

# component layout of the 15-vector: X sector then Y sector
EE, SS, AA, GE, EG, ES, SE, GS, SG = range(9)
AE, EA, GA, AG, SA, AS = range(9, 15)


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(w, v)`` with ``w`` ascending and ``a @ v[:, k] = w[k] * v[:, k]``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    norm = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    if norm == 0.0:
        return np.zeros(n), v
    thresh = tol * norm
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[p, q]) ** 2 for p in range(n) for q in range(n) if p != q))
        if off < thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                ph = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # J = D R D^H with D = diag(1, conj(ph)); J^H A J zeroes (p, q)
                sp = s * ph
                sc = s * ph.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - sc * colq
                a[:, q] = sp * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - sp * rowq
                a[q, :] = sc * rowp + c * rowq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - sc * vq
                v[:, q] = sp * vp + c * vq
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def master_rhs(z, omega0, omega12, gamma12, decay=1.0):
    """Time derivative of the 15-component state (X sector then Y sector).

    ``decay`` multiplies both the single-atom rate (1 in these units) and the
    collective rate; ``decay=0`` leaves purely coherent dynamics.
    """
    w = omega0 / math.sqrt(2.0)
    g = decay
    g12 = decay * gamma12
    iw = 1j * w
    io = 1j * omega12
    ee, ss, aa, ge, eg, es, se, gs, sg = (z[i] for i in range(9))
    ae, ea, ga, ag, sa, as_ = (z[i] for i in range(9, 15))
    out = np.empty(15, dtype=complex)
    out[EE] = -4 * g * ee + iw * (se - es)
    out[SS] = -2 * (g + g12) * (ss - ee) + iw * (es - se + gs - sg)
    out[AA] = -2 * (g - g12) * (aa - ee)
    out[GE] = -2 * g * ge + iw * (se - gs)
    out[EG] = -2 * g * eg - iw * (es - sg)
    out[ES] = -(3 * g + g12 - io) * es + iw * (ss - ee - eg)
    out[SE] = -(3 * g + g12 + io) * se - iw * (ss - ee - ge)
    out[GS] = -iw - (g + g12 - io) * gs + 2 * (g + g12) * se + iw * (2 * ss + aa + ee - ge)
    out[SG] = iw - (g + g12 + io) * sg + 2 * (g + g12) * es - iw * (2 * ss + aa + ee - eg)
    out[AE] = -(3 * g - g12 - io) * ae - iw * as_
    out[EA] = -(3 * g - g12 + io) * ea + iw * sa
    out[GA] = -(g - g12 + io) * ga - 2 * (g - g12) * ae + iw * sa
    out[AG] = -(g - g12 - io) * ag - 2 * (g - g12) * ea - iw * as_
    out[SA] = -2 * (g + io) * sa + iw * (ea + ga)
    out[AS] = -2 * (g - io) * as_ - iw * (ae + ag)
    return out


def integrate_master(z0, omega0, omega12, gamma12, decay, t_eval, rtol, atol, max_steps=10_000_000):
    """Integrate the 15-component system, sampling exactly at ``t_eval``.

    Returns ``(samples, nsteps, nrejected)`` with ``samples`` of shape
    ``(len(t_eval), 15)``.  ``t_eval[0]`` is the initial time.
    """
    t_eval = np.asarray(t_eval, dtype=float)
    z0 = np.asarray(z0, dtype=complex)
    if t_eval.size == 1 or t_eval[-1] == t_eval[0]:
        return np.tile(z0, (t_eval.size, 1)), 0, 0
    sol = integrate_adaptive(
        lambda t, z: master_rhs(z, omega0, omega12, gamma12, decay),
        z0,
        (t_eval[0], t_eval[-1]),
        rtol=rtol,
        atol=atol,
        t_eval=t_eval,
        max_steps=max_steps,
    )
    return sol.y_eval, sol.nsteps, sol.nrejected
