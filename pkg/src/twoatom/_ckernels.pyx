# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: complex Jacobi eigensolver, master-equation RHS and a
fused Dormand-Prince 5(4) driver for the 15-component system.

Mirrors :mod:`twoatom._pykernels` function for function.
"""

import numpy as np
from libc.math cimport sqrt, fabs, pow, isfinite

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)

BACKEND = "cython"

DEF NZ = 15

cdef double SQRT2 = sqrt(2.0)

# Dormand-Prince tableau; same constants as numerics.ode
cdef double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9
cdef double A21 = 1.0 / 5
cdef double A31 = 3.0 / 40, A32 = 9.0 / 40
cdef double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9
cdef double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729
cdef double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176, A65 = -5103.0 / 18656
cdef double A71 = 35.0 / 384, A73 = 500.0 / 1113, A74 = 125.0 / 192, A75 = -2187.0 / 6784, A76 = 11.0 / 84
cdef double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200
cdef double E6 = 22.0 / 525, E7 = -1.0 / 40
cdef double SAFETY = 0.9, MIN_FACTOR = 0.2, MAX_FACTOR = 5.0


def jacobi_eigh(a, double tol=1e-14, int max_sweeps=100):
    """Cyclic complex Jacobi diagonalization; returns ``(w ascending, v)``."""
    cdef double complex[:, ::1] m = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = m.shape[0]
    vv = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = vv
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double norm = 0.0, off, mag, theta, t, c, s
    cdef double complex ph, sp, sc, xp, xq
    for p in range(n):
        for q in range(n):
            norm += creal(m[p, q]) * creal(m[p, q]) + cimag(m[p, q]) * cimag(m[p, q])
    norm = sqrt(norm)
    if norm == 0.0:
        return np.zeros(n), vv
    cdef double thresh = tol * norm
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += creal(m[p, q]) * creal(m[p, q]) + cimag(m[p, q]) * cimag(m[p, q])
        if sqrt(off) < thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = cabs(m[p, q])
                if mag < 1e-300:
                    continue
                ph = m[p, q] / mag
                theta = (creal(m[q, q]) - creal(m[p, p])) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                sp = s * ph
                sc = s * conj(ph)
                for k in range(n):
                    xp = m[k, p]
                    xq = m[k, q]
                    m[k, p] = c * xp - sc * xq
                    m[k, q] = sp * xp + c * xq
                for k in range(n):
                    xp = m[p, k]
                    xq = m[q, k]
                    m[p, k] = c * xp - sp * xq
                    m[q, k] = sc * xp + c * xq
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = creal(m[p, p])
                m[q, q] = creal(m[q, q])
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - sc * xq
                    v[k, q] = sp * xp + c * xq
    w = np.array([creal(m[k, k]) for k in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], vv[:, order]


cdef inline void _rhs(const double complex* z, double complex* out,
                      double w, double om12, double g, double g12) noexcept nogil:
    cdef double complex iw = 1j * w
    cdef double complex io = 1j * om12
    cdef double complex ee = z[0], ss = z[1], aa = z[2], ge = z[3], eg = z[4]
    cdef double complex es = z[5], se = z[6], gs = z[7], sg = z[8]
    cdef double complex ae = z[9], ea = z[10], ga = z[11], ag = z[12], sa = z[13], as_ = z[14]
    out[0] = -4 * g * ee + iw * (se - es)
    out[1] = -2 * (g + g12) * (ss - ee) + iw * (es - se + gs - sg)
    out[2] = -2 * (g - g12) * (aa - ee)
    out[3] = -2 * g * ge + iw * (se - gs)
    out[4] = -2 * g * eg - iw * (es - sg)
    out[5] = -(3 * g + g12 - io) * es + iw * (ss - ee - eg)
    out[6] = -(3 * g + g12 + io) * se - iw * (ss - ee - ge)
    out[7] = -iw - (g + g12 - io) * gs + 2 * (g + g12) * se + iw * (2 * ss + aa + ee - ge)
    out[8] = iw - (g + g12 + io) * sg + 2 * (g + g12) * es - iw * (2 * ss + aa + ee - eg)
    out[9] = -(3 * g - g12 - io) * ae - iw * as_
    out[10] = -(3 * g - g12 + io) * ea + iw * sa
    out[11] = -(g - g12 + io) * ga - 2 * (g - g12) * ae + iw * sa
    out[12] = -(g - g12 - io) * ag - 2 * (g - g12) * ea - iw * as_
    out[13] = -2 * (g + io) * sa + iw * (ea + ga)
    out[14] = -2 * (g - io) * as_ - iw * (ae + ag)


def master_rhs(z, double omega0, double omega12, double gamma12, double decay=1.0):
    """Time derivative of the 15-component state (X sector then Y sector)."""
    cdef double complex[::1] zin = np.ascontiguousarray(z, dtype=np.complex128)
    out = np.empty(NZ, dtype=np.complex128)
    cdef double complex[::1] o = out
    _rhs(&zin[0], &o[0], omega0 / SQRT2, omega12, decay, decay * gamma12)
    return out


cdef inline double _maxabs_scaled(const double complex* v, const double complex* y0,
                                  const double complex* y1, double rtol, double atol,
                                  double h) noexcept nogil:
    cdef double r = 0.0, sc, a0, a1, x
    cdef int i
    for i in range(NZ):
        a0 = cabs(y0[i])
        a1 = cabs(y1[i])
        sc = atol + rtol * (a0 if a0 > a1 else a1)
        x = h * cabs(v[i]) / sc
        if x > r or x != x:
            r = x
    return r


def integrate_master(z0, double omega0, double omega12, double gamma12, double decay,
                     t_eval, double rtol, double atol, long max_steps=10_000_000):
    """Integrate the 15-component system, sampling exactly at ``t_eval``.

    Returns ``(samples, nsteps, nrejected)``.
    """
    from .errors import IntegrationError, StiffnessError

    cdef double[::1] te = np.ascontiguousarray(t_eval, dtype=np.float64)
    cdef Py_ssize_t n_eval = te.shape[0]
    samples = np.empty((n_eval, NZ), dtype=np.complex128)
    cdef double complex[:, ::1] out = samples
    cdef double complex y[NZ]
    cdef double complex yn[NZ]
    cdef double complex ytmp[NZ]
    cdef double complex k1[NZ]
    cdef double complex k2[NZ]
    cdef double complex k3[NZ]
    cdef double complex k4[NZ]
    cdef double complex k5[NZ]
    cdef double complex k6[NZ]
    cdef double complex k7[NZ]
    cdef double complex errv[NZ]
    cdef double w = omega0 / SQRT2, g = decay, g12 = decay * gamma12
    cdef double complex[::1] zin = np.ascontiguousarray(z0, dtype=np.complex128)
    cdef int i
    cdef Py_ssize_t si = 0
    cdef long nsteps = 0, nrej = 0
    cdef double t, h, h_try, target, err, factor, d0, d1, d2, h0, h1, sc, h_min
    cdef bint landing
    err = 0.0
    h_try = 0.0

    for i in range(NZ):
        y[i] = zin[i]
    if n_eval == 0:
        return samples, 0, 0
    t = te[0]
    while si < n_eval and te[si] <= t:
        for i in range(NZ):
            out[si, i] = y[i]
        si += 1
    if si == n_eval:
        return samples, 0, 0
    h_min = 1e-14 * max(1.0, fabs(te[0]), fabs(te[n_eval - 1]))

    _rhs(y, k1, w, omega12, g, g12)
    # starting step, same heuristic as numerics.ode.initial_step
    d0 = 0.0
    d1 = 0.0
    for i in range(NZ):
        sc = atol + rtol * cabs(y[i])
        d0 = max(d0, cabs(y[i]) / sc)
        d1 = max(d1, cabs(k1[i]) / sc)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    for i in range(NZ):
        ytmp[i] = y[i] + h0 * k1[i]
    _rhs(ytmp, k2, w, omega12, g, g12)
    d2 = 0.0
    for i in range(NZ):
        sc = atol + rtol * cabs(y[i])
        d2 = max(d2, cabs(k2[i] - k1[i]) / sc)
    d2 /= h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = pow(0.01 / max(d1, d2), 0.2)
    h = min(100 * h0, h1)

    with nogil:
        while si < n_eval:
            if nsteps + nrej > max_steps:
                break
            target = te[si]
            landing = t + h >= target - 1e-13 * max(1.0, fabs(target))
            h_try = target - t if landing else h
            if h_try < h_min:
                break
            for i in range(NZ):
                ytmp[i] = y[i] + h_try * (A21 * k1[i])
            _rhs(ytmp, k2, w, omega12, g, g12)
            for i in range(NZ):
                ytmp[i] = y[i] + h_try * (A31 * k1[i] + A32 * k2[i])
            _rhs(ytmp, k3, w, omega12, g, g12)
            for i in range(NZ):
                ytmp[i] = y[i] + h_try * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
            _rhs(ytmp, k4, w, omega12, g, g12)
            for i in range(NZ):
                ytmp[i] = y[i] + h_try * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
            _rhs(ytmp, k5, w, omega12, g, g12)
            for i in range(NZ):
                ytmp[i] = y[i] + h_try * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i]
                                          + A64 * k4[i] + A65 * k5[i])
            _rhs(ytmp, k6, w, omega12, g, g12)
            for i in range(NZ):
                yn[i] = y[i] + h_try * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i]
                                        + A75 * k5[i] + A76 * k6[i])
            _rhs(yn, k7, w, omega12, g, g12)
            for i in range(NZ):
                errv[i] = (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i]
                           + E6 * k6[i] + E7 * k7[i])
            err = _maxabs_scaled(errv, y, yn, rtol, atol, h_try)
            if not isfinite(err):
                break
            if err <= 1.0:
                t = target if landing else t + h_try
                for i in range(NZ):
                    y[i] = yn[i]
                    k1[i] = k7[i]
                nsteps += 1
                if err == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * pow(err, -0.2)))
                if landing:
                    h = max(h, h_try * factor)
                    while si < n_eval and te[si] <= t:
                        for i in range(NZ):
                            out[si, i] = y[i]
                        si += 1
                else:
                    h = h_try * factor
            else:
                nrej += 1
                h = h_try * max(MIN_FACTOR, SAFETY * pow(err, -0.2))

    if si < n_eval:
        if nsteps + nrej > max_steps:
            raise IntegrationError(f"exceeded {max_steps} steps at t={t:.6g}")
        if not isfinite(err):
            raise IntegrationError(f"non-finite state at t={t:.6g}")
        raise StiffnessError(f"step size {h_try:.3e} below minimum at t={t:.6g}", t, h_try)
    return samples, nsteps, nrej
