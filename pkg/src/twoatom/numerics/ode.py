"""Dormand-Prince 5(4) adaptive integrator for complex vector ODEs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import IntegrationError, StiffnessError

# Dormand & Prince (1980); 5th-order solution propagated (local extrapolation), FSAL.
C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
B = np.array(A[6] + [0.0])
# difference between the 5th- and 4th-order weights
E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
ORDER = 5


def _max_norm(v):
    return float(np.max(np.abs(v))) if v.size else 0.0


def initial_step(rhs, t0, y0, f0, direction, rtol, atol):
    """Starting step size estimate (Hairer, Norsett & Wanner, II.4)."""
    scale = atol + rtol * np.abs(y0)
    d0 = _max_norm(y0 / scale)
    d1 = _max_norm(f0 / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + direction * h0 * f0
    f1 = rhs(t0 + direction * h0, y1)
    d2 = _max_norm((f1 - f0) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / ORDER)
    return min(100 * h0, h1)


def next_step_factor(err):
    if err == 0.0:
        return MAX_FACTOR
    return min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * err ** (-1.0 / ORDER)))


@dataclass
class OdeSolution:
    """Accepted steps of an adaptive run plus samples on the requested grid.

    Calling the object evaluates the cubic Hermite interpolant built from the
    step endpoints and their derivatives.
    """

    t: np.ndarray
    y: np.ndarray
    f: np.ndarray
    t_eval: np.ndarray | None = None
    y_eval: np.ndarray | None = None
    nfev: int = 0
    nsteps: int = 0
    nrejected: int = 0
    stats: dict = field(default_factory=dict)

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty((t.size, self.y.shape[1]), dtype=self.y.dtype)
        idx = np.clip(np.searchsorted(self.t, t, side="right") - 1, 0, len(self.t) - 2)
        for n, (tq, i) in enumerate(zip(t, idx)):
            out[n] = hermite_cubic(
                self.t[i], self.t[i + 1], self.y[i], self.y[i + 1], self.f[i], self.f[i + 1], tq
            )
        return out


def hermite_cubic(t0, t1, y0, y1, f0, f1, t):
    h = t1 - t0
    s = (t - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


def integrate_adaptive(
    rhs,
    y0,
    t_span,
    rtol=1e-9,
    atol=1e-9,
    t_eval=None,
    h0=None,
    h_min=None,
    max_steps=10_000_000,
):
    """Integrate ``y' = rhs(t, y)`` with an embedded 5(4) Runge-Kutta pair.

    Parameters
    ----------
    rhs : callable
        ``rhs(t, y) -> dy/dt`` on 1-D (real or complex) arrays.
    y0 : array_like
        Initial state.
    t_span : (float, float)
        Integration interval; ``t_span[1] > t_span[0]``.
    rtol, atol : float
        Per-step error control: every accepted step satisfies
        ``max_i |err_i| / (atol + rtol * max(|y_i|, |y_new_i|)) <= 1``.
    t_eval : array_like, optional
        Sorted sample times inside ``t_span``.  Steps are shortened so that
        each sample is an accepted step endpoint, so samples carry the full
        step accuracy rather than the interpolation error.

    Returns
    -------
    OdeSolution

    Raises
    ------
    StiffnessError
        If the step size drops below ``h_min``.
    IntegrationError
        If the state becomes non-finite or ``max_steps`` is exceeded.
    """
    t0, t1 = map(float, t_span)
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    y = np.array(y0, dtype=complex if np.iscomplexobj(y0) else float).ravel()
    if t_eval is None:
        stops = np.array([t1])
        keep_eval = False
    else:
        stops = np.asarray(t_eval, dtype=float)
        if np.any(np.diff(stops) < 0) or stops[0] < t0 or stops[-1] > t1:
            raise ValueError("t_eval must be sorted and inside t_span")
        keep_eval = True
        if stops[-1] < t1:
            stops = np.append(stops, t1)

    t = t0
    f = np.asarray(rhs(t, y))
    nfev = 1
    if h0 is None:
        h = initial_step(rhs, t, y, f, 1.0, rtol, atol)
        nfev += 1
    else:
        h = float(h0)
    if h_min is None:
        h_min = 1e-14 * max(1.0, abs(t0), abs(t1))

    ts, ys, fs = [t], [y.copy()], [f.copy()]
    y_eval = []
    nsteps = nrejected = 0
    k = np.empty((7, y.size), dtype=y.dtype)
    stop_i = 0
    while stop_i < len(stops) and stops[stop_i] <= t:
        if keep_eval and stop_i < len(t_eval):
            y_eval.append(y.copy())
        stop_i += 1

    while stop_i < len(stops):
        target = stops[stop_i]
        if nsteps + nrejected > max_steps:
            raise IntegrationError(f"exceeded {max_steps} steps at t={t:.6g}")
        landing = t + h >= target - 1e-13 * max(1.0, abs(target))
        h_try = target - t if landing else h
        if h_try < h_min:
            raise StiffnessError(f"step size {h_try:.3e} below minimum at t={t:.6g}", t, h_try)

        k[0] = f
        for i in range(1, 7):
            yi = y + h_try * np.tensordot(A[i], k[:i], axes=1)
            k[i] = rhs(t + C[i] * h_try, yi)
        nfev += 6
        y_new = yi  # stage 7 is evaluated at the 5th-order solution (FSAL)
        err_vec = h_try * np.tensordot(E, k, axes=1)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = _max_norm(err_vec / scale)
        if not np.isfinite(err):
            raise IntegrationError(f"non-finite state at t={t:.6g}")

        if err <= 1.0:
            t = target if landing else t + h_try
            y = y_new
            f = k[6].copy()
            nsteps += 1
            ts.append(t)
            ys.append(y.copy())
            fs.append(f.copy())
            factor = next_step_factor(err)
            # a landing step may be artificially short; do not let it shrink h
            h = max(h, h_try * factor) if landing else h_try * factor
            if landing:
                if keep_eval and stop_i < len(t_eval):
                    y_eval.append(y.copy())
                stop_i += 1
                while stop_i < len(stops) and stops[stop_i] <= t:
                    if keep_eval and stop_i < len(t_eval):
                        y_eval.append(y.copy())
                    stop_i += 1
        else:
            nrejected += 1
            h = h_try * max(MIN_FACTOR, SAFETY * err ** (-1.0 / ORDER))

    return OdeSolution(
        t=np.array(ts),
        y=np.array(ys),
        f=np.array(fs),
        t_eval=None if t_eval is None else np.asarray(t_eval, dtype=float),
        y_eval=np.array(y_eval) if keep_eval else None,
        nfev=nfev,
        nsteps=nsteps,
        nrejected=nrejected,
    )
