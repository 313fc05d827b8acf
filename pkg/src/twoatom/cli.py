"""Command-line front end: ``twoatom MODE [options]``.

Parameters come from flags, a ``key = value`` config file, or a named
preset, in decreasing order of priority.  Exit status is 0 on success, 2 for
usage errors (including conflicting parameter sources) and 3 when the
integrator fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .entanglement import (
    approx_mixed_state,
    fidelity,
    steady_concurrence,
    to_product_basis,
    wootters_concurrence,
    x_state_concurrence_mixed,
    x_state_concurrence_pure,
)
from .errors import IntegrationError, SingularMatrixError, TwoAtomError
from .geometry import PairGeometry, collective_params
from .hamiltonian import SystemParams
from .master import (
    DEFAULT_TOL,
    X_INDEX,
    X_LABELS,
    StateVector15,
    evolve_array,
    steady_denominator,
    steady_state_closed_form,
    steady_state_numeric,
)
from .presets import PRESETS, get_preset
from .pure import CollectiveAmplitudes, amplitudes_from_ground, coherences_from_ground, pure_concurrence

MODES = ("geom", "pure", "master", "steady", "sweep", "fidelity")
FORMATS = ("csv", "json")
OUTPUT_DIR_ENV = "TWOATOM_OUTPUT_DIR"
SWEEPABLE = ("omega0", "omega12", "gamma12")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTEGRATION = 3

_CONFIG_KEYS = {
    "mode": str,
    "omega0": float,
    "omega12": float,
    "gamma12": float,
    "r12": float,
    "theta": float,
    "tmax": float,
    "samples": int,
    "tol": float,
    "preset": str,
    "out": str,
    "format": str,
    "jobs": int,
    "sweep": str,
}


class UsageError(TwoAtomError):
    pass


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    @classmethod
    def parse(cls, text: str) -> SweepAxis:
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError(f"sweep axis must look like name:start:stop:count, got {text!r}")
        name = parts[0].strip()
        if name not in SWEEPABLE:
            raise UsageError(f"cannot sweep {name!r}; choose from {', '.join(SWEEPABLE)}")
        try:
            start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError as exc:
            raise UsageError(f"bad sweep axis {text!r}: {exc}") from None
        if count < 1:
            raise UsageError("sweep axis needs at least one point")
        return cls(name, start, stop, count)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    params: SystemParams
    geometry: PairGeometry | None = None
    t_max: float = 5.0
    n_samples: int = 1001
    tol: float = DEFAULT_TOL
    output_path: str | None = None
    output_format: str = "csv"
    preset: str | None = None
    sweep: tuple = field(default_factory=tuple)
    jobs: int = 1

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_samples)

    def metadata(self) -> dict:
        meta = {
            "mode": self.mode,
            "preset": self.preset,
            "omega0": self.params.omega0,
            "omega12": self.params.omega12,
            "gamma12": self.params.gamma12,
            "tmax": self.t_max,
            "samples": self.n_samples,
            "tol": self.tol,
            "version": __version__,
        }
        if self.geometry is not None:
            meta["r12"] = self.geometry.separation_over_wavelength
            meta["theta"] = self.geometry.theta
        if self.sweep:
            meta["sweep"] = [f"{a.name}:{a.start!r}:{a.stop!r}:{a.count}" for a in self.sweep]
        return meta


@dataclass
class Table:
    columns: list
    rows: list


def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` file; ``sweep`` may repeat."""
    values: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            converted = _CONFIG_KEYS[key](value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
        if key == "sweep":
            values.setdefault("sweep", []).append(converted)
        else:
            values[key] = converted
    return values


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twoatom",
        description="Driven dipole-coupled atom pair: dynamics, entanglement and steady state.",
    )
    ap.add_argument("mode", nargs="?", choices=MODES, help="what to compute (defaults to the preset's mode)")
    ap.add_argument("--omega0", type=float, help="Rabi frequency")
    ap.add_argument("--omega12", type=float, help="dipole-dipole shift")
    ap.add_argument("--gamma12", type=float, help="collective decay rate")
    ap.add_argument("--r12", type=float, help="separation in wavelengths (replaces --omega12/--gamma12)")
    ap.add_argument("--theta", type=float, help="dipole angle to the interatomic axis, radians")
    ap.add_argument("--tmax", type=float, help="final time")
    ap.add_argument("--samples", type=int, help="number of time samples")
    ap.add_argument("--tol", type=float, help="integrator tolerance")
    ap.add_argument("--preset", help=f"figure preset: {', '.join(PRESETS)}")
    ap.add_argument("--out", help="output file (default: stdout, or $%s/<name>.<format>)" % OUTPUT_DIR_ENV)
    ap.add_argument("--format", choices=FORMATS, help="output format (default csv)")
    ap.add_argument("--config", help="key = value parameter file")
    ap.add_argument(
        "--sweep",
        action="append",
        metavar="NAME:START:STOP:N",
        help="swept parameter for the sweep mode; give once or twice",
    )
    ap.add_argument("--jobs", type=int, help="worker processes for sweeps")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def resolve(args: argparse.Namespace) -> RunConfig:
    values = read_config(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    preset = None
    if "preset" in values:
        try:
            preset = get_preset(values["preset"])
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None

    mode = values.get("mode") or (preset.mode if preset else None)
    if mode is None:
        raise UsageError("no mode given; pass one of " + ", ".join(MODES) + " or --preset")
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}")

    has_geometry = "r12" in values or "theta" in values
    if has_geometry and ("omega12" in values or "gamma12" in values):
        raise UsageError("give either --r12/--theta or --omega12/--gamma12, not both")
    if "theta" in values and "r12" not in values:
        raise UsageError("--theta requires --r12")

    geometry = None
    if "r12" in values:
        try:
            geometry = PairGeometry(values["r12"], values.get("theta", math.pi / 2))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cp = collective_params(geometry)
        omega12, gamma12 = cp.omega12, cp.gamma12
    elif "omega12" in values or preset is not None:
        omega12 = values.get("omega12", preset.omega12 if preset else 0.0)
        gamma12 = values.get("gamma12", preset.gamma12 if preset else 0.0)
    elif mode == "sweep" and any(SweepAxis.parse(s).name == "omega12" for s in values.get("sweep", [])):
        omega12, gamma12 = 0.0, values.get("gamma12", 0.0)
    else:
        raise UsageError("no coupling given; pass --omega12 [--gamma12], --r12 or --preset")
    if mode == "geom" and geometry is None:
        raise UsageError("geom needs --r12 (and optionally --theta)")

    omega0 = values.get("omega0", preset.omega0 if preset else 10.0)
    try:
        params = SystemParams(omega0, omega12, gamma12)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    t_max = values.get("tmax", preset.tmax if preset else 5.0)
    n_samples = values.get("samples", preset.samples if preset else 1001)
    tol = values.get("tol", DEFAULT_TOL)
    if not (math.isfinite(t_max) and t_max > 0):
        raise UsageError("tmax must be positive")
    if n_samples < 2:
        raise UsageError("samples must be at least 2")
    if not (math.isfinite(tol) and tol > 0):
        raise UsageError("tol must be positive")
    fmt = values.get("format", "csv")
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}")

    sweep = tuple(SweepAxis.parse(s) for s in values.get("sweep", []))
    if mode == "sweep" and not 1 <= len(sweep) <= 2:
        raise UsageError("sweep needs one or two --sweep axes")
    if len({a.name for a in sweep}) != len(sweep):
        raise UsageError("each parameter can be swept only once")
    jobs = values.get("jobs", 1)
    if jobs < 1:
        raise UsageError("jobs must be at least 1")

    return RunConfig(
        mode=mode,
        params=params,
        geometry=geometry,
        t_max=float(t_max),
        n_samples=int(n_samples),
        tol=float(tol),
        output_path=values.get("out"),
        output_format=fmt,
        preset=preset.name if preset else None,
        sweep=sweep,
        jobs=jobs,
    )


def _re_im(prefix, z):
    return [f"re_{prefix}", f"im_{prefix}"], [z.real, z.imag]


def run_pure(cfg: RunConfig) -> Table:
    columns = ["t", "C", "C_x", "abs2_cg", "abs2_ce", "abs2_cs"]
    for name in ("rho_gs", "rho_es", "rho_ge"):
        columns += [f"re_{name}", f"im_{name}"]
    rows = []
    for t in cfg.times():
        a = amplitudes_from_ground(cfg.params, t)
        row = [t, pure_concurrence(a), x_state_concurrence_pure(a)]
        row += [abs(a.c_g) ** 2, abs(a.c_e) ** 2, abs(a.c_s) ** 2]
        for z in coherences_from_ground(cfg.params, t):
            row += [z.real, z.imag]
        rows.append(row)
    return Table(columns, rows)


def _trajectory(cfg: RunConfig):
    samples = evolve_array(None, cfg.params, cfg.times(), tol=cfg.tol)
    return [StateVector15.from_array(z).to_density_matrix() for z in samples]


def _approx_concurrence(a: CollectiveAmplitudes, rho_aa: float) -> float:
    # round-off can push a vanishing population slightly negative
    if -1e-12 < rho_aa < 0:
        rho_aa = 0.0
    if not 0.0 <= rho_aa <= 0.25:
        return math.nan
    return wootters_concurrence(to_product_basis(approx_mixed_state(a, rho_aa)))


def run_master(cfg: RunConfig) -> Table:
    columns = ["t"]
    for label in X_LABELS:
        columns += [f"re_rho_{label}", f"im_rho_{label}"]
    columns += ["C_wootters", "C_x", "fidelity", "purity", "C_pure", "C_approx"]
    rows = []
    for t, rho in zip(cfg.times(), _trajectory(cfg)):
        m = rho.data
        row = [t]
        for i, j in X_INDEX:
            row += [m[i, j].real, m[i, j].imag]
        a = amplitudes_from_ground(cfg.params, t)
        row += [
            wootters_concurrence(to_product_basis(rho)),
            x_state_concurrence_mixed(rho),
            fidelity(rho),
            rho.purity(),
            pure_concurrence(a),
            _approx_concurrence(a, m[3, 3].real),
        ]
        rows.append(row)
    return Table(columns, rows)


def run_fidelity(cfg: RunConfig) -> Table:
    rows = [[t, fidelity(rho)] for t, rho in zip(cfg.times(), _trajectory(cfg))]
    return Table(["t", "F"], rows)


def run_steady(cfg: RunConfig) -> Table:
    p = cfg.params
    closed = steady_state_closed_form(p)
    try:
        numeric = steady_state_numeric(p).data
    except SingularMatrixError as exc:
        print(f"twoatom: warning: {exc}", file=sys.stderr)
        numeric = np.full((4, 4), complex(math.nan, math.nan))
    report = steady_concurrence(p)
    columns = ["omega0", "omega12", "gamma12", "D"]
    row = [p.omega0, p.omega12, p.gamma12, steady_denominator(p)]
    for tag, m in (("closed", closed.data), ("numeric", numeric)):
        for label, (i, j) in zip(X_LABELS, X_INDEX):
            names, vals = _re_im(f"{tag}_rho_{label}", m[i, j])
            columns += names
            row += vals
    columns += ["C_steady", "C_wootters", "threshold_margin", "above_threshold"]
    row += [
        report.value,
        wootters_concurrence(to_product_basis(closed)),
        report.threshold_margin,
        report.above_threshold,
    ]
    return Table(columns, [row])


def _sweep_point(point):
    omega0, omega12, gamma12 = point
    rep = steady_concurrence(SystemParams(omega0, omega12, gamma12))
    return rep.value, rep.threshold_margin, rep.above_threshold


def run_sweep(cfg: RunConfig) -> Table:
    base = {"omega0": cfg.params.omega0, "omega12": cfg.params.omega12, "gamma12": cfg.params.gamma12}
    grid = list(itertools.product(*(a.values() for a in cfg.sweep)))
    points = []
    for combo in grid:
        vals = dict(base)
        vals.update({a.name: float(v) for a, v in zip(cfg.sweep, combo)})
        points.append((vals["omega0"], vals["omega12"], vals["gamma12"]))
    # validate up front so bad grids fail as usage errors before any work
    for pt in points:
        try:
            SystemParams(*pt)
        except ValueError as exc:
            raise UsageError(f"sweep point {pt}: {exc}") from None
    if cfg.jobs > 1 and len(points) > 1:
        chunk = max(1, len(points) // (4 * cfg.jobs))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_sweep_point, points, chunksize=chunk))
    else:
        results = [_sweep_point(pt) for pt in points]

    inner = cfg.sweep[-1].count
    columns = ["omega0", "omega12", "gamma12", "C_steady", "threshold_margin", "above_threshold", "threshold_crossing"]
    rows = []
    for k, (pt, (value, margin, above)) in enumerate(zip(points, results)):
        # crossing: threshold status differs from the previous point on the fastest axis
        crossing = k % inner != 0 and above != results[k - 1][2]
        rows.append([*pt, value, margin, above, crossing])
    return Table(columns, rows)


def geom_summary(cfg: RunConfig) -> tuple[str, Table]:
    g = cfg.geometry
    p = cfg.params
    text = (
        f"r12/lambda = {g.separation_over_wavelength!r}\n"
        f"theta = {g.theta!r}\n"
        f"omega12 = {p.omega12:.10g}\n"
        f"gamma12 = {p.gamma12:.10g}\n"
        f"note: figure captions quote twice this shift; 2 x omega12 = {2 * p.omega12:.10g}\n"
    )
    table = Table(
        ["r12", "theta", "omega12", "gamma12", "omega12_caption"],
        [[g.separation_over_wavelength, g.theta, p.omega12, p.gamma12, 2 * p.omega12]],
    )
    return text, table


def _csv_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17e")


def _json_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else None


def render(table: Table, fmt: str, metadata: dict) -> str:
    if fmt == "json":
        rows = [dict(zip(table.columns, map(_json_cell, r))) for r in table.rows]
        return json.dumps({"metadata": metadata, "rows": rows}, indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for r in table.rows:
        writer.writerow([_csv_cell(v) for v in r])
    return buf.getvalue()


def _destination(cfg: RunConfig) -> str | None:
    if cfg.output_path:
        return cfg.output_path
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        return os.path.join(out_dir, f"{cfg.preset or cfg.mode}.{cfg.output_format}")
    return None


def _emit(text: str, path: str | None, stdout) -> None:
    if path is None:
        stdout.write(text)
        return
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


RUNNERS = {
    "pure": run_pure,
    "master": run_master,
    "fidelity": run_fidelity,
    "steady": run_steady,
    "sweep": run_sweep,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    if cfg.mode == "geom":
        text, table = geom_summary(cfg)
        stdout.write(text)
        if cfg.output_path:
            _emit(render(table, cfg.output_format, cfg.metadata()), cfg.output_path, stdout)
        return EXIT_OK
    table = RUNNERS[cfg.mode](cfg)
    _emit(render(table, cfg.output_format, cfg.metadata()), _destination(cfg), stdout)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(resolve(args))
    except UsageError as exc:
        print(f"twoatom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(f"twoatom: integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK
