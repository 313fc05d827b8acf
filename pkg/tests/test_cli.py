import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from twoatom import cli
from twoatom.errors import IntegrationError
from twoatom.presets import PRESETS


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return {name: np.array([float(r[k]) for r in body]) for k, name in enumerate(header)}


def test_geom_prints_collective_parameters(capsys):
    code, out, _ = run_cli(["geom", "--r12", "0.06", "--theta", "1.570796"], capsys)
    assert code == 0
    values = dict(line.split(" = ") for line in out.splitlines() if " = " in line and ":" not in line)
    assert float(values["gamma12"]) == pytest.approx(0.97, abs=0.005)
    assert float(values["omega12"]) == pytest.approx(13.11, abs=0.01)
    assert "twice" in out


def test_geom_json_to_file(tmp_path, capsys):
    out_file = tmp_path / "g.json"
    code, _, _ = run_cli(["geom", "--r12", "0.06", "--format", "json", "--out", str(out_file)], capsys)
    assert code == 0
    row = json.loads(out_file.read_text())["rows"][0]
    assert row["omega12_caption"] == pytest.approx(26.22, abs=0.01)


def test_fig2_n1_peaks_at_bell_time(capsys):
    code, out, _ = run_cli(["--preset", "fig2-n1"], capsys)
    assert code == 0
    data = parse_csv(out)
    p = PRESETS["fig2-n1"]
    k = int(np.argmin(np.abs(data["t"] - math.pi / p.omega12)))
    assert data["t"][k] == pytest.approx(math.pi / p.omega12, abs=1e-12)
    assert data["C"][k] == pytest.approx(1.0, abs=1e-6)
    assert data["C"].max() == pytest.approx(1.0, abs=1e-6)
    assert np.all(data["C_x"] <= data["C"] + 1e-9)


def test_pure_columns(capsys):
    code, out, _ = run_cli(["pure", "--omega12", "5", "--samples", "3", "--tmax", "1"], capsys)
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header == [
        "t", "C", "C_x", "abs2_cg", "abs2_ce", "abs2_cs",
        "re_rho_gs", "im_rho_gs", "re_rho_es", "im_rho_es", "re_rho_ge", "im_rho_ge",
    ]
    assert len(out.splitlines()) == 4
    # full double precision in scientific notation
    assert out.splitlines()[2].split(",")[0] == "5.00000000000000000e-01"


def test_fig11_steady_concurrence(capsys):
    code, out, _ = run_cli(["--preset", "fig11"], capsys)
    assert code == 0
    data = parse_csv(out)
    assert data["C_wootters"][-1] == pytest.approx(0.0188, abs=1e-4)
    assert data["fidelity"][-1] == pytest.approx(0.502, abs=1e-3)
    assert np.all(data["C_x"] <= data["C_wootters"] + 1e-9)


def test_master_columns(capsys):
    code, out, _ = run_cli(["master", "--omega12", "11", "--gamma12", "0.5", "--tmax", "1", "--samples", "11"], capsys)
    assert code == 0
    data = parse_csv(out)
    for label in ("ee", "ss", "aa", "ge", "eg", "es", "se", "gs", "sg"):
        assert f"re_rho_{label}" in data and f"im_rho_{label}" in data
    for name in ("C_wootters", "C_x", "fidelity", "purity", "C_pure", "C_approx"):
        assert name in data
    assert data["purity"][0] == pytest.approx(1.0)


def test_fidelity_mode(capsys):
    code, out, _ = run_cli(["--preset", "fig12", "--tmax", "50", "--samples", "101"], capsys)
    assert code == 0
    data = parse_csv(out)
    assert list(data) == ["t", "F"]
    assert data["F"][0] == pytest.approx(0.5)


def test_steady_row(capsys):
    code, out, _ = run_cli(["steady", "--omega12", "26.22", "--gamma12", "0.97"], capsys)
    assert code == 0
    data = parse_csv(out)
    assert data["C_steady"][0] == pytest.approx(data["C_wootters"][0], abs=1e-8)
    assert data["D"][0] == pytest.approx(3291.3693, abs=1e-3)
    assert data["above_threshold"][0] == 1
    assert data["re_numeric_rho_ee"][0] == pytest.approx(data["re_closed_rho_ee"][0], abs=1e-10)


def test_steady_dicke_limit_reports_nan(capsys):
    code, out, err = run_cli(["steady", "--omega12", "5", "--gamma12", "1"], capsys)
    assert code == 0
    assert "warning" in err
    assert math.isnan(parse_csv(out)["re_numeric_rho_ee"][0])


def test_sweep_threshold_crossing(capsys):
    code, out, _ = run_cli(
        ["sweep", "--omega12", "26.22", "--gamma12", "0.97", "--sweep", "omega0:0:20:201"], capsys
    )
    assert code == 0
    data = parse_csv(out)
    assert len(data["omega0"]) == 201
    crossings = np.flatnonzero(data["threshold_crossing"])
    assert len(crossings) == 1
    threshold = math.sqrt(4 * abs(complex(0.97, 26.22)))
    k = crossings[0]
    assert data["omega0"][k - 1] < threshold <= data["omega0"][k]


def test_sweep_two_axes_parallel_matches_serial(capsys):
    argv = ["sweep", "--gamma12", "0.5", "--sweep", "omega0:1:20:7", "--sweep", "omega12:0:30:5"]
    _, serial, _ = run_cli(argv, capsys)
    code, parallel, _ = run_cli(argv + ["--jobs", "2"], capsys)
    assert code == 0
    assert serial == parallel
    data = parse_csv(serial)
    assert len(data["omega0"]) == 35
    # first axis varies slowest
    assert np.all(data["omega0"][:5] == 1.0)
    assert not np.any(data["threshold_crossing"][::5])


def test_sweep_rejects_unphysical_points(capsys):
    code, _, err = run_cli(["sweep", "--omega12", "1", "--sweep", "gamma12:0:2:3"], capsys)
    assert code == 2
    assert "gamma12" in err


def test_json_mirrors_csv(capsys):
    argv = ["pure", "--omega12", "7", "--samples", "5", "--tmax", "1"]
    _, text, _ = run_cli(argv, capsys)
    _, js, _ = run_cli(argv + ["--format", "json"], capsys)
    doc = json.loads(js)
    assert doc["metadata"]["omega12"] == 7.0
    assert doc["metadata"]["version"]
    data = parse_csv(text)
    assert list(doc["rows"][0]) == list(data)
    for k, row in enumerate(doc["rows"]):
        for name, value in row.items():
            assert value == data[name][k]


def test_output_is_deterministic(tmp_path, capsys):
    argv = ["master", "--omega12", "11", "--gamma12", "0.9", "--tmax", "2", "--samples", "21"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(argv + ["--out", str(a)]) == 0
    assert cli.main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_output_directory_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "runs"))
    code, out, _ = run_cli(["--preset", "fig3a", "--samples", "11"], capsys)
    assert code == 0 and out == ""
    assert (tmp_path / "runs" / "fig3a.csv").exists()


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# steady state near the figure parameters\n"
        "mode = steady\n"
        "omega0 = 10   # Rabi frequency\n"
        "omega12 = 26.22\n"
        "gamma12 = 0.5\n"
    )
    _, out, _ = run_cli(["--config", str(cfg)], capsys)
    assert parse_csv(out)["gamma12"][0] == 0.5
    _, out, _ = run_cli(["--config", str(cfg), "--gamma12", "0.97"], capsys)
    assert parse_csv(out)["gamma12"][0] == 0.97


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert cli.main(["steady", "--config", str(bad)]) == 2
    bad.write_text("omega0 ten\n")
    assert cli.main(["steady", "--config", str(bad)]) == 2
    assert cli.main(["steady", "--config", str(tmp_path / "missing.cfg")]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["steady", "--omega12", "1", "--r12", "0.1"],
        ["steady", "--gamma12", "0.2", "--theta", "1.0", "--r12", "0.1"],
        ["steady", "--theta", "1.0"],
        ["geom", "--omega12", "3"],
        ["pure"],
        ["--omega12", "3"],
        ["pure", "--omega12", "3", "--samples", "1"],
        ["pure", "--omega12", "3", "--tmax", "0"],
        ["steady", "--omega12", "3", "--gamma12", "1.5"],
        ["sweep", "--omega12", "3"],
        ["sweep", "--omega12", "3", "--sweep", "tmax:0:1:3"],
        ["--preset", "fig99"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run_cli(argv, capsys)
    assert code == 2
    assert err.startswith("twoatom: error:")


def test_conflicting_sources_across_config_and_flags(tmp_path, capsys):
    cfg = tmp_path / "geo.cfg"
    cfg.write_text("r12 = 0.06\n")
    code, _, _ = run_cli(["steady", "--config", str(cfg), "--omega12", "3"], capsys)
    assert code == 2


def test_integration_failure_exit_3(monkeypatch, capsys):
    def boom(*a, **k):
        raise IntegrationError("step size underflow at t=1.0")

    monkeypatch.setattr(cli, "evolve_array", boom)
    code, out, err = run_cli(["master", "--omega12", "3"], capsys)
    assert code == 3
    assert out == ""
    assert "step size underflow" in err


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_preset_runs(name, tmp_path, capsys):
    out_file = tmp_path / f"{name}.csv"
    assert cli.main(["--preset", name, "--out", str(out_file)]) == 0
    data = parse_csv(out_file.read_text())
    assert len(data["t"]) == PRESETS[name].samples


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "twoatom", "geom", "--r12", "0.06"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "omega12" in res.stdout
