"""End-to-end driver runs: CSV schemas, manifests, exit codes, determinism."""

import json
import math

import numpy as np
import pytest

from atomcav import TWO_PI, curvature_ratio, default_rb87_params, load_config
from atomcav.cli import main

FIG2_CFG = """
n_atoms = 3500
phi0_rad = 0.785398
omega_z_hz = 70e3
delta_ca_hz = -6e9
"""

BISTABLE_CFG = """
n_atoms = 5400
phi0_rad = 0.7853981633974483
omega_z_hz = 32e3
delta_ca_hz = -14e9
n_max = 1.5
"""

EMPTY_CFG = """
n_atoms = 0
omega_z_hz = 32e3
n_max = 0.9
"""


def write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [ln for ln in lines[1:] if not ln.startswith("#")]
    footer = [ln for ln in lines[1:] if ln.startswith("#")]
    data = np.array([[float(tok) for tok in ln.split(",")] for ln in rows])
    return header, data, footer


def test_shift_vs_position_end_to_end(tmp_path):
    cfg = write_cfg(tmp_path, FIG2_CFG)
    out = tmp_path / "out"
    rc = main(["shift-vs-position", "--config", cfg, "--out", str(out), "--steps", "121"])
    assert rc == 0
    header, data, footer = read_csv(out / "shift_vs_position.csv")
    assert header == ["z0_m", "shift_hz"]
    assert data.shape == (121, 2)
    # two beat periods by default
    assert data[-1, 0] == pytest.approx(2.0 * 5.07e-6, rel=1e-6)
    assert any("fit_period_m" in ln for ln in footer)
    assert any("fit_contrast" in ln for ln in footer)

    manifest = json.loads((out / "shift_vs_position_manifest.json").read_text())
    assert manifest["command"] == "shift_vs_position"
    assert "shift_vs_position.csv" in manifest["outputs"]
    assert manifest["fit"]["period_m"] == pytest.approx(5.07e-6, rel=0.01)
    assert manifest["fit"]["contrast"] == pytest.approx(0.794, abs=0.01)
    assert manifest["tolerances"]["tol_abs"] == 1e-10
    assert manifest["duration_s"] >= 0.0

    # the config snapshot reloads to the same parameters
    snap = (out / manifest["config_snapshot"]).read_text()
    p, e, d, o = load_config(snap)
    assert e.n_atoms == 3500
    assert e.phi0 == 0.785398


def test_shift_vs_position_zero_atoms_zero_column(tmp_path):
    cfg = write_cfg(tmp_path, "n_atoms = 0\n")
    out = tmp_path / "out"
    assert main(["shift-vs-position", "--config", cfg, "--out", str(out), "--steps", "31"]) == 0
    _, data, _ = read_csv(out / "shift_vs_position.csv")
    assert np.all(data[:, 1] == 0.0)


def test_csv_determinism(tmp_path):
    cfg = write_cfg(tmp_path, FIG2_CFG)
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["shift-vs-position", "--config", cfg, "--out", str(out), "--steps", "41"]) == 0
        outs.append(out)
    a = (outs[0] / "shift_vs_position.csv").read_bytes()
    b = (outs[1] / "shift_vs_position.csv").read_bytes()
    assert a == b
    # manifests agree apart from the clock
    ma = json.loads((outs[0] / "shift_vs_position_manifest.json").read_text())
    mb = json.loads((outs[1] / "shift_vs_position_manifest.json").read_text())
    for m in (ma, mb):
        m.pop("started_utc")
        m.pop("duration_s")
    assert ma == mb


def test_lineshape_two_traces_and_region(tmp_path):
    cfg = write_cfg(tmp_path, BISTABLE_CFG)
    out = tmp_path / "out"
    rc = main(["lineshape", "--config", cfg, "--out", str(out), "--steps", "101"])
    assert rc == 0
    header, data, _ = read_csv(out / "lineshape.csv")
    assert header == [
        "delta_pc_hz",
        "n_bar_up", "branch_up", "jump_up",
        "n_bar_down", "branch_down", "jump_down",
    ]
    assert data.shape == (101, 7)
    # detuning ascending, one jump per chirp, opposite fold edges
    assert np.all(np.diff(data[:, 0]) > 0.0)
    assert data[:, 3].sum() == 1.0
    assert data[:, 6].sum() == 1.0
    up_jump = data[data[:, 3] == 1.0, 0][0]
    down_jump = data[data[:, 6] == 1.0, 0][0]
    assert up_jump > down_jump
    manifest = json.loads((out / "lineshape_manifest.json").read_text())
    region = manifest["bistability_region_hz"]
    assert len(region) == 1
    lo, hi = region[0]
    assert lo < hi < 0.0  # well red of the bare resonance


def test_lineshape_empty_cavity_is_lorentzian(tmp_path):
    cfg = write_cfg(tmp_path, EMPTY_CFG)
    out = tmp_path / "out"
    assert main(["lineshape", "--config", cfg, "--out", str(out), "--steps", "81"]) == 0
    _, data, _ = read_csv(out / "lineshape.csv")
    p = default_rb87_params()
    delta = data[:, 0] * TWO_PI
    lorentz = 0.9 / (1.0 + (delta / p.kappa) ** 2)
    for col in (1, 4):
        assert np.max(np.abs(data[:, col] - lorentz) / lorentz) < 1e-8


def test_lineshape_single_chirp_columns(tmp_path):
    cfg = write_cfg(tmp_path, EMPTY_CFG)
    out = tmp_path / "out"
    rc = main([
        "lineshape", "--config", cfg, "--out", str(out),
        "--steps", "41", "--chirp", "down",
    ])
    assert rc == 0
    header, data, _ = read_csv(out / "lineshape.csv")
    assert header == ["delta_pc_hz", "n_bar_down", "branch_down", "jump_down"]
    assert data.shape == (41, 4)


def test_shift_vs_eta_long_format(tmp_path):
    cfg = write_cfg(tmp_path, FIG2_CFG)
    out = tmp_path / "out"
    rc = main(["shift-vs-eta", "--config", cfg, "--out", str(out), "--steps", "9"])
    assert rc == 0
    header, data, _ = read_csv(out / "shift_vs_eta.csv")
    assert header == ["phi0_rad", "n_bar", "eta", "eta_abs", "shift_hz"]
    assert data.shape == (27, 5)  # three probe phases by default
    assert set(np.round(data[:, 0], 6)) == {0.0, round(math.pi / 4.0, 6), round(math.pi / 2.0, 6)}
    # eta column is the curvature ratio at that photon number
    p, e, d, o = load_config(FIG2_CFG)
    for row in data[:5]:
        assert row[2] == pytest.approx(curvature_ratio(p, e, d, row[1]), rel=1e-9)
        assert row[3] == abs(row[2])
    # probe-induced shift vanishes with the drive
    dark = data[data[:, 1] == 0.0]
    assert np.all(dark[:, 4] == 0.0)
    # default range tops out near |eta| = 0.9
    assert data[:, 3].max() == pytest.approx(0.9, rel=1e-6)


def test_frequency_shifts_columns_and_delta_sweep(tmp_path):
    cfg = write_cfg(tmp_path, "n_atoms = 5400\nomega_z_hz = 32e3\ndelta_ca_hz = -14e9\nn_max = 0.1\n")
    out = tmp_path / "out"
    rc = main([
        "frequency-shifts", "--config", cfg, "--out", str(out), "--steps", "13",
        "--delta-range=-5.4e6:5.4e6", "--delta-steps", "25",
    ])
    assert rc == 0
    header, data, _ = read_csv(out / "frequency_shifts.csv")
    assert header == ["phi0_rad", "f_static_hz", "f_parametric_peak_hz", "f_linear_hz"]
    assert data.shape == (13, 4)
    assert np.allclose(data[:, 2], 2.0 * data[:, 1], rtol=1e-12)
    header2, data2, _ = read_csv(out / "frequency_shifts_delta_sweep.csv")
    assert header2 == ["delta_hz", "f_linear_hz"]
    assert data2.shape == (25, 2)
    manifest = json.loads((out / "frequency_shifts_manifest.json").read_text())
    assert sorted(manifest["outputs"]) == [
        "frequency_shifts.csv", "frequency_shifts_delta_sweep.csv",
    ]


def test_spectrum_psd_and_parametric(tmp_path):
    cfg = write_cfg(tmp_path, "n_atoms = 5400\nomega_z_hz = 32e3\ndelta_ca_hz = -14e9\nn_max = 0.1\n")
    out1 = tmp_path / "psd"
    rc = main(["spectrum", "--config", cfg, "--out", str(out1), "--steps", "801"])
    assert rc == 0
    header, data, _ = read_csv(out1 / "spectrum_psd.csv")
    assert header == ["freq_hz", "psd_rel"]
    assert data.shape == (801, 2)
    assert data[:, 1].max() == 1.0
    manifest = json.loads((out1 / "spectrum_manifest.json").read_text())
    assert manifest["peak_frequency_hz"] > 0.0

    out2 = tmp_path / "par"
    rc = main([
        "spectrum", "--config", cfg, "--out", str(out2), "--steps", "801",
        "--mode", "parametric",
    ])
    assert rc == 0
    header2, data2, _ = read_csv(out2 / "spectrum_parametric.csv")
    assert header2 == ["mod_freq_hz", "loss_fraction"]
    # peak sits at twice the parametric mode frequency
    m2 = json.loads((out2 / "spectrum_manifest.json").read_text())
    k = int(np.argmax(data2[:, 1]))
    assert m2["peak_frequency_hz"] == pytest.approx(data2[k, 0], rel=1e-12)


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["does-not-exist", "--config", "x"])
    assert exc.value.code == 2


def test_bad_range_exits_2(tmp_path):
    cfg = write_cfg(tmp_path, FIG2_CFG)
    with pytest.raises(SystemExit) as exc:
        main(["shift-vs-position", "--config", cfg, "--range", "nonsense"])
    assert exc.value.code == 2


def test_config_invariant_violation_exits_1(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "omega_z_hz = 0\n")
    assert main(["shift-vs-position", "--config", cfg, "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "omega_z" in err


def test_missing_config_exits_1(tmp_path, capsys):
    missing = str(tmp_path / "nope.cfg")
    assert main(["shift-vs-position", "--config", missing, "--out", str(tmp_path)]) == 1
    assert "config" in capsys.readouterr().err


def test_unknown_key_exits_1(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "frobnicate = 1\n")
    assert main(["lineshape", "--config", cfg, "--out", str(tmp_path)]) == 1
    assert "frobnicate" in capsys.readouterr().err
