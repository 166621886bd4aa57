"""Config parsing, snapshot containers, CLI round trips."""

import numpy as np
import pytest

from diracnull import io as dio
from diracnull.cli import main
from diracnull.oracles import minkowski_state, pulse_free_data
from diracnull.sphere import make_grid

CFG = """
[domain]
u_extent = 0.04
v_extent = 0.6

[grid]
n = 17
overlap = 3
n_u = 4
n_v = 8

[matter]
mass = 0.5
free_data = minkowski
r0 = 2.0
amplitude = 0.002

[output]
outdir = {out}
diagnostics_cadence = 2
snapshot_cadence = 2

[tolerances]
q_floor = 1e-8
reality_tol = 1e-6
"""


def test_parse_minimal_defaults():
    cfg = dio.parse_config("[domain]\nu_extent = 0.1\nv_extent = 1.0\n")
    assert cfg.n_u >= 4 and cfg.n == 17


def test_parse_round_trip():
    cfg = dio.parse_config(CFG.format(out="x"))
    again = dio.parse_config(dio.serialize_config(cfg))
    assert again == cfg


def test_parse_rejects_unknowns_and_bad_values():
    with pytest.raises(dio.ConfigError):
        dio.parse_config("[grid]\nbogus = 3\n")
    with pytest.raises(dio.ConfigError):
        dio.parse_config("[nowhere]\nn = 3\n")
    with pytest.raises(dio.ConfigError):
        dio.parse_config("[grid]\nn_u = 0\n")
    with pytest.raises(dio.ConfigError):
        dio.parse_config("[grid]\nn = elephant\n")


def test_snapshot_bitwise_roundtrip(tmp_path, grid17):
    sl = minkowski_state(grid17, 2.0, 0.03, np.linspace(0, 1, 5), 1.0)
    sl.fields["phi0"][:] = 1.25 - 0.5j
    dio.write_snapshot(tmp_path / "snap", sl)
    back = dio.read_snapshot(tmp_path / "snap")
    assert back.u == sl.u and back.mass == sl.mass
    for name, arr in sl.fields.items():
        assert np.array_equal(back.fields[name], arr), name


def test_snapshot_checksum_and_shape_errors(tmp_path, grid17):
    sl = minkowski_state(grid17, 2.0, 0.0, [0.0, 0.5], 1.0)
    dio.write_snapshot(tmp_path / "snap", sl)
    blob = (tmp_path / "snap" / "data.bin").read_bytes()
    (tmp_path / "snap" / "data.bin").write_bytes(blob[:-16])
    with pytest.raises(dio.SnapshotError):
        dio.read_snapshot(tmp_path / "snap")
    # shape mismatch: doctor the manifest
    import json
    dio.write_snapshot(tmp_path / "snap2", sl)
    man = json.loads((tmp_path / "snap2" / "manifest.json").read_text())
    man["variables"]["rho"]["shape"] = [1, 2, 17, 17]
    (tmp_path / "snap2" / "manifest.json").write_text(json.dumps(man))
    with pytest.raises(dio.SnapshotError):
        dio.read_snapshot(tmp_path / "snap2")


def test_free_data_container_roundtrip(tmp_path, grid17):
    free = pulse_free_data(grid17, 2.0, 0.6, 0.05, 1.0, 3e-3)
    dio.write_free_data(tmp_path / "free", free, 4, 8)
    back = dio.read_free_data(tmp_path / "free")
    assert back.mass == free.mass
    # exact at sample nodes, 4th-order interpolation between them
    t_node = 0.6 / 8 * 3
    assert np.abs(back.phi0(t_node) - free.phi0(t_node)).max() < 1e-15
    t = 0.31
    assert np.abs(back.phi0(t) - free.phi0(t)).max() < 1e-4
    assert np.abs(back.corner["P"] - free.corner["P"]).max() == 0.0


def test_free_data_corrupt_manifest(tmp_path, grid17):
    free = pulse_free_data(grid17, 2.0, 0.6, 0.05, 1.0, 3e-3)
    dio.write_free_data(tmp_path / "free", free, 4, 8)
    (tmp_path / "free" / "manifest.json").write_text("{broken")
    with pytest.raises(dio.SnapshotError):
        dio.read_free_data(tmp_path / "free")


def test_cli_audit(capsys):
    assert main(["audit"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "unweighted" in out and "Deltaepsilon" in out


def test_cli_end_to_end(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text(CFG.format(out=tmp_path / "run"))
    assert main(["idata", "--config", str(cfgfile),
                 "--out", str(tmp_path / "run")]) == 0
    assert main(["evolve", "--config", str(cfgfile),
                 "--out", str(tmp_path / "run")]) == 0
    assert (tmp_path / "run" / "diagnostics.csv").exists()
    assert (tmp_path / "run" / "diagnostics_columns.txt").exists()
    assert main(["oracle", "--config", str(cfgfile),
                 "--out", str(tmp_path / "run")]) == 0
    assert (tmp_path / "run" / "oracle" / "constants.txt").exists()
    assert main(["diagnose", "--run", str(tmp_path / "run")]) == 0
    out = capsys.readouterr().out
    assert "largest equation residual" in out
    figs = list((tmp_path / "run").glob("*.png"))
    assert figs, "report figures missing"


def test_cli_diagnose_oracle_residuals(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    text = CFG.format(out=tmp_path / "o").replace("r0 = 2.0", "r0 = 10.0")
    text = text.replace("n_v = 8", "n_v = 16")
    cfgfile.write_text(text)
    assert main(["oracle", "--config", str(cfgfile),
                 "--out", str(tmp_path / "o")]) == 0
    assert main(["diagnose", "--run", str(tmp_path / "o" / "oracle"),
                 "--no-figures"]) == 0
    out = capsys.readouterr().out
    worst = float(out.rsplit("largest equation residual:", 1)[1].split()[0])
    assert worst < 1e-8


def test_determinism_bitwise(tmp_path, grid17):
    # identical config and free data give bitwise-identical snapshots
    from diracnull.evolve import RunConfig, evolve
    from diracnull.idata import assemble_cone_data
    from diracnull.oracles import pulse_free_data

    def one(run_dir):
        cfg = RunConfig(n=17, overlap=3, n_u=3, n_v=6, u_extent=0.03,
                        v_extent=0.5, mass=1.0, r0=2.0)
        free = pulse_free_data(grid17, 2.0, 0.5, 0.03, 1.0, 3e-3)
        cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
        run = evolve(cfg, cones)
        dio.write_snapshot(run_dir, run.final_slice)
        return (run_dir / "data.bin").read_bytes()

    assert one(tmp_path / "a") == one(tmp_path / "b")


def test_cli_corrupt_free_container(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text(CFG.format(out=tmp_path / "run"))
    bad = tmp_path / "badfree"
    bad.mkdir()
    (bad / "manifest.json").write_text("{}")
    (bad / "data.bin").write_bytes(b"")
    rc = main(["idata", "--config", str(cfgfile), "--free", str(bad),
               "--out", str(tmp_path / "run")])
    assert rc == 1
    assert "error" in capsys.readouterr().err
