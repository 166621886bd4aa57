"""Run configuration, snapshot containers and delimited outputs.

Configs are INI-style text with the five fixed sections; unknown keys are
rejected.  Field snapshots are a text manifest plus one flat little-endian
complex128 blob, ordered (v or u, patch, i, j) per variable, with a sha256
checksum.  Scalar diagnostics go to ``diagnostics.csv`` with a column
dictionary written alongside.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from .evolve import RunConfig
from .idata import FreeDataSet, FreeFunction
from .registry import SCALARS, VECTORS, SliceState, S2
from .sphere import make_grid


class ConfigError(ValueError):
    pass


class SnapshotError(IOError):
    pass


_SCHEMA = {
    "domain": {"u_extent": float, "v_extent": float},
    "grid": {"n": int, "overlap": int, "n_u": int, "n_v": int},
    "matter": {"mass": float, "free_data": str, "r0": float,
               "amplitude": float},
    "output": {"outdir": str, "diagnostics_cadence": int,
               "snapshot_cadence": int},
    "tolerances": {"q_floor": float, "reality_tol": float},
    "evolution": {"frozen_vclass": lambda s: s.lower() in ("1", "true", "yes")},
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate key = value configuration text."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    kwargs = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in cp.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            conv = _SCHEMA[section][key]
            try:
                kwargs[key] = conv(raw)
            except ValueError:
                raise ConfigError(
                    f"invalid value {raw!r} for {section}.{key}") from None
    try:
        return RunConfig(**kwargs).validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def serialize_config(cfg: RunConfig) -> str:
    lines = []
    for section, keys in _SCHEMA.items():
        lines.append(f"[{section}]")
        for key in keys:
            lines.append(f"{key} = {getattr(cfg, key)}")
        lines.append("")
    return "\n".join(lines)


# -- snapshots ---------------------------------------------------------------


def write_snapshot(path, sl: SliceState, run_id: str = "",
                   catalog_version: str = ""):
    """Write one slice as manifest + flat complex128 blob."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    blobs = []
    manifest = {
        "run_id": run_id,
        "catalog_version": catalog_version,
        "u": sl.u,
        "v": [float(x) for x in sl.v],
        "mass": sl.mass,
        "n": sl.grid.n,
        "overlap": sl.grid.overlap,
        "variables": {},
    }
    offset = 0
    for name in SCALARS + VECTORS:
        arr = np.ascontiguousarray(sl.fields[name], dtype="<c16")
        manifest["variables"][name] = {
            "shape": list(arr.shape),
            "offset": offset,
            "tweight": None if S2[name] is None else S2[name] / 2,
        }
        blobs.append(arr.tobytes())
        offset += len(blobs[-1])
    data = b"".join(blobs)
    manifest["checksum"] = hashlib.sha256(data).hexdigest()
    (path / "data.bin").write_bytes(data)
    (path / "manifest.json").write_text(json.dumps(manifest, indent=1))


def read_snapshot(path) -> SliceState:
    path = Path(path)
    try:
        manifest = json.loads((path / "manifest.json").read_text())
        data = (path / "data.bin").read_bytes()
    except FileNotFoundError as exc:
        raise SnapshotError(f"snapshot incomplete: {exc}") from None
    digest = hashlib.sha256(data).hexdigest()
    if digest != manifest["checksum"]:
        raise SnapshotError("snapshot checksum mismatch (truncated or "
                            "corrupted data.bin)")
    grid = make_grid(manifest["n"], manifest["overlap"])
    v = np.asarray(manifest["v"])
    sl = SliceState(grid, manifest["u"], v, manifest["mass"])
    for name, desc in manifest["variables"].items():
        shape = tuple(desc["shape"])
        expected = ((len(v), 2, grid.n, grid.n) if name in SCALARS
                    else (len(v), 2, 2, grid.n, grid.n))
        if shape != expected:
            raise SnapshotError(
                f"variable {name}: shape {shape} does not match the "
                f"grid/config shape {expected}")
        arr = np.frombuffer(data, dtype="<c16", count=int(np.prod(shape)),
                            offset=desc["offset"]).reshape(shape)
        sl.fields[name] = arr.copy()
    return sl


# -- free data containers ------------------------------------------------------


def write_free_data(path, free: FreeDataSet, n_u: int, n_v: int):
    """Sample the free functions on the run grids and store them."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    v = np.linspace(0.0, free.v_extent, n_v + 1)
    u = np.linspace(0.0, free.u_extent, n_u + 1)
    blobs, manifest = [], {
        "mass": free.mass, "v_extent": free.v_extent,
        "u_extent": free.u_extent, "n": free.grid.n,
        "overlap": free.grid.overlap,
        "n_u": n_u, "n_v": n_v, "variables": {},
    }
    offset = 0

    def put(name, arr):
        nonlocal offset
        arr = np.ascontiguousarray(arr, dtype="<c16")
        manifest["variables"][name] = {"shape": list(arr.shape),
                                       "offset": offset}
        blobs.append(arr.tobytes())
        offset += len(blobs[-1])

    for name in ("Psi0", "phi0", "chi0", "omega"):
        put(name, np.stack([getattr(free, name)(t) for t in v]))
    for name in ("Psi4", "phi1", "chi1"):
        put(name, np.stack([getattr(free, name)(t) for t in u]))
    for name in ("lam", "sigma", "mu", "rho", "pi", "P"):
        put("corner_" + name, free.corner[name])
    data = b"".join(blobs)
    manifest["checksum"] = hashlib.sha256(data).hexdigest()
    (path / "data.bin").write_bytes(data)
    (path / "manifest.json").write_text(json.dumps(manifest, indent=1))


def read_free_data(path) -> FreeDataSet:
    path = Path(path)
    try:
        manifest = json.loads((path / "manifest.json").read_text())
        data = (path / "data.bin").read_bytes()
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        raise SnapshotError(f"free-data container unreadable: {exc}") from None
    if hashlib.sha256(data).hexdigest() != manifest.get("checksum"):
        raise SnapshotError("free-data checksum mismatch")
    grid = make_grid(manifest["n"], manifest["overlap"])

    def get(name):
        desc = manifest["variables"][name]
        shape = tuple(desc["shape"])
        return np.frombuffer(data, dtype="<c16", count=int(np.prod(shape)),
                             offset=desc["offset"]).reshape(shape).copy()

    v = np.linspace(0.0, manifest["v_extent"], manifest["n_v"] + 1)
    u = np.linspace(0.0, manifest["u_extent"], manifest["n_u"] + 1)
    free = FreeDataSet(
        grid=grid, mass=manifest["mass"],
        v_extent=manifest["v_extent"], u_extent=manifest["u_extent"],
        Psi0=FreeFunction.from_samples(v, get("Psi0")),
        phi0=FreeFunction.from_samples(v, get("phi0")),
        chi0=FreeFunction.from_samples(v, get("chi0")),
        omega=FreeFunction.from_samples(v, get("omega")),
        Psi4=FreeFunction.from_samples(u, get("Psi4")),
        phi1=FreeFunction.from_samples(u, get("phi1")),
        chi1=FreeFunction.from_samples(u, get("chi1")),
        corner={name: get("corner_" + name)
                for name in ("lam", "sigma", "mu", "rho", "pi", "P")},
    )
    return free.validate()


# -- delimited diagnostics -----------------------------------------------------


COLUMN_NOTES = {
    "twin_*": "L2(S) residual of the named unused transport equation, "
              "directional derivative by 4th-order differencing",
    "rel_*": "same residual divided by the L2(S) norm of the largest term",
    "Defzeta*/Defeta*": "definitional constraints of the promoted "
                        "derivatives (Upsilon evolved independently)",
    "zeta3zeta1/zeta4zeta2/eta3eta1/eta4eta2": "angular constraint pairs",
    "framecoefficient3/5/6": "frame-gradient constraints",
    "Im_*": "reality defects of gauge-real fields",
    "spinconnection3": "pi - alpha - conj(beta)",
    "zeta5_pair_defect/eta5_pair_defect": "on-shell defect between the "
        "curvature-free and with-curvature transport forms",
    "K_cross_check": "constraint-formula K minus induced-metric K",
    "einstein_*": "Einstein-equation component defects (matter side vs "
                  "the named geometric extraction)",
    "energy_*": "energy-identity defect of the named Hodge pair at (u, v)",
    "Delta_*": "norm suite entries (run scope)",
}


def write_diagnostics_csv(outdir, per_slice_rows: list, run_rows: dict,
                          v: np.ndarray):
    """diagnostics.csv: sphere-scope rows per (u, v) plus run-scope rows."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    names = sorted({k for _, rows in per_slice_rows for k in rows})
    with open(outdir / "diagnostics.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["scope", "u", "v", "name", "value"])
        for u, rows in per_slice_rows:
            for name in names:
                if name not in rows:
                    continue
                vals = np.atleast_1d(rows[name])
                if len(vals) == len(v):
                    for j, val in enumerate(vals):
                        w.writerow(["sphere", f"{u:.12g}", f"{v[j]:.12g}",
                                    name, f"{float(np.real(val)):.16e}"])
                else:
                    w.writerow(["slice", f"{u:.12g}", "", name,
                                f"{float(np.max(np.real(vals))):.16e}"])
        for name, val in run_rows.items():
            w.writerow(["run", "", "", name, f"{float(val):.16e}"])
    with open(outdir / "diagnostics_columns.txt", "w") as fh:
        fh.write("column dictionary for diagnostics.csv\n")
        fh.write("rows: scope in {sphere, slice, run}; value = L2(S) "
                 "norm unless noted\n\n")
        for pat, note in COLUMN_NOTES.items():
            fh.write(f"{pat}:\n    {note}\n")
