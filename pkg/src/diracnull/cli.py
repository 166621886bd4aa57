"""Command line front end: idata / evolve / audit / oracle / diagnose."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import catalog, diagnostics, io as dio, kernels, oracles, plots
from .background import constants_report
from .evolve import RunConfig, evolve
from .idata import assemble_cone_data
from .registry import V_CLASS
from .sphere import make_grid


def _load_config(path) -> RunConfig:
    return dio.parse_config(Path(path).read_text())


def _free_data_for(cfg: RunConfig, grid, source: str):
    if source.startswith("builtin:"):
        source = source.split(":", 1)[1]
    if source == "minkowski":
        return oracles.minkowski_free_data(
            grid, cfg.r0, cfg.v_extent, cfg.u_extent, cfg.mass)
    if source == "pulse":
        return oracles.pulse_free_data(
            grid, cfg.r0, cfg.v_extent, cfg.u_extent, cfg.mass,
            cfg.amplitude)
    free = dio.read_free_data(source)
    if abs(free.v_extent - cfg.v_extent) > 1e-12 \
            or abs(free.u_extent - cfg.u_extent) > 1e-12:
        raise dio.ConfigError("free-data extents do not match the config")
    return free


def cmd_audit(args):
    res = catalog.audit_catalog()
    bad = 0
    for label in sorted(res):
        verdict = res[label]["verdict"]
        marks = ""
        if label in catalog.FLAGS:
            marks = "  [repaired transcription, see manifest]"
        print(f"{label:24s} {verdict}{marks}")
        for text, got, want in res[label]["offenders"]:
            bad += 1
            print(f"    offending term: {text}  (weight {got}, "
                  f"needs {want})")
    npass = sum(1 for v in res.values() if v["verdict"] == "pass")
    nskip = sum(1 for v in res.values() if v["verdict"] == "unweighted")
    print(f"\n{npass} pass, {nskip} skipped (unweighted), "
          f"{bad} offending terms")
    if args.manifest:
        Path(args.manifest).write_text(catalog.manifest())
        print(f"manifest written to {args.manifest}")
    return 1 if bad else 0


def cmd_idata(args):
    cfg = _load_config(args.config)
    grid = make_grid(cfg.n, cfg.overlap)
    free = _free_data_for(cfg, grid, args.free)
    cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
    out = Path(args.out or cfg.outdir) / "cones"
    dio.write_free_data(out / "free", free, cfg.n_u, cfg.n_v)
    dio.write_snapshot(out / "outgoing", cones.outgoing,
                       catalog_version=catalog.catalog_hash())
    print(f"cone data built; corner compatibility defect "
          f"{cones.corner_defect:.3e}")
    print(f"written to {out}")
    norms = diagnostics.initial_data_norms(cones)
    for k, val in norms.items():
        print(f"  {k} = {val:.6g}")
    return 0


def cmd_evolve(args):
    cfg = _load_config(args.config)
    grid = make_grid(cfg.n, cfg.overlap)
    free = _free_data_for(cfg, grid, args.free or cfg.free_data)
    cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
    outdir = Path(args.out or cfg.outdir)
    rows, suite_rows = [], []
    cadence = max(1, cfg.diagnostics_cadence)
    ledgers = {key: diagnostics.EnergyLedger(key)
               for key in ("phi", "chi", "zeta01", "Psi01")}

    def observer(k, sl):
        for led in ledgers.values():
            led.feed(sl)
        if k % cadence == 0:
            rows.append((sl.u, diagnostics.constraint_residuals(sl)))
            if args.norms:
                suite_rows.append(diagnostics.norm_suite_slice(sl))

    run = evolve(cfg, cones, observer=observer)
    run_rows = {}
    if suite_rows:
        run_rows.update(diagnostics.norm_suite(suite_rows, cones.outgoing.v))
        for k, val in diagnostics.initial_data_norms(cones).items():
            run_rows[k] = val
    for key, led in ledgers.items():
        if len(led.rows) > 1:
            run_rows[f"energy_defect_{key}"] = float(
                led.defect_table(cones.outgoing.v)[-1, -1])
    dio.write_diagnostics_csv(outdir, rows, run_rows, cones.outgoing.v)
    for k, sl in run.slices:
        dio.write_snapshot(outdir / f"slice_{k:04d}", sl,
                           catalog_version=catalog.catalog_hash())
    (outdir / "config.cfg").write_text(dio.serialize_config(cfg))
    if run.aborted:
        print(f"run ABORTED: {run.aborted}", file=sys.stderr)
        print(f"completed slices and diagnostics written to {outdir}")
        return 2
    print(f"run complete; {len(rows)} diagnostic slices -> {outdir}")
    return 0


def cmd_oracle(args):
    cfg = _load_config(args.config) if args.config else RunConfig()
    grid = make_grid(cfg.n, cfg.overlap)
    out = Path(args.out or cfg.outdir) / "oracle"
    v = np.linspace(0.0, cfg.v_extent, cfg.n_v + 1)
    for k in (0, cfg.n_u):
        u = cfg.u_extent * k / cfg.n_u
        sl = oracles.minkowski_state(grid, cfg.r0, u, v, cfg.mass)
        dio.write_snapshot(out / f"slice_{k:04d}", sl,
                           catalog_version=catalog.catalog_hash())
    (out / "constants.txt").write_text(constants_report(cfg.r0))
    print(f"exact background snapshots and constants written to {out}")
    return 0


def cmd_diagnose(args):
    outdir = Path(args.run)
    slices = sorted(outdir.glob("slice_*"))
    if not slices:
        print(f"no slices found under {outdir}", file=sys.stderr)
        return 1
    rows = []
    v = None
    for p in slices:
        sl = dio.read_snapshot(p)
        v = sl.v
        rows.append((sl.u, diagnostics.constraint_residuals(sl)))
    run_rows = {}
    dio.write_diagnostics_csv(outdir, rows, run_rows, v)
    print(f"diagnostics recomputed for {len(rows)} slices -> "
          f"{outdir/'diagnostics.csv'}")
    if not args.no_figures:
        made = plots.render_report_figures(outdir, rows, run_rows, v)
        for p in made:
            print(f"  figure: {p}")
    skip = ("rel_", "K_", "einstein_")
    worst = max((np.max(r[k]) for _, r in rows for k in r
                 if not k.startswith(skip)), default=0.0)
    kdef = max((np.max(r["K_cross_check"]) for _, r in rows), default=0.0)
    print(f"largest equation residual: {worst:.3e}")
    print(f"curvature cross-check defect: {kdef:.3e}")
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="diracnull",
        description="characteristic double-null evolution of the coupled "
                    "Einstein-Dirac system")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("audit", help="T-weight audit of the equation catalog")
    p.add_argument("--manifest", help="write the catalog manifest here")
    p.set_defaults(fn=cmd_audit)

    p = sub.add_parser("idata", help="build full cone data from free data")
    p.add_argument("--config", required=True)
    p.add_argument("--free", default="minkowski",
                   help="builtin:minkowski, builtin:pulse, or a container dir")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_idata)

    p = sub.add_parser("evolve", help="run the characteristic evolution")
    p.add_argument("--config", required=True)
    p.add_argument("--free")
    p.add_argument("--out")
    p.add_argument("--norms", action="store_true",
                   help="also compute the norm suite (slower)")
    p.set_defaults(fn=cmd_evolve)

    p = sub.add_parser("oracle", help="emit exact-background snapshots")
    p.add_argument("--minkowski", action="store_true", default=True)
    p.add_argument("--config")
    p.add_argument("--out", default="oracle_out")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("diagnose",
                       help="recompute reports and figures from snapshots")
    p.add_argument("--run", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(fn=cmd_diagnose)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (dio.ConfigError, dio.SnapshotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
