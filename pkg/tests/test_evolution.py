"""Marching scheme: reconstruction, stepping, aborts."""

import numpy as np
import pytest

from diracnull import background as bg
from diracnull.evolve import RunConfig, evolve, v_reconstruct
from diracnull.idata import assemble_cone_data
from diracnull.kernels import QFloorError
from diracnull.oracles import minkowski_free_data, pulse_free_data
from diracnull.registry import SCALARS, V_CLASS
from diracnull.sphere import make_grid


@pytest.fixture(scope="module")
def mink_run(grid17):
    cfg = RunConfig(n=17, overlap=3, n_u=8, n_v=16, u_extent=0.1,
                    v_extent=1.0, mass=0.5, r0=10.0, snapshot_cadence=4)
    free = minkowski_free_data(grid17, 10.0, cfg.v_extent, cfg.u_extent,
                               cfg.mass)
    cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
    return cfg, cones, evolve(cfg, cones)


def test_vreconstruct_background(grid17):
    # on the flat slice the reconstruction returns Q = 1 and zeros exactly
    from diracnull.oracles import minkowski_state
    v = np.linspace(0.0, 1.0, 17)
    sl = minkowski_state(grid17, 10.0, 0.0, v, 0.5)
    uclass = {k: sl.fields[k] for k in sl.fields
              if k not in V_CLASS}
    seeds = {"Q": np.ones((2, 17, 17), dtype=complex)}
    for name in V_CLASS:
        if name != "Q":
            seeds[name] = np.zeros((2, 17, 17), dtype=complex)
    out = v_reconstruct(grid17, uclass, seeds, v, 0.5)
    own = grid17.owned
    assert np.abs(out["Q"] - 1.0)[..., own].max() < 1e-14
    for name in ("tau", "vrho", "Psi4", "phi1", "zeta5"):
        assert np.abs(out[name])[..., own].max() < 1e-14, name


def test_minkowski_run_fields(mink_run, grid17):
    cfg, cones, run = mink_run
    assert run.aborted is None
    fin = run.final_slice
    r = bg.radius(10.0, fin.u, fin.v)[:, None, None, None]
    alpha, beta = bg.round_alpha_beta(grid17, 1.0)
    own = grid17.owned
    worst = 0.0
    for name in SCALARS:
        exact = {"rho": -1.0 / r, "mu": -0.5 / r,
                 "Q": np.ones_like(r) + 0j, "alpha": alpha[None] / r,
                 "beta": beta[None] / r}.get(name, 0.0)
        worst = max(worst, np.abs(fin.fields[name] - exact)[..., own].max())
    assert worst < 1e-10
    # u strictly increasing, snapshots at the configured cadence
    ks = [k for k, _ in run.slices]
    assert ks == sorted(set(ks)) and 0 in ks and cfg.n_u in ks


def test_zero_matter_stays_zero(grid17):
    # curvature pulse only: the matter sector remains identically zero
    cfg = RunConfig(n=17, overlap=3, n_u=4, n_v=8, u_extent=0.04,
                    v_extent=0.6, mass=1.0, r0=2.0)
    free = pulse_free_data(grid17, 2.0, cfg.v_extent, cfg.u_extent, cfg.mass,
                           5e-3, with_matter=False)
    cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
    run = evolve(cfg, cones)
    assert run.aborted is None
    own = grid17.owned
    fin = run.final_slice
    for fam in ("phi0", "phi1", "chi0", "chi1", "zeta0", "zeta5", "eta2"):
        assert np.abs(fin.fields[fam])[..., own].max() < 1e-13, fam
    # but the curvature pulse did something
    assert np.abs(fin.fields["sigma"])[..., own].max() > 1e-6


def test_quadratic_curvature_response(grid17):
    # small Dirac pulse of amplitude a sources curvature at O(a^2)
    drifts = []
    for a in (2e-3, 4e-3):
        cfg = RunConfig(n=17, overlap=3, n_u=4, n_v=8, u_extent=0.04,
                        v_extent=0.6, mass=1.0, r0=2.0)
        free = pulse_free_data(grid17, 2.0, cfg.v_extent, cfg.u_extent,
                               cfg.mass, a, with_curvature=False)
        cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
        run = evolve(cfg, cones)
        assert run.aborted is None
        drifts.append(np.abs(run.final_slice.fields["Psi2t"])
                      [..., grid17.owned].max())
    ratio = drifts[1] / drifts[0]
    assert 3.4 < ratio < 4.6     # quadratic scaling gives 4


def test_qfloor_abort_preserves_slices(grid17):
    cfg = RunConfig(n=17, overlap=3, n_u=4, n_v=8, u_extent=0.04,
                    v_extent=0.6, mass=0.0, r0=2.0, q_floor=2.0)
    free = minkowski_free_data(grid17, 2.0, cfg.v_extent, cfg.u_extent, 0.0)
    cones = assemble_cone_data(free, cfg.n_u, cfg.n_v)
    run = evolve(cfg, cones)
    assert run.aborted is not None and "floor" in run.aborted


def test_frozen_vclass_mode_close_to_full(grid17):
    cfg = dict(n=17, overlap=3, n_u=4, n_v=8, u_extent=0.02, v_extent=0.6,
               mass=1.0, r0=2.0)
    free = pulse_free_data(grid17, 2.0, 0.6, 0.02, 1.0, 2e-3)
    cones = assemble_cone_data(free, 4, 8)
    full = evolve(RunConfig(**cfg), cones)
    froz = evolve(RunConfig(**cfg, frozen_vclass=True), cones)
    a = full.final_slice.fields["rho"]
    b = froz.final_slice.fields["rho"]
    diff = np.abs(a - b)[..., grid17.owned].max()
    assert 0.0 < diff < 1e-6     # cheaper mode, small controlled defect
