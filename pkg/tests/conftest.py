"""Shared fixtures; the expensive reference runs are session-scoped."""

import numpy as np
import pytest

from diracnull import diagnostics as dg
from diracnull.evolve import RunConfig, evolve
from diracnull.idata import assemble_cone_data
from diracnull.oracles import minkowski_free_data, pulse_free_data
from diracnull.sphere import make_grid


@pytest.fixture(scope="session")
def grid17():
    return make_grid(17, 3)


@pytest.fixture(scope="session")
def grid33():
    return make_grid(33, 4)


def run_coupled(n, n_u, n_v, *, amp=0.05, mass=1.0, r0=2.0, u_extent=0.08,
                v_extent=1.0, overlap=3, pairs=(), residuals=True,
                window_names=("Defzeta5", "Defeta5", "einstein_Phi22",
                              "einstein_Phi02")):
    """One coupled pulse run with residual / energy observers attached."""
    grid = make_grid(n, overlap)
    cfg = RunConfig(n=n, overlap=overlap, n_u=n_u, n_v=n_v,
                    u_extent=u_extent, v_extent=v_extent, mass=mass, r0=r0)
    free = pulse_free_data(grid, r0, v_extent, u_extent, mass, amp)
    cones = assemble_cone_data(free, n_u, n_v)
    acc, window = {}, []
    ledgers = {p: dg.EnergyLedger(p) for p in pairs}

    def obs(k, sl):
        for led in ledgers.values():
            led.feed(sl)
        if residuals:
            res = dg.constraint_residuals(sl, relative=False)
            for name, vals in res.items():
                acc[name] = max(acc.get(name, 0.0), float(np.max(vals)))
            window.append((sl.u, sl))
            if len(window) == 5:
                for name, vals in dg.uclass_step_residuals(window,
                                                           grid).items():
                    acc[name] = max(acc.get(name, 0.0), float(np.max(vals)))
                window.pop(0)

    run = evolve(cfg, cones, observer=obs)
    assert run.aborted is None, run.aborted
    energy = {p: led.defect_table(cones.outgoing.v)[-1, -1]
              for p, led in ledgers.items()}
    return {"grid": grid, "cfg": cfg, "cones": cones, "run": run,
            "residuals": acc, "energy": energy, "h": grid.h}


ENERGY_PAIRS = ("phi", "chi", "zeta01", "zeta12", "zeta34", "zeta45",
                "eta01", "eta12", "eta34", "eta45",
                "Psi01", "Psi12", "Psi23", "Psi34")


@pytest.fixture(scope="session")
def coupled_triplet():
    """Three resolutions of the coupled Einstein-Dirac pulse run."""
    levels = [run_coupled(*lvl, pairs=ENERGY_PAIRS)
              for lvl in ((21, 6, 12), (29, 12, 24), (41, 24, 48))]
    return levels


@pytest.fixture(scope="session")
def minkowski_reference():
    """The flat-data end-to-end run at the reference resolution.

    The corner radius is the test's choice of free data; 15 keeps even the
    directionally differenced residual rows below the round-off-accumulation
    gate (their truncation scales as 1/r0^6).
    """
    n, n_u, n_v, r0 = 33, 64, 64, 15.0
    grid = make_grid(n, 4)
    cfg = RunConfig(n=n, overlap=4, n_u=n_u, n_v=n_v, u_extent=0.1,
                    v_extent=1.0, mass=0.5, r0=r0)
    free = minkowski_free_data(grid, r0, cfg.v_extent, cfg.u_extent, cfg.mass)
    cones = assemble_cone_data(free, n_u, n_v)
    acc, window, kept = {}, [], []

    def obs(k, sl):
        res = dg.constraint_residuals(sl, relative=False)
        for name, vals in res.items():
            acc[name] = max(acc.get(name, 0.0), float(np.max(vals)))
        window.append((sl.u, sl))
        if len(window) == 5:
            for name, vals in dg.uclass_step_residuals(window, grid).items():
                acc[name] = max(acc.get(name, 0.0), float(np.max(vals)))
            window.pop(0)
        if k in (0, n_u // 2, n_u):
            kept.append(sl)

    run = evolve(cfg, cones, observer=obs)
    assert run.aborted is None, run.aborted
    return {"grid": grid, "cfg": cfg, "cones": cones, "run": run,
            "residuals": acc, "kept": kept, "r0": r0}


def order(coarse, fine, h_coarse, h_fine):
    return float(np.log(coarse / fine) / np.log(h_coarse / h_fine))
