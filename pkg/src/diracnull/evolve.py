"""March the characteristic data into the bulk rectangle.

Every u-advance variable is stepped with classical RK4 using its
thorn'-equation divided by Q; each RK substage first re-integrates the
v-reconstruct class along the slice (from its ingoing-cone seeds) so the
substage state is internally consistent.  The v integration is itself RK4,
with the frozen u-class coefficients interpolated to v midpoints at 4th
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .idata import ConeData, IngoingRecord, _lagrange4
from .kernels import QFloorError
from .registry import S2, SCALARS, U_CLASS, V_CLASS, SliceState
from .sphere import AngularFrame, AngularGrid


@dataclass
class RunConfig:
    """All knobs of one evolution run."""

    n: int = 17
    overlap: int = 3
    n_u: int = 8
    n_v: int = 16
    u_extent: float = 0.1          # epsilon, the short direction
    v_extent: float = 1.0          # I, the long direction
    mass: float = 0.0
    q_floor: float = 1e-8
    reality_tol: float = 1e-6
    diagnostics_cadence: int = 1
    snapshot_cadence: int = 0      # 0: keep first/last only
    frozen_vclass: bool = False
    outdir: str = "run"
    free_data: str = "minkowski"
    r0: float = 10.0
    amplitude: float = 1e-2

    def validate(self):
        if self.n_u < 4 or self.n_v < 4:
            raise ValueError("n_u and n_v must be at least 4")
        if self.u_extent <= 0 or self.v_extent <= 0:
            raise ValueError("domain extents must be positive")
        if self.n < 9:
            raise ValueError("angular resolution n must be >= 9")
        return self


@dataclass
class EvolutionRun:
    config: RunConfig
    cones: ConeData
    slices: list = field(default_factory=list)   # (index, SliceState)
    reports: list = field(default_factory=list)
    aborted: str | None = None

    @property
    def final_slice(self) -> SliceState:
        return self.slices[-1][1]


MARCHED = tuple(kernels.UCLASS_EQ) + ("P", "C")


def _mid_weights(nv: int):
    """4-point Lagrange data for midpoints of each v interval."""
    idx = np.zeros((nv - 1, 4), dtype=int)
    wts = np.zeros((nv - 1, 4))
    for j in range(nv - 1):
        j0 = min(max(j - 1, 0), nv - 4)
        idx[j] = np.arange(j0, j0 + 4)
        wts[j] = _lagrange4(j - j0 + 0.5)
    return idx, wts


def _interp_mid(arr: np.ndarray, idx, wts):
    """Midpoint values of (nv, ...) data, shape (nv-1, ...)."""
    gathered = arr[idx]                     # (nv-1, 4, ...)
    w = wts.reshape(wts.shape + (1,) * (arr.ndim - 1))
    return (gathered * w).sum(axis=1)


def v_reconstruct(grid: AngularGrid, uclass: dict, seeds: dict, v: np.ndarray,
                  mass: float, q_floor: float = 1e-8) -> dict:
    """Integrate the v-class fields along the slice from their v=0 seeds.

    ``uclass`` holds the u-advance fields on the v grid; ``seeds`` the
    v-class values at v = 0 (from the ingoing cone record).
    """
    nv = len(v)
    idx, wts = _mid_weights(nv)
    mids = {name: _interp_mid(arr, idx, wts) for name, arr in uclass.items()}
    out = {name: np.empty((nv,) + seeds[name].shape, dtype=np.complex128)
           for name in V_CLASS}
    state = {name: seeds[name].astype(np.complex128).copy()
             for name in V_CLASS}
    for name in V_CLASS:
        grid.sync_scalar(state[name], S2[name])
        out[name][0] = state[name]

    # frames and every angular-derivative factor of the v-class equations
    # depend only on the frozen u-class data: evaluate them batched, for the
    # grid points and the RK midpoints, before the march
    fkeys = kernels.vclass_derivative_factors()
    frame_g = AngularFrame(grid, uclass["P"][:, 0], uclass["P"][:, 1],
                           synced=True)
    frame_m = AngularFrame(grid, mids["P"][:, 0], mids["P"][:, 1],
                           synced=True)
    pre_g = kernels.precompute_factors(frame_g, uclass, fkeys)
    pre_m = kernels.precompute_factors(frame_m, mids, fkeys)

    vnames = tuple(V_CLASS)
    vweights = [S2[n] for n in vnames]

    def rates(jgrid, at_mid, z):
        src, frames, pre = ((mids, frame_m, pre_m) if at_mid
                            else (uclass, frame_g, pre_g))
        env = {n: a[jgrid] for n, a in src.items()}
        env.update(z)
        cache = {k: arr[jgrid] for k, arr in pre.items()}
        r = kernels.rates_vclass(grid, frames.view(jgrid), env, mass, cache)
        stacked = np.stack([r[n] for n in vnames])
        grid.sync_multi(stacked, vweights)
        return {n: stacked[i] for i, n in enumerate(vnames)}

    for j in range(nv - 1):
        h = v[j + 1] - v[j]
        k1 = rates(j, False, state)
        s2 = {n: state[n] + 0.5 * h * k1[n] for n in state}
        k2 = rates(j, True, s2)
        s3 = {n: state[n] + 0.5 * h * k2[n] for n in state}
        k3 = rates(j, True, s3)
        s4 = {n: state[n] + h * k3[n] for n in state}
        k4 = rates(j + 1, False, s4)
        for n in state:
            state[n] = state[n] + (h / 6.0) * (
                k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n])
            if not np.all(np.isfinite(state[n])):
                raise FloatingPointError(
                    f"non-finite {n} during v reconstruction at v={v[j+1]:.6g}")
        qmin = float(np.real(state["Q"])[..., grid.owned].min())
        if qmin < q_floor:
            raise QFloorError(
                f"Q = {qmin:.3e} fell below the floor {q_floor:.1e} "
                f"at v = {v[j+1]:.6g}")
        out_j = j + 1
        for n in state:
            out[n][out_j] = state[n]
    return out


def complete_slice(grid, uclass: dict, vfill: dict, u: float, v, mass) -> SliceState:
    sl = SliceState(grid, u, np.asarray(v, dtype=float), mass)
    sl.fields = {**{k: np.array(a) for k, a in uclass.items()},
                 **{k: np.array(a) for k, a in vfill.items()}}
    return sl


def _du_rates(grid, uclass: dict, vfill: dict, mass: float) -> dict:
    env = dict(uclass)
    env.update(vfill)
    P = env["P"]
    frame = AngularFrame(grid, P[:, 0], P[:, 1], synced=True)
    rates = kernels.rates_uclass(frame, env, mass)
    Q = vfill["Q"]
    out = {}
    for name in MARCHED:
        r = rates[name]
        if name in ("P", "C"):
            r = r / Q[:, None]
            grid.sync_vector(r[:, 0], r[:, 1], dyad=(name == "P"))
        else:
            r = r / Q
            if S2[name] is not None:
                grid.sync_scalar(r, S2[name])
        out[name] = r
    return out


def u_step(grid, uclass: dict, ingoing: IngoingRecord, u: float, du: float,
           v: np.ndarray, mass: float, q_floor: float,
           frozen_vclass: bool = False, vfill0: dict | None = None):
    """One RK4 step in u; returns (next uclass dict, vfill at step start)."""

    def seeds_at(us):
        k = ingoing.index_of(us)
        rec = ingoing.at_index(k)
        return {name: rec[name] for name in V_CLASS}

    def F(y, us, vfill=None):
        if vfill is None:
            vfill = v_reconstruct(grid, y, seeds_at(us), v, mass, q_floor)
        return _du_rates(grid, y, vfill, mass), vfill

    if vfill0 is None:
        vfill0 = v_reconstruct(grid, uclass, seeds_at(u), v, mass, q_floor)
    k1, _ = F(uclass, u, vfill0)
    frozen = vfill0 if frozen_vclass else None
    y2 = {n: uclass[n] + 0.5 * du * k1[n] for n in MARCHED}
    k2, _ = F(y2, u + 0.5 * du, frozen)
    y3 = {n: uclass[n] + 0.5 * du * k2[n] for n in MARCHED}
    k3, _ = F(y3, u + 0.5 * du, frozen)
    y4 = {n: uclass[n] + du * k3[n] for n in MARCHED}
    k4, _ = F(y4, u + du, frozen)
    nxt = {}
    for n in MARCHED:
        nxt[n] = uclass[n] + (du / 6.0) * (k1[n] + 2 * k2[n] + 2 * k3[n] + k4[n])
        if not np.all(np.isfinite(nxt[n])):
            raise FloatingPointError(f"non-finite {n} after u step at u={u:.6g}")
    return nxt, vfill0


def evolve(config: RunConfig, cones: ConeData, observer=None) -> EvolutionRun:
    """Run the full characteristic march over the rectangle.

    ``observer(k, slice)`` is called on every completed slice (diagnostics
    hooks in the caller); kernel failures abort the run but preserve every
    completed slice and attach the failure reason.
    """
    config.validate()
    grid = cones.free.grid
    v = cones.outgoing.v
    du = config.u_extent / config.n_u
    mass = cones.free.mass
    run = EvolutionRun(config, cones)

    uclass = {n: cones.outgoing.fields[n].copy() for n in MARCHED}
    keep = {0, config.n_u}
    if config.snapshot_cadence:
        keep.update(range(0, config.n_u + 1, config.snapshot_cadence))

    u = 0.0
    try:
        for k in range(config.n_u + 1):
            vfill = v_reconstruct(grid, uclass, _seeds(cones.ingoing, u), v,
                                  mass, config.q_floor)
            sl = complete_slice(grid, uclass, vfill, u, v, mass)
            if k in keep:
                run.slices.append((k, sl))
            if observer is not None:
                observer(k, sl)
            if k == config.n_u:
                break
            uclass, _ = u_step(grid, uclass, cones.ingoing, u, du, v, mass,
                               config.q_floor, config.frozen_vclass,
                               vfill0=vfill)
            u += du
    except (FloatingPointError, QFloorError) as exc:
        run.aborted = str(exc)
    return run


def _seeds(ingoing: IngoingRecord, u: float) -> dict:
    k = ingoing.index_of(u)
    rec = ingoing.at_index(k)
    return {name: rec[name] for name in V_CLASS}
