"""Exact and closed-form reference solutions used by tests and examples.

The flat background is the one worked example with closed forms in this
gauge (see :mod:`diracnull.background`); `minkowski_free_data` emits the
reduced data that reproduces it and `minkowski_state` evaluates the exact
fields on any slice.  `riccati_exact` gives the closed-form expansions that
the cone builders must reproduce, and `frozen_background_dirac` builds a
matter-only evolution on the frozen flat geometry for energy and
definitional-constraint studies.
"""

from __future__ import annotations

import numpy as np

from . import background as bg
from .idata import FreeDataSet, FreeFunction
from .registry import SCALARS, SliceState, S2
from .sphere import AngularGrid


def minkowski_free_data(grid: AngularGrid, r0: float, v_extent: float,
                        u_extent: float, mass: float = 0.0) -> FreeDataSet:
    """Reduced data whose development is the flat background of radius r0."""
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    n = grid.n
    zero = np.zeros((2, n, n), dtype=np.complex128)
    zf = FreeFunction.constant(zero)
    px, py = bg.round_dyad(grid, r0)
    corner = {
        "lam": zero.copy(), "sigma": zero.copy(), "pi": zero.copy(),
        "rho": np.full_like(zero, bg.rho_exact(r0, 0.0, 0.0)),
        "mu": np.full_like(zero, bg.mu_exact(r0, 0.0, 0.0)),
        "P": np.stack([px, py]),
    }
    return FreeDataSet(
        grid=grid, mass=mass, v_extent=v_extent, u_extent=u_extent,
        Psi0=zf, phi0=zf, chi0=zf, omega=zf, Psi4=zf, phi1=zf, chi1=zf,
        corner=corner).validate()


def minkowski_state(grid: AngularGrid, r0: float, u: float,
                    v: np.ndarray, mass: float = 0.0) -> SliceState:
    """Exact background fields on the slice u = const."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    sl = SliceState.empty(grid, u, v, mass)
    r = bg.radius(r0, u, v)[:, None, None, None]
    sl.fields["Q"][:] = 1.0
    sl.fields["rho"][:] = -1.0 / r
    sl.fields["mu"][:] = -0.5 / r
    alpha, beta = bg.round_alpha_beta(grid, 1.0)
    sl.fields["alpha"][:] = alpha / r
    sl.fields["beta"][:] = beta / r
    px, py = bg.round_dyad(grid, 1.0)
    sl.fields["P"][:, 0] = px / r
    sl.fields["P"][:, 1] = py / r
    return sl


def riccati_exact(x0, s, sign=+1):
    """Closed form of dy/ds = sign * y^2 with y(0) = x0.

    ``sign=+1`` is the outgoing expansion equation (y = rho), whose
    solution is x0 / (1 - x0 s); ``sign=-1`` the ingoing one (y = mu),
    x0 / (1 + x0 s).  Raises on a pole inside the requested range.
    """
    s = np.asarray(s, dtype=float)
    den = 1.0 - sign * x0 * s
    if np.any(den <= 0.0):
        raise FloatingPointError(
            f"Riccati blow-up inside the domain (pole at s = {1.0 / (sign * x0):.6g})")
    return x0 / den


def gaussian_pulse(center: float, width: float, amplitude: complex):
    """Scalar bump profile a * exp(-((t-c)/w)^2) with exact derivative."""
    def f(t):
        return amplitude * np.exp(-((t - center) / width) ** 2)

    def df(t):
        return f(t) * (-2.0 * (t - center) / width ** 2)

    return f, df


def angular_mode(grid: AngularGrid, s2: int, k: int = 0):
    """Smooth low-l angular profile of doubled T-weight s2.

    Built from the annihilated top family zbar^k (1+|z|^2)^(-l) with
    l = |s|, transported to the south patch with the grid's transition
    phase; k runs over 0..2l.
    """
    z = grid.zeta
    out = np.empty((2, grid.n, grid.n), dtype=np.complex128)
    if s2 == 0:
        if k == 0:
            # l = 1, m = 0 scalar harmonic
            t = (1.0 - grid.rad ** 2) / (1.0 + grid.rad ** 2)
            out[0], out[1] = t, -t
        else:
            # l = 1, |m| = 1 scalar harmonic
            out[0] = z / (1.0 + grid.rad ** 2)
            out[1] = np.conj(z) / (1.0 + grid.rad ** 2)
        return out
    l2 = abs(s2)                  # doubled l of the top multiplet
    if k < 0 or k > l2:
        raise ValueError(f"k must lie in 0..{l2}")
    base_n = np.conj(z) ** k * (1.0 + grid.rad ** 2) ** (-l2 / 2.0)
    # the same multiplet seen from the south patch: index flips k -> 2l-k
    base_s = np.conj(z) ** (l2 - k) * (1.0 + grid.rad ** 2) ** (-l2 / 2.0)
    out[0] = base_n
    out[1] = base_s * (-1j) ** l2
    if s2 > 0:
        out = np.conj(out)
    return out


def free_pulse_function(grid: AngularGrid, s2: int, center, width,
                        amplitude, k: int = 0) -> FreeFunction:
    """FreeFunction: Gaussian bump in the cone parameter times a smooth
    angular profile of the right weight."""
    prof = angular_mode(grid, s2, k)
    f, df = gaussian_pulse(center, width, amplitude)
    return FreeFunction(lambda t: f(t) * prof, lambda t: df(t) * prof)


MATTER_U = ("phi0", "chi0", "zeta0", "zeta1", "zeta2", "zeta3", "zeta4",
            "eta0", "eta1", "eta2", "eta3", "eta4")
MATTER_V = ("phi1", "chi1", "zeta5", "eta5")


def frozen_background_dirac(grid: AngularGrid, r0: float, v_extent: float,
                            u_extent: float, n_u: int, n_v: int, mass: float,
                            free: "FreeDataSet") -> list:
    """Evolve only the Dirac and Upsilon fields on the frozen flat geometry.

    The initial data replays the cone hierarchy restricted to the matter
    sector (all geometry coefficients held at their exact background
    values); returns the list of completed slices, one per u step.
    """
    from . import kernels
    from .idata import _rk4, _with
    from .kernels import KernelContext
    from .registry import S2
    from .sphere import AngularFrame

    v = np.linspace(0.0, v_extent, n_v + 1)
    uhalf = np.linspace(0.0, u_extent, 2 * n_u + 1)

    def geometry(u, vv):
        sl = minkowski_state(grid, r0, u, np.atleast_1d(vv), mass)
        env = sl.env(0)
        return env

    def geo_frame(env):
        return AngularFrame(grid, env["P"][0], env["P"][1], synced=True)

    # corner: matter from free data, Upsilon from the definitional relations
    env0 = geometry(0.0, 0.0)
    fr0 = geo_frame(env0)
    corner = dict(env0)
    for name, fn in (("phi0", free.phi0), ("chi0", free.chi0),
                     ("phi1", free.phi1), ("chi1", free.chi1)):
        corner[name] = grid.sync_scalar(fn(0.0).copy(), S2[name])
    ctx = KernelContext(fr0, corner, mass)
    from .idata import solve_linear_for
    corner["zeta0"] = solve_linear_for(ctx, "Defzeta0", "zeta0",
                                       free.phi0.deriv(0.0))
    corner["eta0"] = solve_linear_for(ctx, "Defeta0", "eta0",
                                      free.chi0.deriv(0.0))
    for label, var, phi, op in (
            ("Defzeta1", "zeta1", "phi0", "ethp"),
            ("Defzeta2", "zeta2", "phi1", "ethp"),
            ("Defzeta3", "zeta3", "phi0", "eth"),
            ("Defzeta4", "zeta4", "phi1", "eth"),
            ("Defeta1", "eta1", "chi0", "ethp"),
            ("Defeta2", "eta2", "chi1", "ethp"),
            ("Defeta3", "eta3", "chi0", "eth"),
            ("Defeta4", "eta4", "chi1", "eth")):
        lhs = (fr0.eth_raw if op == "eth" else fr0.ethp_raw)(
            corner[phi], S2[phi])
        corner[var] = grid.sync_scalar(
            solve_linear_for(ctx, label, var, lhs), S2[var])
    corner["zeta5"] = grid.sync_scalar(free.phi1.deriv(0.0).copy(), S2["zeta5"])
    corner["eta5"] = grid.sync_scalar(free.chi1.deriv(0.0).copy(), S2["eta5"])

    # ingoing record: march the u-class matter with frozen geometry
    def ingoing_rates(u, state):
        env = geometry(u, 0.0)
        env.update(state)
        for name, fn in (("phi1", free.phi1), ("chi1", free.chi1)):
            env[name] = grid.sync_scalar(fn(u).copy(), S2[name])
        env["zeta5"] = grid.sync_scalar(free.phi1.deriv(u).copy(), S2["zeta5"])
        env["eta5"] = grid.sync_scalar(free.chi1.deriv(u).copy(), S2["eta5"])
        ctx = KernelContext(geo_frame(env), env, mass)
        r = {n: ctx.rhs(kernels.UCLASS_EQ[n]) for n in MATTER_U}
        for n in r:
            grid.sync_scalar(r[n], S2[n])
        return r

    state = {n: corner[n].copy() for n in MATTER_U}
    ingoing = {n: [state[n].copy()] for n in MATTER_U}
    for k in range(2 * n_u):
        state = _rk4(state, ingoing_rates, uhalf[k],
                     uhalf[k + 1] - uhalf[k], "frozen-ingoing")
        for n in MATTER_U:
            ingoing[n].append(state[n].copy())

    # outgoing cone (= u = 0 slice): march the v-class matter
    def outgoing_rates(vv, state):
        env = geometry(0.0, vv)
        env.update(state)
        for name, fn in (("phi0", free.phi0), ("chi0", free.chi0)):
            env[name] = grid.sync_scalar(fn(vv).copy(), S2[name])
        env["zeta0"] = grid.sync_scalar(
            free.phi0.deriv(vv) - 0.5 * env["omega"] * env["phi0"],
            S2["zeta0"])
        env["eta0"] = grid.sync_scalar(
            free.chi0.deriv(vv) - 0.5 * env["omega"] * env["chi0"],
            S2["eta0"])
        ctx = KernelContext(geo_frame(env), env, mass)
        labels = {"phi1": "EOMDiracL1", "chi1": "EOMDiracR1",
                  "zeta5": "thornzeta5", "eta5": "thorneta5",
                  "zeta1": "thornzeta1", "zeta2": "thornzeta2",
                  "zeta3": "thornzeta3", "zeta4": "thornzeta4",
                  "eta1": "thorneta1", "eta2": "thorneta2",
                  "eta3": "thorneta3", "eta4": "thorneta4"}
        r = {n: ctx.rhs(lab) for n, lab in labels.items()}
        for n in r:
            grid.sync_scalar(r[n], S2[n])
        return r

    ostate = {n: corner[n].copy()
              for n in MATTER_V + ("zeta1", "zeta2", "zeta3", "zeta4",
                                   "eta1", "eta2", "eta3", "eta4")}
    out0 = {n: [ostate[n].copy()] for n in ostate}
    for j in range(n_v):
        ostate = _rk4(ostate, outgoing_rates, v[j], v[j + 1] - v[j],
                      "frozen-outgoing")
        for n in ostate:
            out0[n].append(ostate[n].copy())

    # bulk: u-march of the matter u-class with per-substage matter
    # v-reconstruction on the frozen geometry
    def geometry_slice(u):
        return minkowski_state(grid, r0, u, v, mass)

    def reconstruct(u, uc):
        geo = geometry_slice(u).fields
        seeds = {}
        k = int(round(u / (0.5 * u_extent / n_u))) if n_u else 0
        for n in MATTER_V:
            if n in ("phi1", "chi1"):
                fn = free.phi1 if n == "phi1" else free.chi1
                seeds[n] = fn(u).copy()
            else:
                fn = free.phi1 if n == "zeta5" else free.chi1
                seeds[n] = fn.deriv(u).copy()
        from .evolve import _mid_weights, _interp_mid
        nv = len(v)
        idx, wts = _mid_weights(nv)
        mids_uc = {n: _interp_mid(a, idx, wts) for n, a in uc.items()}
        out = {n: np.empty((nv, 2, grid.n, grid.n), np.complex128)
               for n in MATTER_V}
        z = {n: grid.sync_scalar(np.asarray(seeds[n], np.complex128), S2[n])
             for n in MATTER_V}
        for n in MATTER_V:
            out[n][0] = z[n]

        def vr(j, at_mid, zz, uu):
            vv = 0.5 * (v[j] + v[j + 1]) if at_mid else v[j]
            env = geometry(uu, vv)
            src = mids_uc if at_mid else uc
            env.update({n: a[j] for n, a in src.items()})
            env.update(zz)
            ctx = KernelContext(geo_frame(env), env, mass)
            r = {n: ctx.rhs(kernels.VCLASS_EQ[n]) for n in MATTER_V}
            for n in r:
                grid.sync_scalar(r[n], S2[n])
            return r

        for j in range(nv - 1):
            h = v[j + 1] - v[j]
            k1 = vr(j, False, z, u)
            s2_ = {n: z[n] + 0.5 * h * k1[n] for n in z}
            k2 = vr(j, True, s2_, u)
            s3 = {n: z[n] + 0.5 * h * k2[n] for n in z}
            k3 = vr(j, True, s3, u)
            s4 = {n: z[n] + h * k3[n] for n in z}
            k4 = vr(j + 1, False, s4, u)
            for n in z:
                z[n] = z[n] + (h / 6.0) * (k1[n] + 2 * k2[n] + 2 * k3[n] + k4[n])
                out[n][j + 1] = z[n]
        return out

    def bulk_rates(uc, u):
        vfill = reconstruct(u, uc)
        geo = geometry_slice(u).fields
        env = dict(geo)
        env.update(uc)
        env.update(vfill)
        P = env["P"]
        frame_b = AngularFrame(grid, P[:, 0], P[:, 1], synced=True)
        ctx = KernelContext(frame_b, env, mass)
        r = {n: ctx.rhs(kernels.UCLASS_EQ[n]) for n in MATTER_U}
        for n in r:
            grid.sync_scalar(r[n], S2[n])          # Q = 1: Delta = d/du
        return r, vfill

    du = u_extent / n_u
    uc = {n: np.stack(out0[n]) if n in out0 else None for n in MATTER_U}
    # u-class matter on the initial slice: phi0/chi0 from free data,
    # zeta0/eta0 derived, zeta1..4/eta1..4 from the outgoing march
    uc = {}
    for n in MATTER_U:
        if n in out0:
            uc[n] = np.stack(out0[n])
        elif n in ("phi0", "chi0"):
            fn = free.phi0 if n == "phi0" else free.chi0
            uc[n] = np.stack([fn(t) for t in v])
        else:     # zeta0 / eta0
            base = "phi0" if n == "zeta0" else "chi0"
            fn = free.phi0 if n == "zeta0" else free.chi0
            om = np.stack([geometry(0.0, t)["omega"] for t in v])
            uc[n] = np.stack([fn.deriv(t) for t in v]) \
                - 0.5 * om * np.stack([fn(t) for t in v])
    for n in uc:
        grid.sync_scalar(uc[n], S2[n])

    slices = []
    u = 0.0
    for k in range(n_u + 1):
        _, vfill = bulk_rates(uc, u)
        sl = geometry_slice(u)
        for n in MATTER_U:
            sl.fields[n] = uc[n].copy()
        for n in MATTER_V:
            sl.fields[n] = vfill[n].copy()
        slices.append(sl)
        if k == n_u:
            break
        k1, _ = bulk_rates(uc, u)
        y2 = {n: uc[n] + 0.5 * du * k1[n] for n in uc}
        k2, _ = bulk_rates(y2, u + 0.5 * du)
        y3 = {n: uc[n] + 0.5 * du * k2[n] for n in uc}
        k3, _ = bulk_rates(y3, u + 0.5 * du)
        y4 = {n: uc[n] + du * k3[n] for n in uc}
        k4, _ = bulk_rates(y4, u + du)
        uc = {n: uc[n] + (du / 6.0) * (k1[n] + 2 * k2[n] + 2 * k3[n] + k4[n])
              for n in uc}
        u += du
    return slices


def pulse_free_data(grid: AngularGrid, r0: float, v_extent: float,
                    u_extent: float, mass: float, amplitude: float,
                    with_curvature: bool = True,
                    with_matter: bool = True) -> FreeDataSet:
    """Minkowski corner plus smooth low-l pulses on both cones."""
    free = minkowski_free_data(grid, r0, v_extent, u_extent, mass)
    a = amplitude
    if with_curvature:
        free.Psi0 = free_pulse_function(
            grid, S2["Psi0"], 0.35 * v_extent, 0.22 * v_extent, a, k=1)
        free.Psi4 = free_pulse_function(
            grid, S2["Psi4"], 0.45 * u_extent, 0.30 * u_extent, 0.5 * a, k=1)
    if with_matter:
        free.phi0 = free_pulse_function(
            grid, S2["phi0"], 0.40 * v_extent, 0.25 * v_extent, a, k=0)
        free.chi0 = free_pulse_function(
            grid, S2["chi0"], 0.55 * v_extent, 0.25 * v_extent, 0.8 * a, k=1)
        free.phi1 = free_pulse_function(
            grid, S2["phi1"], 0.50 * u_extent, 0.30 * u_extent, 0.7 * a, k=0)
        free.chi1 = free_pulse_function(
            grid, S2["chi1"], 0.40 * u_extent, 0.30 * u_extent, 0.6 * a, k=1)
    return free.validate()
