"""Constraint residuals, Einstein residuals, energy identities and norms.

Everything here is read-only over evolved slices.  Residuals of equations
with a D (outgoing) principal direction difference the stored fields along
v with 4th-order stencils inside the slice; the two thorn'-direction
definitional constraints difference across slices through a small rolling
window.  All residuals are reported as L2 norms over the sphere, both
absolute and relative to the largest term of the equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import catalog as cat
from . import kernels
from .kernels import KernelContext
from .registry import S2, SCALARS, V_CLASS, SliceState
from .sphere import AngularFrame, AngularGrid, aggregate_dk

# D-direction twins: monitored equations whose principal direction is the
# outgoing one while the variable is marched in u (plus the A.5 pair)
TWIN_EQ = {
    "thornrho": "rho", "thornsigma": "sigma", "thornmu": "mu",
    "thornlambda": "lam",
    "thornzeta1": "zeta1", "thornzeta2": "zeta2", "thornzeta3": "zeta3",
    "thornzeta4": "zeta4",
    "thorneta1": "eta1", "thorneta2": "eta2", "thorneta3": "eta3",
    "thorneta4": "eta4",
    "thornPsi1": "Psi1t", "thornPsi2": "Psi2t", "thornPsi3": "Psi3t",
    "Dbeta": "beta", "Dalpha": "alpha",
    "thornzeta5alt": "zeta5", "thorneta5alt": "eta5",
}

# angular constraints evaluated pointwise on each sphere
ANGULAR_EQ = {
    "Defzeta1": ("ethp", "phi0"), "Defzeta2": ("ethp", "phi1"),
    "Defzeta3": ("eth", "phi0"), "Defzeta4": ("eth", "phi1"),
    "Defeta1": ("ethp", "chi0"), "Defeta2": ("ethp", "chi1"),
    "Defeta3": ("eth", "chi0"), "Defeta4": ("eth", "chi1"),
    "zeta3zeta1": ("ethp", "zeta3"), "zeta4zeta2": ("ethp", "zeta4"),
    "eta3eta1": ("ethp", "eta3"), "eta4eta2": ("ethp", "eta4"),
    "rhosigma": ("ethp", "sigma"), "mulambda": ("ethp", "mu"),
    "framecoefficient6": ("eth", "Q"),
    "alphabeta": ("dlb", "beta"),
}

# the Hodge pairs of the energy identity (f1, f2, thorn' eq, thorn eq)
HODGE_PAIRS = {
    "phi": ("phi0", "phi1", "EOMDiracL2", "EOMDiracL1"),
    "chi": ("chi0", "chi1", "EOMDiracR2", "EOMDiracR1"),
    "zeta01": ("zeta0", "zeta1", "thornprimezeta0", "thornzeta1"),
    "zeta12": ("zeta1", "zeta2", "thornprimezeta1", "thornzeta2"),
    "zeta34": ("zeta3", "zeta4", "thornprimezeta3", "thornzeta4"),
    "zeta45": ("zeta4", "zeta5", "thornprimezeta4", "thornzeta5"),
    "eta01": ("eta0", "eta1", "thornprimeeta0", "thorneta1"),
    "eta12": ("eta1", "eta2", "thornprimeeta1", "thorneta2"),
    "eta34": ("eta3", "eta4", "thornprimeeta3", "thorneta4"),
    "eta45": ("eta4", "eta5", "thornprimeeta4", "thorneta5"),
    "Psi01": ("Psi0", "Psi1t", "thornprimePsi0", "thornPsi1"),
    "Psi12": ("Psi1t", "Psi2t", "thornprimePsi1", "thornPsi2"),
    "Psi23": ("Psi2t", "Psi3t", "thornprimePsi2", "thornPsi3"),
    "Psi34": ("Psi3t", "Psi4", "thornprimePsi3", "thornPsi4"),
}

CONNECTION_SET = ("rho", "mu", "sigma", "lam", "tau", "pi", "vrho", "omega")


def d1_matrix(nv: int, h: float):
    """4th-order first-derivative matrix with one-sided closures."""
    D = np.zeros((nv, nv))
    c = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
    for j in range(2, nv - 2):
        D[j, j - 2:j + 3] = c
    edge = np.array([
        [-25.0, 48.0, -36.0, 16.0, -3.0],
        [-3.0, -10.0, 18.0, -6.0, 1.0],
    ]) / 12.0
    D[0, :5] = edge[0]
    D[1, :5] = edge[1]
    D[-1, -5:] = -edge[0][::-1]
    D[-2, -5:] = -edge[1][::-1]
    return D / h


def dv_of(slice_fields: np.ndarray, Dmat: np.ndarray) -> np.ndarray:
    """d/dv of (nv, ...) sampled data."""
    return np.tensordot(Dmat, slice_fields, axes=(1, 0))


def cumint(g: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """Cumulative integral of uniform samples, 4th order.

    Integrates the interpolating cubic over each interval (Adams-Moulton
    style weights), clamped windows at the ends.
    """
    g = np.moveaxis(np.asarray(g), axis, 0)
    npts = g.shape[0]
    out = np.zeros_like(g, dtype=np.complex128 if np.iscomplexobj(g) else float)
    if npts < 4:
        for j in range(1, npts):
            out[j] = out[j - 1] + 0.5 * h * (g[j - 1] + g[j])
        return np.moveaxis(out, 0, axis)
    wmid = np.array([-1.0, 13.0, 13.0, -1.0]) / 24.0
    wfirst = np.array([9.0, 19.0, -5.0, 1.0]) / 24.0
    for j in range(1, npts):
        if j == 1:
            seg = (wfirst.reshape((4,) + (1,) * (g.ndim - 1)) * g[0:4]).sum(0)
        elif j == npts - 1:
            seg = (wfirst[::-1].reshape((4,) + (1,) * (g.ndim - 1))
                   * g[npts - 4:npts]).sum(0)
        else:
            seg = (wmid.reshape((4,) + (1,) * (g.ndim - 1))
                   * g[j - 2:j + 2]).sum(0)
        out[j] = out[j - 1] + h * seg
    return np.moveaxis(out, 0, axis)


@dataclass
class DiagnosticsReport:
    """Per-slice residual norms plus run-level accumulators."""

    u: float
    rows: dict = field(default_factory=dict)     # name -> (nv,) arrays

    def max_over_v(self, name):
        return float(np.max(self.rows[name]))


def slice_frames(sl: SliceState) -> AngularFrame:
    P = sl.fields["P"]
    return AngularFrame(sl.grid, P[:, 0], P[:, 1], synced=True)


def _l2_per_v(frame_b: AngularFrame, vals: np.ndarray) -> np.ndarray:
    """L2(S) norms per v index of (nv, 2, n, n) values."""
    g = frame_b.grid
    w = g.pou * g.h ** 2
    a2 = np.abs(vals) ** 2 * frame_b.area_density.real * w
    return np.sqrt(a2.sum(axis=(-3, -2, -1)).real)


def _term_scale(ctx: KernelContext, frame_b, label: str) -> np.ndarray:
    """Largest per-v L2 norm among the equation's terms (for relative
    residuals)."""
    best = None
    m = ctx.mass
    for c, mp, factors in cat.COMPILED[label]:
        if mp:
            if m == 0.0:
                continue
            c = c * m ** mp
        term = None
        for f in factors:
            arr = ctx.factor(f)
            term = arr if term is None else term * arr
        term = c * term
        nrm = _l2_per_v(frame_b, term)
        best = nrm if best is None else np.maximum(best, nrm)
    if best is None:
        best = np.zeros(next(iter(ctx.env.values())).shape[0])
    return best


def constraint_residuals(sl: SliceState, relative: bool = True) -> dict:
    """All per-slice residual L2(S) norms for one complete slice."""
    g = sl.grid
    env = sl.fields
    nv = len(sl.v)
    frame_b = slice_frames(sl)
    ctx = KernelContext(frame_b, env, sl.mass)
    Dmat = d1_matrix(nv, sl.v[1] - sl.v[0])
    out = {}

    def emit(name, resid, label=None):
        out[name] = _l2_per_v(frame_b, resid)
        if relative and label is not None:
            scale = _term_scale(ctx, frame_b, label)
            out["rel_" + name] = out[name] / np.maximum(scale, 1e-300)

    # angular constraints
    for label, (op, var) in ANGULAR_EQ.items():
        lhs_arr = env[var]
        if op == "eth":
            lhs = frame_b.eth_raw(lhs_arr, S2[var])
        elif op == "ethp":
            lhs = frame_b.ethp_raw(lhs_arr, S2[var])
        else:
            lhs = frame_b.deltabar_raw(lhs_arr)
        emit(label, lhs - ctx.rhs(label), label)

    # D-direction twins: thorn f = d_v f + C^A d_A f + s (eps - ~eps) f
    eps = env["eps"]
    C = env["C"]
    for label, var in TWIN_EQ.items():
        f = env[var]
        thorn_num = dv_of(f, Dmat)
        fx, fy = g.partial(f)
        thorn_num = thorn_num + C[:, 0] * fx + C[:, 1] * fy
        s2 = S2[var]
        if s2:
            thorn_num = thorn_num + 0.5 * s2 * (eps - np.conj(eps)) * f
        rhs = ctx.rhs(label)
        if label in ("Dbeta", "Dalpha"):
            resid = thorn_num - rhs
        else:
            resid = thorn_num - rhs
        emit("twin_" + label, resid, label)

    # D-direction definitional constraints for the thorn members
    for label, var, ups in (("Defzeta0", "phi0", "zeta0"),
                            ("Defeta0", "chi0", "eta0")):
        f = env[var]
        fx, fy = g.partial(f)
        thorn_num = dv_of(f, Dmat) + C[:, 0] * fx + C[:, 1] * fy \
            + 0.5 * S2[var] * (eps - np.conj(eps)) * f
        emit(label, thorn_num - ctx.rhs(label), label)

    # the D equation for pi-bar (twin for pi)
    f = np.conj(env["pi"])
    fx, fy = g.partial(f)
    thorn_num = dv_of(f, Dmat) + C[:, 0] * fx + C[:, 1] * fy \
        - 0.5 * S2["pi"] * (eps - np.conj(eps)) * f
    emit("twin_thornpi", thorn_num - ctx.rhs("thornpi"), "thornpi")

    # frame-coefficient constraints
    P = env["P"]
    dP = np.stack([dv_of(P[:, 0], Dmat), dv_of(P[:, 1], Dmat)], axis=1)
    delC = np.stack([frame_b.delta_raw(C[:, 0]), frame_b.delta_raw(C[:, 1])],
                    axis=1)
    adv = np.stack([
        C[:, 0] * g.partial(P[:, 0])[0] + C[:, 1] * g.partial(P[:, 0])[1],
        C[:, 0] * g.partial(P[:, 1])[0] + C[:, 1] * g.partial(P[:, 1])[1],
    ], axis=1)
    rho_b = (env["rho"] + env["eps"] - np.conj(env["eps"]))[:, None]
    fc3 = dP + adv - delC - rho_b * P - env["sigma"][:, None] * np.conj(P)
    out["framecoefficient3"] = np.sqrt(
        _l2_per_v(frame_b, fc3[:, 0]) ** 2 + _l2_per_v(frame_b, fc3[:, 1]) ** 2)

    pxx, pxy = g.partial_full(P[:, 0])
    pyx, pyy = g.partial_full(P[:, 1])
    cP = np.conj(P)
    lx = cP[:, 0] * pxx + cP[:, 1] * pxy \
        - (P[:, 0] * np.conj(pxx) + P[:, 1] * np.conj(pxy))
    ly = cP[:, 0] * pyx + cP[:, 1] * pyy \
        - (P[:, 0] * np.conj(pyx) + P[:, 1] * np.conj(pyy))
    x_ab = env["alpha"] - np.conj(env["beta"])
    fc5x = lx - x_ab * P[:, 0] + np.conj(x_ab) * cP[:, 0]
    fc5y = ly - x_ab * P[:, 1] + np.conj(x_ab) * cP[:, 1]
    out["framecoefficient5"] = np.sqrt(
        _l2_per_v(frame_b, fc5x) ** 2 + _l2_per_v(frame_b, fc5y) ** 2)

    # gauge reality and spin-connection identities
    for name in ("rho", "mu", "omega", "vrho"):
        out["Im_" + name] = _l2_per_v(frame_b, 1j * np.imag(env[name]))
    out["spinconnection3"] = _l2_per_v(
        frame_b, env["pi"] - env["alpha"] - np.conj(env["beta"]))

    # on-shell equivalence of the redundant zeta5/eta5 transport forms
    out["zeta5_pair_defect"] = _l2_per_v(
        frame_b, ctx.rhs("thornzeta5") - ctx.rhs("thornzeta5alt"))
    out["eta5_pair_defect"] = _l2_per_v(
        frame_b, ctx.rhs("thorneta5") - ctx.rhs("thorneta5alt"))

    # Gaussian curvature: constraint formula against the induced metric
    Kf = ctx.rhs("gauss_curvature")
    Kg = kernels.gaussian_curvature_geometric(g, P)
    out["K_cross_check"] = _l2_per_v(frame_b, Kf - Kg)
    out["Im_K"] = _l2_per_v(frame_b, 1j * np.imag(Kf))
    out["K_formula"] = _l2_per_v(frame_b, Kf)

    # Einstein residuals: matter-side Phi against independent relations
    phi = kernels.ricci_from_matter(frame_b, env, sl.mass)
    for name in ("Lam", "Phi11"):
        out["Im_" + name] = _l2_per_v(frame_b, 1j * np.imag(phi[name]))
    out["einstein_Phi00"] = out["twin_thornrho"]
    out["einstein_Phi01"] = 0.5 * out["twin_thornpi"]
    out["einstein_Phi20"] = out["twin_thornlambda"]
    out["einstein_Lambda"] = 0.25 * out["twin_thornmu"]
    out["einstein_Phi11_Lambda"] = out["alphabeta"]
    return out


def uclass_step_residuals(window: list, grid: AngularGrid) -> dict:
    """thorn'-direction residuals needing cross-slice differencing.

    ``window`` is a list of (u, SliceState) with uniform spacing; residuals
    are evaluated on the middle slice.  Covers the two remaining
    definitional constraints (Defzeta5 / Defeta5) and the Delta-direction
    Einstein extractions.
    """
    us = [u for u, _ in window]
    h = us[1] - us[0]
    mid = len(window) // 2
    sl = window[mid][1]
    frame_b = slice_frames(sl)
    ctx = KernelContext(frame_b, sl.fields, sl.mass)
    Dmat = d1_matrix(len(window), h)
    out = {}

    def du_of(name):
        stack = np.stack([w.fields[name] for _, w in window])
        return np.tensordot(Dmat[mid], stack, axes=(0, 0))

    Q = sl.fields["Q"]
    for label, var, target in (("Defzeta5", "phi1", "zeta5"),
                               ("Defeta5", "chi1", "eta5")):
        thornp_num = Q * du_of(var)      # thorn' = Q d_u (gamma = 0)
        out[label] = _l2_per_v(frame_b, thornp_num - ctx.rhs(label))

    # Delta-direction Einstein extractions (from equations that also drive
    # the evolution; they certify the integrated fields)
    for name, var, label in (("einstein_Phi22", "mu", "thornprimemu"),
                             ("einstein_Phi02", "sigma", "thornprimesigma")):
        resid = Q * du_of(var) - ctx.rhs(label)
        out[name] = _l2_per_v(frame_b, resid)
    return out


# -- energy identities --------------------------------------------------------


def hodge_sources(frame_b, env, mass, pair_key):
    """P0 and Q0 of one Hodge pair (principal derivatives moved left)."""
    f1, f2, eq_p, eq_t = HODGE_PAIRS[pair_key]
    ctx = KernelContext(frame_b, env, mass)
    P0 = ctx.rhs(eq_p, skip=(cat.Factor(f2, False, "eth"),))
    Q0 = ctx.rhs(eq_t, skip=(cat.Factor(f1, False, "ethp"),))
    return P0, Q0


@dataclass
class EnergyLedger:
    """Streaming accumulator for the energy identity of one Hodge pair.

    Feed one complete slice per u grid point (cadence 1); the defect table
    is assembled afterwards.
    """

    pair: str
    rows: list = field(default_factory=list)

    def feed(self, sl: SliceState):
        f1n, f2n, eq_p, eq_t = HODGE_PAIRS[self.pair]
        frame_b = slice_frames(sl)
        env = sl.fields
        f1, f2 = env[f1n], env[f2n]
        Q = env["Q"]
        P0, Q0 = hodge_sources(frame_b, env, sl.mass, self.pair)
        mu, om, rho, tau, pi_ = (env["mu"], env["omega"], env["rho"],
                                 env["tau"], env["pi"])

        def sint(vals):
            return frame_b.integrate_scalar(vals).real

        pairing = ((np.conj(tau) - pi_) * f1) * np.conj(f2)
        self.rows.append({
            "u": sl.u,
            "f1_sq": sint(np.abs(f1) ** 2),
            "f2_sq_overQ": sint(np.abs(f2) ** 2 / Q.real),
            "bulk": sint((2.0 * mu.real * np.abs(f1) ** 2
                          - (om.real + 2 * rho.real) * np.abs(f2) ** 2) / Q.real),
            "src": sint((2.0 * np.real(np.conj(f1) * P0)
                         + 2.0 * np.real(np.conj(f2) * Q0)
                         + 2.0 * np.real(pairing)) / Q.real),
        })

    def defect_table(self, v: np.ndarray):
        """|LHS - RHS| of the energy identity at every (u_k, v_j)."""
        hv = v[1] - v[0]
        us = np.array([r["u"] for r in self.rows])
        hu = us[1] - us[0] if len(us) > 1 else 1.0
        f1_cone = np.stack([cumint(r["f1_sq"], hv) for r in self.rows])
        f2_sph = np.stack([r["f2_sq_overQ"] for r in self.rows])
        f2_cone = cumint(f2_sph, hu, axis=0)
        bulk_v = np.stack([cumint(r["bulk"], hv) for r in self.rows])
        bulk = cumint(bulk_v, hu, axis=0)
        src_v = np.stack([cumint(r["src"], hv) for r in self.rows])
        src = cumint(src_v, hu, axis=0)
        lhs = f1_cone + f2_cone
        rhs = f1_cone[0][None, :] + f2_cone[:, 0][:, None] + bulk + src
        return np.abs(lhs - rhs)


# -- norm suite ---------------------------------------------------------------


def _string_norm_sum(frame_b, vals, s2, kmax, p) -> float:
    """sum_{i<=kmax} || D^i f ||_{L^p(S)}, maximised over the slice."""
    total = None
    for i in range(kmax + 1):
        agg = aggregate_dk(frame_b, vals, s2, i)
        g = frame_b.grid
        w = g.pou * g.h ** 2
        if p == "inf":
            nrm = np.sqrt(np.max((agg ** 2)[..., g.owned], axis=-1, initial=0.0))
        else:
            mom = ((agg ** p) * frame_b.area_density.real * w).sum((-3, -2, -1))
            nrm = mom ** (1.0 / p)
        total = nrm if total is None else total + nrm
    return total


def norm_suite_slice(sl: SliceState) -> dict:
    """Per-slice pieces of the spacetime norm suite.

    Returns the sphere-type suprema on this slice and the cone integrands
    needed for the hypersurface norms.
    """
    frame_b = slice_frames(sl)
    env = sl.fields
    weyl = kernels.untilded_weyl(frame_b, env, sl.mass)
    out = {"u": sl.u}

    gamma_sup = 0.0
    for name in CONNECTION_SET:
        t_inf = _string_norm_sum(frame_b, env[name], S2[name], 1, "inf")
        t_l4 = _string_norm_sum(frame_b, env[name], S2[name], 2, 4)
        t_l2 = _string_norm_sum(frame_b, env[name], S2[name], 3, 2)
        gamma_sup = max(gamma_sup, float(np.max(t_inf)), float(np.max(t_l4)),
                        float(np.max(t_l2)))
    out["Delta_Gamma_S"] = gamma_sup

    psi_sup = 0.0
    for name in ("phi0", "phi1", "chi0", "chi1"):
        tot = _string_norm_sum(frame_b, env[name], S2[name], 3, 2)
        psi_sup = max(psi_sup, float(np.max(tot)))
    out["Delta_psi_S"] = psi_sup

    ups_sup = 0.0
    for fam in ("zeta", "eta"):
        for k in range(6):
            name = f"{fam}{k}"
            tot = _string_norm_sum(frame_b, env[name], S2[name], 3, 2)
            ups_sup = max(ups_sup, float(np.max(tot)))
    out["Delta_Upsilon_S"] = ups_sup

    weyl_sup = 0.0
    for name in ("Psi0", "Psi1", "Psi2", "Psi3"):
        tot = _string_norm_sum(frame_b, weyl[name],
                               S2[name if name in S2 else name + "t"], 2, 2)
        weyl_sup = max(weyl_sup, float(np.max(tot)))
    out["Delta_Psi_S"] = weyl_sup

    # cone integrands: sum |D^i X|^2 over the required set, per v
    g = frame_b.grid
    w = g.pou * g.h ** 2

    def sphere_int(vals2):
        return (vals2 * frame_b.area_density.real * w).sum((-3, -2, -1)).real

    cone = {}
    for i in range(5):
        for name in ("phi0", "chi0"):
            cone[f"psiL_{i}_{name}"] = sphere_int(
                aggregate_dk(frame_b, env[name], S2[name], i) ** 2)
        for name in ("phi1", "chi1"):
            cone[f"psiR_{i}_{name}"] = sphere_int(
                aggregate_dk(frame_b, env[name], S2[name], i) ** 2
                / np.maximum(env["Q"].real, 1e-300))
        for name in ("zeta0", "zeta1", "zeta3", "zeta4",
                     "eta0", "eta1", "eta3", "eta4"):
            cone[f"upsL_{i}_{name}"] = sphere_int(
                aggregate_dk(frame_b, env[name], S2[name], i) ** 2)
        for name in ("zeta1", "zeta2", "zeta4", "zeta5",
                     "eta1", "eta2", "eta4", "eta5"):
            cone[f"upsR_{i}_{name}"] = sphere_int(
                aggregate_dk(frame_b, env[name], S2[name], i) ** 2
                / np.maximum(env["Q"].real, 1e-300))
    for i in range(4):
        for name in ("Psi0", "Psi1", "Psi2", "Psi3"):
            s2 = S2[name] if name in S2 else S2[name + "t"]
            cone[f"weylL_{i}_{name}"] = sphere_int(
                aggregate_dk(frame_b, weyl[name], s2, i) ** 2)
        for name in ("Psi1", "Psi2", "Psi3", "Psi4"):
            s2 = S2[name] if name in S2 else S2[name + "t"]
            cone[f"weylR_{i}_{name}"] = sphere_int(
                aggregate_dk(frame_b, weyl[name], s2, i) ** 2
                / np.maximum(env["Q"].real, 1e-300))
    out["cone"] = cone
    return out


def norm_suite(slice_reports: list, v: np.ndarray) -> dict:
    """Assemble the spacetime norm suite from per-slice pieces."""
    hv = v[1] - v[0]
    out = {}
    for key in ("Delta_Gamma_S", "Delta_psi_S", "Delta_Upsilon_S",
                "Delta_Psi_S"):
        out[key] = max(r[key] for r in slice_reports)

    us = np.array([r["u"] for r in slice_reports])
    hu = us[1] - us[0] if len(us) > 1 else 1.0

    def outgoing_norm(prefix, names, imax):
        best = 0.0
        for name in names:
            tot = 0.0
            for i in range(imax + 1):
                per_u = np.array([
                    cumint(r["cone"][f"{prefix}_{i}_{name}"], hv)[-1]
                    for r in slice_reports])
                tot_i = np.sqrt(np.maximum(per_u, 0.0))
                tot = tot + tot_i
            best = max(best, float(np.max(tot)))
        return best

    def ingoing_norm(prefix, names, imax):
        best = 0.0
        for name in names:
            tot = None
            for i in range(imax + 1):
                rowsi = np.stack([r["cone"][f"{prefix}_{i}_{name}"]
                                  for r in slice_reports])
                cum = cumint(rowsi, hu, axis=0)[-1]
                tot_i = np.sqrt(np.maximum(cum, 0.0))
                tot = tot_i if tot is None else tot + tot_i
            best = max(best, float(np.max(tot)))
        return best

    out["Delta_psi"] = (outgoing_norm("psiL", ("phi0", "chi0"), 4)
                        + ingoing_norm("psiR", ("phi1", "chi1"), 4))
    out["Delta_Upsilon"] = (
        outgoing_norm("upsL", ("zeta0", "zeta1", "zeta3", "zeta4",
                               "eta0", "eta1", "eta3", "eta4"), 4)
        + ingoing_norm("upsR", ("zeta1", "zeta2", "zeta4", "zeta5",
                                "eta1", "eta2", "eta4", "eta5"), 4))
    out["Delta_Psi"] = (
        outgoing_norm("weylL", ("Psi0", "Psi1", "Psi2", "Psi3"), 3)
        + ingoing_norm("weylR", ("Psi1", "Psi2", "Psi3", "Psi4"), 3))
    return out


def initial_data_norms(cones) -> dict:
    """The initial-data norm set on the two cones.

    The frame norm omits the undefined |varphi| entry of the source text
    (recorded in the catalog manifest); it is the sup of |Q|, |1/Q|, |C|
    and |P| over both cones plus the outgoing extent.
    """
    g = cones.free.grid
    out = {}
    sup_e = 0.0
    for fields in (cones.outgoing.fields, cones.ingoing.fields):
        Q = fields["Q"].real
        sup_e = max(sup_e, float(np.abs(Q)[..., g.owned].max()),
                    float(np.abs(1.0 / Q)[..., g.owned].max()))
        for vec in ("C", "P"):
            mag = np.sqrt(np.abs(fields[vec][:, 0]) ** 2
                          + np.abs(fields[vec][:, 1]) ** 2)
            sup_e = max(sup_e, float(mag[..., g.owned].max()))
    out["Delta_e_star"] = sup_e + cones.free.v_extent

    def sphere_sups(fields, names, sets):
        P = fields["P"]
        frame_b = AngularFrame(g, P[:, 0], P[:, 1], synced=True)
        best = 1.0
        for name in names:
            vals = fields[name]
            for kmax, p in sets:
                tot = _string_norm_sum(frame_b, vals, S2[name], kmax, p)
                best = max(best, float(np.max(tot)))
        return best

    gam_sets = ((1, "inf"), (2, 4), (3, 2))
    out["Delta_Gamma_star"] = max(
        sphere_sups(cones.outgoing.fields, CONNECTION_SET, gam_sets),
        sphere_sups(cones.ingoing.fields, CONNECTION_SET, gam_sets))
    psi_sets = ((1, "inf"), (2, 4), (3, 2))
    matter = ("phi0", "phi1", "chi0", "chi1")
    out["Delta_psi_star"] = max(
        sphere_sups(cones.outgoing.fields, matter, psi_sets),
        sphere_sups(cones.ingoing.fields, matter, psi_sets))
    ups = tuple(f"{f}{k}" for f in ("zeta", "eta") for k in range(6))
    out["Delta_Upsilon_star"] = max(
        sphere_sups(cones.outgoing.fields, ups, psi_sets),
        sphere_sups(cones.ingoing.fields, ups, psi_sets))
    weyl_sets = ((1, 4), (2, 2))
    weyl = ("Psi0", "Psi1t", "Psi2t", "Psi3t", "Psi4")
    out["Delta_Psi_star"] = max(
        sphere_sups(cones.outgoing.fields, weyl, weyl_sets),
        sphere_sups(cones.ingoing.fields, weyl, weyl_sets))
    return out
