"""Construction of full characteristic data from the reduced free data.

The reduced set consists of {Psi0, phi0, chi0, omega} on the outgoing cone,
{Psi4, phi1, chi1} on the ingoing cone, and {lam, sigma, mu, rho, pi, P^A}
on the corner sphere, plus the Dirac mass.  The builder replays the
three-stage ordered hierarchy: corner algebra first, then an ODE march up
the ingoing cone (u direction), then one up the outgoing cone (v
direction), each using only equations whose inputs were produced earlier.
Both marches use the same classical RK4 as the bulk evolution, with all
coupled blocks integrated together as one system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .kernels import KernelContext, SequencingError
from .registry import SCALARS, SliceState, S2
from .sphere import AngularFrame, AngularGrid


class ODEStepError(RuntimeError):
    """Non-finite value produced while integrating the cone hierarchy."""

    def __init__(self, stage, label, coord, value):
        super().__init__(f"{stage}: non-finite {label} at {coord:.6g}")
        self.stage, self.label, self.coord = stage, label, coord


class FreeFunction:
    """Free-data profile on one cone: angular grid samples as a function of
    the cone parameter, with an exact or interpolated parameter derivative.
    """

    def __init__(self, func, deriv=None):
        self._func = func
        self._deriv = deriv

    def __call__(self, t: float) -> np.ndarray:
        return self._func(t)

    def deriv(self, t: float) -> np.ndarray:
        if self._deriv is None:
            h = 1e-4
            return (8 * (self(t + h) - self(t - h))
                    - (self(t + 2 * h) - self(t - 2 * h))) / (12 * h)
        return self._deriv(t)

    @classmethod
    def constant(cls, arr):
        arr = np.asarray(arr, dtype=np.complex128)
        zero = np.zeros_like(arr)
        return cls(lambda t: arr.copy(), lambda t: zero.copy())

    @classmethod
    def from_samples(cls, tgrid, values):
        """4th-order Lagrange interpolation through uniform samples."""
        tgrid = np.asarray(tgrid, dtype=float)
        values = np.asarray(values, dtype=np.complex128)
        h = tgrid[1] - tgrid[0]
        nt = len(tgrid)

        def window(t):
            j = int(np.clip(np.floor((t - tgrid[0]) / h) - 1, 0, nt - 4))
            s = (t - tgrid[j]) / h
            return j, s

        def call(t):
            j, s = window(t)
            w = _lagrange4(s)
            return np.tensordot(w, values[j:j + 4], axes=(0, 0))

        def deriv(t):
            j, s = window(t)
            w = _lagrange4_deriv(s) / h
            return np.tensordot(w, values[j:j + 4], axes=(0, 0))

        return cls(call, deriv)


def _lagrange4(s):
    return np.array([
        -(s - 1) * (s - 2) * (s - 3) / 6.0,
        s * (s - 2) * (s - 3) / 2.0,
        -s * (s - 1) * (s - 3) / 2.0,
        s * (s - 1) * (s - 2) / 6.0,
    ])


def _lagrange4_deriv(s):
    return np.array([
        -((s - 2) * (s - 3) + (s - 1) * (s - 3) + (s - 1) * (s - 2)) / 6.0,
        ((s - 2) * (s - 3) + s * (s - 3) + s * (s - 2)) / 2.0,
        -((s - 1) * (s - 3) + s * (s - 3) + s * (s - 1)) / 2.0,
        ((s - 1) * (s - 2) + s * (s - 2) + s * (s - 1)) / 6.0,
    ])


@dataclass
class FreeDataSet:
    """The reduced characteristic data set plus domain extents."""

    grid: AngularGrid
    mass: float
    v_extent: float                 # outgoing cone parameter range [0, I]
    u_extent: float                 # ingoing cone parameter range
    # outgoing cone, functions of v
    Psi0: FreeFunction = None
    phi0: FreeFunction = None
    chi0: FreeFunction = None
    omega: FreeFunction = None
    # ingoing cone, functions of u
    Psi4: FreeFunction = None
    phi1: FreeFunction = None
    chi1: FreeFunction = None
    # corner sphere
    corner: dict = field(default_factory=dict)   # lam, sigma, mu, rho, pi, P

    def validate(self):
        g = self.grid
        for name in ("Psi0", "phi0", "chi0", "omega", "Psi4", "phi1", "chi1"):
            if getattr(self, name) is None:
                raise ValueError(f"free function {name} missing")
        for name in ("lam", "sigma", "mu", "rho", "pi", "P"):
            if name not in self.corner:
                raise ValueError(f"corner datum {name} missing")
        for name in ("rho", "mu"):
            im = np.abs(np.imag(self.corner[name]))[..., g.owned].max()
            if im > 1e-12:
                raise ValueError(f"corner {name} must be real (Im={im:.2e})")
        if self.mass < 0:
            raise ValueError("mass must be nonnegative")
        return self


@dataclass
class IngoingRecord:
    """All fields along the ingoing cone, on the half-step u grid."""

    u: np.ndarray                  # (2 n_u + 1,) positions
    fields: dict                   # name -> (nu, [2,] 2, n, n)

    def at_index(self, k: int) -> dict:
        return {name: arr[k] for name, arr in self.fields.items()}

    def index_of(self, u: float) -> int:
        k = int(round((u - self.u[0]) / (self.u[1] - self.u[0])))
        if not (0 <= k < len(self.u)) or abs(self.u[k] - u) > 1e-10:
            raise SequencingError(f"u={u} not on the ingoing record grid")
        return k


@dataclass
class ConeData:
    free: FreeDataSet
    corner: dict
    ingoing: IngoingRecord
    outgoing: SliceState
    corner_defect: float = 0.0


# ---------------------------------------------------------------------------


def solve_linear_for(ctx: KernelContext, label: str, var: str,
                     lhs_value: np.ndarray) -> np.ndarray:
    """Solve a catalog relation for a variable appearing linearly alone.

    The variable must occur exactly once, as the single factor of a
    coefficient-1 term (true for every defining relation used here).
    """
    saved = ctx.env.get(var)
    ctx.env[var] = np.zeros_like(lhs_value)
    ctx._cache.clear()
    rest = ctx.rhs(label)
    if saved is None:
        del ctx.env[var]
    else:
        ctx.env[var] = saved
    ctx._cache.clear()
    return lhs_value - rest


def build_corner(free: FreeDataSet) -> dict:
    """All fields on the corner sphere from the reduced data."""
    g = free.grid
    free.validate()
    env = {}
    zero = g.zeros()
    P = np.array(free.corner["P"], dtype=np.complex128, copy=True)
    g.sync_vector(P[0], P[1], dyad=True)
    frame = AngularFrame(g, P[0], P[1], synced=True)
    env["P"] = P
    env["C"] = np.zeros_like(P)
    env["Q"] = np.ones_like(zero)
    env["vrho"] = zero.copy()
    for name in ("lam", "sigma", "mu", "rho", "pi"):
        env[name] = g.sync_scalar(np.array(free.corner[name],
                                           dtype=np.complex128), S2[name])
    env["tau"] = np.conj(env["pi"])
    conn = frame.conn
    env["beta"] = 0.5 * (np.conj(env["pi"]) + conn)
    env["alpha"] = 0.5 * (env["pi"] - np.conj(conn))
    env["omega"] = g.sync_scalar(free.omega(0.0).copy(), 0)
    env["eps"] = 0.5 * env["omega"]
    env["phi0"] = g.sync_scalar(free.phi0(0.0).copy(), S2["phi0"])
    env["chi0"] = g.sync_scalar(free.chi0(0.0).copy(), S2["chi0"])
    env["phi1"] = g.sync_scalar(free.phi1(0.0).copy(), S2["phi1"])
    env["chi1"] = g.sync_scalar(free.chi1(0.0).copy(), S2["chi1"])
    env["Psi0"] = g.sync_scalar(free.Psi0(0.0).copy(), S2["Psi0"])
    env["Psi4"] = g.sync_scalar(free.Psi4(0.0).copy(), S2["Psi4"])

    ctx = KernelContext(frame, env, free.mass)
    # Upsilon components from the definitional relations; the thorn /
    # thorn'-direction members use the free-data cone derivatives
    dphi0 = free.phi0.deriv(0.0)
    dchi0 = free.chi0.deriv(0.0)
    env["zeta0"] = g.sync_scalar(
        solve_linear_for(ctx, "Defzeta0", "zeta0", dphi0), S2["zeta0"])
    env["eta0"] = g.sync_scalar(
        solve_linear_for(ctx, "Defeta0", "eta0", dchi0), S2["eta0"])
    for label, var, phi in (("Defzeta1", "zeta1", "phi0"),
                            ("Defzeta2", "zeta2", "phi1"),
                            ("Defzeta3", "zeta3", "phi0"),
                            ("Defzeta4", "zeta4", "phi1"),
                            ("Defeta1", "eta1", "chi0"),
                            ("Defeta2", "eta2", "chi1"),
                            ("Defeta3", "eta3", "chi0"),
                            ("Defeta4", "eta4", "chi1")):
        eq_op = {"Defzeta1": "ethp", "Defzeta2": "ethp", "Defzeta3": "eth",
                 "Defzeta4": "eth", "Defeta1": "ethp", "Defeta2": "ethp",
                 "Defeta3": "eth", "Defeta4": "eth"}[label]
        lhs = (frame.eth_raw if eq_op == "eth" else frame.ethp_raw)(
            env[phi], S2[phi])
        env[var] = g.sync_scalar(solve_linear_for(ctx, label, var, lhs),
                                 S2[var])
    env["zeta5"] = g.sync_scalar(free.phi1.deriv(0.0).copy(), S2["zeta5"])
    env["eta5"] = g.sync_scalar(free.chi1.deriv(0.0).copy(), S2["eta5"])

    # curvature from the angular constraint relations
    env["Psi1t"] = g.sync_scalar(
        solve_linear_for(ctx, "rhosigma", "Psi1t",
                         frame.ethp_raw(env["sigma"], S2["sigma"])),
        S2["Psi1t"])
    env["Psi3t"] = g.sync_scalar(
        solve_linear_for(ctx, "mulambda", "Psi3t",
                         frame.ethp_raw(env["mu"], S2["mu"])),
        S2["Psi3t"])
    env["Psi2t"] = g.sync_scalar(
        solve_linear_for(ctx, "alphabeta", "Psi2t",
                         frame.deltabar_raw(env["beta"])),
        S2["Psi2t"])
    return env


# equation used to march each variable along the outgoing cone
OUTGOING_EQ = {
    "Q": "framecoefficient4", "rho": "thornrho", "sigma": "thornsigma",
    "beta": "Dbeta", "alpha": "Dalpha", "Psi1t": "thornPsi1",
    "phi1": "EOMDiracL1", "chi1": "EOMDiracR1",
    "zeta1": "thornzeta1", "zeta3": "thornzeta3",
    "eta1": "thorneta1", "eta3": "thorneta3",
    "tau": "thorntau", "mu": "thornmu", "lam": "thornlambda",
    "Psi2t": "thornPsi2", "zeta2": "thornzeta2", "zeta4": "thornzeta4",
    "eta2": "thorneta2", "eta4": "thorneta4", "Psi3t": "thornPsi3",
    "Psi4": "thornPsi4", "zeta5": "thornzeta5", "eta5": "thorneta5",
    "vrho": "thornvarrho",
}

# variables supplied by free data (not marched) on the outgoing cone
OUTGOING_GIVEN = ("phi0", "chi0", "omega", "eps", "Psi0", "zeta0", "eta0",
                  "pi", "C")


def _outgoing_given(free: FreeDataSet, v: float, env: dict):
    g = free.grid
    env["phi0"] = g.sync_scalar(free.phi0(v).copy(), S2["phi0"])
    env["chi0"] = g.sync_scalar(free.chi0(v).copy(), S2["chi0"])
    env["omega"] = g.sync_scalar(free.omega(v).copy(), 0)
    env["eps"] = 0.5 * env["omega"]
    env["Psi0"] = g.sync_scalar(free.Psi0(v).copy(), S2["Psi0"])
    # Defzeta0 / Defeta0 with D = d/dv and eps real
    env["zeta0"] = g.sync_scalar(
        free.phi0.deriv(v) - 0.5 * env["omega"] * env["phi0"], S2["zeta0"])
    env["eta0"] = g.sync_scalar(
        free.chi0.deriv(v) - 0.5 * env["omega"] * env["chi0"], S2["eta0"])


def _outgoing_rates(free: FreeDataSet, v: float, state: dict) -> dict:
    """d/dv rates of the marched fields on the outgoing cone (C = 0)."""
    g = free.grid
    env = dict(state)
    _outgoing_given(free, v, env)
    frame = AngularFrame(g, env["P"][0], env["P"][1], synced=True)
    ctx = KernelContext(frame, env, free.mass)
    rates = {}
    for name, label in OUTGOING_EQ.items():
        r = ctx.rhs(label)
        rates[name] = r if S2[name] is None else g.sync_scalar(r, S2[name])
    # pi is marched through the equation for its conjugate
    rates["pi"] = g.sync_scalar(np.conj(ctx.rhs("thornpi")), S2["pi"])
    # frame vector: DP = (rho + eps - conj eps) P + sigma conj(P), C = 0
    rates["P"] = (env["rho"] + env["eps"] - np.conj(env["eps"])) * env["P"] \
        + env["sigma"] * np.conj(env["P"])
    g.sync_vector(rates["P"][0], rates["P"][1], dyad=True)
    return rates


def _rk4(state: dict, rates_fn, t: float, h: float, stage_label: str):
    """One classical RK4 step on a dict-valued state."""
    k1 = rates_fn(t, state)
    s2 = {n: state[n] + 0.5 * h * k1[n] for n in k1}
    k2 = rates_fn(t + 0.5 * h, _with(state, s2))
    s3 = {n: state[n] + 0.5 * h * k2[n] for n in k2}
    k3 = rates_fn(t + 0.5 * h, _with(state, s3))
    s4 = {n: state[n] + h * k3[n] for n in k3}
    k4 = rates_fn(t + h, _with(state, s4))
    out = dict(state)
    for n in k1:
        out[n] = state[n] + (h / 6.0) * (k1[n] + 2 * k2[n] + 2 * k3[n] + k4[n])
        bad = not np.all(np.isfinite(out[n]))
        if bad:
            raise ODEStepError(stage_label, n, t, None)
    return out


def _with(base: dict, upd: dict) -> dict:
    out = dict(base)
    out.update(upd)
    return out


def build_ingoing(free: FreeDataSet, corner: dict, n_u: int) -> IngoingRecord:
    """March the full field set up the ingoing cone on the half-step grid.

    On this cone Q = 1 and tau = conj(pi) by the gauge; the v-class slots
    {phi1, chi1, Psi4} come from the free functions and {zeta5, eta5} from
    their u derivatives.
    """
    g = free.grid
    du = free.u_extent / n_u
    upts = np.linspace(0.0, free.u_extent, 2 * n_u + 1)
    marched = [n for n in kernels.UCLASS_EQ] + ["P", "C"]

    def given(u, env):
        env["Q"] = np.ones((2, g.n, g.n), dtype=np.complex128)
        env["vrho"] = np.zeros_like(env["Q"])
        env["tau"] = np.conj(env["pi"])
        env["omega"] = env["eps"] + np.conj(env["eps"])
        env["phi1"] = g.sync_scalar(free.phi1(u).copy(), S2["phi1"])
        env["chi1"] = g.sync_scalar(free.chi1(u).copy(), S2["chi1"])
        env["Psi4"] = g.sync_scalar(free.Psi4(u).copy(), S2["Psi4"])
        env["zeta5"] = g.sync_scalar(free.phi1.deriv(u).copy(), S2["zeta5"])
        env["eta5"] = g.sync_scalar(free.chi1.deriv(u).copy(), S2["eta5"])

    def rates(u, state):
        env = dict(state)
        given(u, env)
        frame = AngularFrame(g, env["P"][0], env["P"][1], synced=True)
        r = kernels.rates_uclass(frame, env, free.mass)   # Delta = d/du here
        for name in list(r):
            if S2.get(name) is not None and name not in ("P", "C"):
                g.sync_scalar(r[name], S2[name])
        g.sync_vector(r["P"][0], r["P"][1], dyad=True)
        g.sync_vector(r["C"][0], r["C"][1], dyad=False)
        return {n: r[n] for n in marched if n not in ("omega",)}

    state = {n: corner[n].copy() for n in marched}
    record = {n: [] for n in marched + ["Q", "tau", "vrho", "omega", "phi1",
                                        "chi1", "Psi4", "zeta5", "eta5"]}

    def snap(u, st):
        env = dict(st)
        given(u, env)
        for n in record:
            record[n].append(env[n].copy())

    snap(0.0, state)
    for k in range(2 * n_u):
        state = _rk4(state, rates, upts[k], 0.5 * du, "ingoing")
        snap(upts[k + 1], state)
    fields = {n: np.stack(v) for n, v in record.items()}
    return IngoingRecord(upts, fields)


def build_outgoing(free: FreeDataSet, corner: dict, n_v: int) -> SliceState:
    """March the full field set up the outgoing cone (the u = 0 slice)."""
    g = free.grid
    dv = free.v_extent / n_v
    vpts = np.linspace(0.0, free.v_extent, n_v + 1)
    marched = list(OUTGOING_EQ) + ["P"]

    def rates(v, state):
        return _outgoing_rates(free, v, state)

    state = {n: corner[n].copy() for n in marched}
    state["pi"] = corner["pi"].copy()
    sl = SliceState.empty(g, 0.0, vpts, free.mass)
    sl.fields["C"][:] = 0.0

    def snap(j, v, st):
        env = dict(st)
        _outgoing_given(free, v, env)
        for name in SCALARS:
            sl.fields[name][j] = env[name]
        sl.fields["P"][j] = env["P"]

    snap(0, 0.0, state)
    for j in range(n_v):
        state = _rk4(state, rates, vpts[j], dv, "outgoing")
        snap(j + 1, vpts[j + 1], state)
    return sl


def assemble_cone_data(free: FreeDataSet, n_u: int, n_v: int) -> ConeData:
    """Run the three-stage hierarchy and check corner compatibility."""
    corner = build_corner(free)
    ingoing = build_ingoing(free, corner, n_u)
    outgoing = build_outgoing(free, corner, n_v)
    g = free.grid
    defect = 0.0
    for name in SCALARS:
        a = ingoing.fields[name][0]
        b = outgoing.fields[name][0]
        defect = max(defect, float(np.abs(a - b)[..., g.owned].max()))
    defect = max(defect, float(
        np.abs(ingoing.fields["P"][0] - outgoing.fields["P"][0])
        [..., g.owned].max()))
    return ConeData(free, corner, ingoing, outgoing, defect)
