"""Numerical evaluation of the equation catalog.

A :class:`KernelContext` binds a variable environment (raw arrays) to an
angular frame and evaluates catalog right-hand sides term by term, caching
angular derivatives.  The directional-rate helpers split the catalog into
the u-advance class (thorn'-equations, marched in u) and the v-reconstruct
class (thorn-equations, integrated along each slice), and expose every
unused equation as a diagnostic residual kernel.
"""

from __future__ import annotations

import numpy as np

from . import catalog as cat
from .registry import S2, U_CLASS, V_CLASS, s2_of
from .sphere import AngularFrame, AngularGrid


class SequencingError(RuntimeError):
    """A kernel was asked for a variable not yet present on the slice."""


class QFloorError(FloatingPointError):
    """The frame coefficient Q dropped below its configured floor."""


class KernelContext:
    """Caches conjugates and angular derivatives over one evaluation."""

    def __init__(self, frame: AngularFrame, env: dict, mass: float,
                 precomputed: dict | None = None):
        self.frame = frame
        self.env = env
        self.mass = float(mass)
        self._cache = dict(precomputed) if precomputed else {}

    def base(self, var: str, conj: bool):
        key = (var, conj, None)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        try:
            arr = self.env[var]
        except KeyError:
            raise SequencingError(f"variable {var!r} missing from kernel "
                                  f"environment") from None
        if conj:
            arr = np.conj(arr)
        self._cache[key] = arr
        return arr

    def factor(self, f: cat.Factor):
        key = (f.var, f.conj, f.op)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        arr = self.base(f.var, f.conj)
        if f.op is not None:
            s2 = s2_of("~" + f.var if f.conj else f.var)
            if f.op == "eth":
                arr = self.frame.eth_raw(arr, s2)
            elif f.op == "ethp":
                arr = self.frame.ethp_raw(arr, s2)
            elif f.op == "dl":
                arr = self.frame.delta_raw(arr)
            elif f.op == "dlb":
                arr = self.frame.deltabar_raw(arr)
        self._cache[key] = arr
        return arr

    def rhs(self, label: str, skip=()):
        """Evaluate the full right-hand side of a catalog equation.

        ``skip`` drops single-factor terms matching the given factors
        (used to strip the principal derivative of a Hodge pair).
        """
        out = None
        m = self.mass
        for c, m_power, factors in cat.COMPILED[label]:
            if m_power:
                if m == 0.0:
                    continue
                c = c * m ** m_power
            if skip and len(factors) == 1 and factors[0] in skip:
                continue
            term = None
            for f in factors:
                arr = self.factor(f)
                term = arr if term is None else term * arr
            term = c * term if term is not None else c
            out = term if out is None else out + term
        if out is None:
            out = np.zeros_like(next(iter(self.env.values())))
        return out


# -- directional rates -------------------------------------------------------

# evolution equations, one per variable and direction
UCLASS_EQ = {
    "pi": "thornprimepi", "omega": "thornprimeomega", "eps": "Deltaepsilon",
    "mu": "thornprimemu", "lam": "thornprimelambda", "rho": "thornprimerho",
    "sigma": "thornprimesigma", "alpha": "Deltaalpha", "beta": "Deltabeta",
    "phi0": "EOMDiracL2", "chi0": "EOMDiracR2",
    "zeta0": "thornprimezeta0", "zeta1": "thornprimezeta1",
    "zeta2": "thornprimezeta2", "zeta3": "thornprimezeta3",
    "zeta4": "thornprimezeta4",
    "eta0": "thornprimeeta0", "eta1": "thornprimeeta1",
    "eta2": "thornprimeeta2", "eta3": "thornprimeeta3",
    "eta4": "thornprimeeta4",
    "Psi0": "thornprimePsi0", "Psi1t": "thornprimePsi1",
    "Psi2t": "thornprimePsi2", "Psi3t": "thornprimePsi3",
}

VCLASS_EQ = {
    "Q": "framecoefficient4", "tau": "thorntau", "vrho": "thornvarrho",
    "phi1": "EOMDiracL1", "chi1": "EOMDiracR1",
    "zeta5": "thornzeta5", "eta5": "thorneta5", "Psi4": "thornPsi4",
}

# D-direction (and A.5) equations for u-class variables, monitored only
TWIN_EQ = {
    "thornrho": "rho", "thornsigma": "sigma", "thornmu": "mu",
    "thornlambda": "lam", "thornpi": "~pi",
    "thornzeta1": "zeta1", "thornzeta2": "zeta2", "thornzeta3": "zeta3",
    "thornzeta4": "zeta4",
    "thorneta1": "eta1", "thorneta2": "eta2", "thorneta3": "eta3",
    "thorneta4": "eta4",
    "thornPsi1": "Psi1t", "thornPsi2": "Psi2t", "thornPsi3": "Psi3t",
    "Dbeta": "beta", "Dalpha": "alpha",
}


def frame_rates(ctx: KernelContext):
    """Delta-rates of the frame vectors C^A and P^A (framecoefficient1/2)."""
    env = ctx.env
    P, C = env["P"], env["C"]

    def comp(x):        # broadcast a scalar field over the component axis
        return x[..., None, :, :, :]

    tau, pi_ = comp(env["tau"]), comp(env["pi"])
    mu, lam = comp(env["mu"]), comp(env["lam"])
    cP = np.conj(P)
    dC = -(np.conj(tau) + pi_) * P - (tau + np.conj(pi_)) * cP
    dP = -mu * P - np.conj(lam) * cP
    return dC, dP


def rates_uclass(frame: AngularFrame, env: dict, mass: float) -> dict:
    """thorn'-rates (Delta-rates) of every u-advance variable.

    The caller converts to d/du by dividing by Q.  Requires the v-class
    fields to be present on the slice.
    """
    for name in V_CLASS:
        if name not in env:
            raise SequencingError(f"v-class variable {name!r} missing; "
                                  "reconstruct the slice first")
    ctx = KernelContext(frame, env, mass)
    rates = {name: ctx.rhs(eq) for name, eq in UCLASS_EQ.items()}
    rates["C"], rates["P"] = frame_rates(ctx)
    return rates


def thorn_to_dv(grid: AngularGrid, env: dict, name: str, rhs: np.ndarray):
    """Convert a thorn-rate to a coordinate d/dv rate.

    thorn f = d_v f + C^A d_A f + s (eps - conj eps) f, so
    d_v f = rhs - s (eps - conj eps) f - C^A d_A f.
    """
    f = env[name]
    s2 = S2[name]
    out = rhs.copy()
    if s2:
        eps = env["eps"]
        out -= (0.5 * s2) * (eps - np.conj(eps)) * f
    C = env["C"]
    fx, fy = grid.partial(f)
    out -= C[..., 0, :, :, :] * fx + C[..., 1, :, :, :] * fy
    return out


def rates_vclass(grid: AngularGrid, frame: AngularFrame, env: dict,
                 mass: float, precomputed: dict | None = None) -> dict:
    """Coordinate d/dv rates of the v-reconstruct class."""
    ctx = KernelContext(frame, env, mass, precomputed)
    out = {}
    for name, eq in VCLASS_EQ.items():
        out[name] = thorn_to_dv(grid, env, name, ctx.rhs(eq))
    return out


def vclass_derivative_factors():
    """The angular-derivative factors appearing in v-class equations.

    All of them act on u-advance fields (asserted), so they can be
    precomputed once per slice state and reused across the v integration.
    """
    out = set()
    for eq_label in VCLASS_EQ.values():
        for t in cat.CATALOG[eq_label].terms:
            for f in t.factors:
                if f.op is not None:
                    if f.var in VCLASS_EQ:
                        raise AssertionError(
                            f"{eq_label} differentiates v-class {f.var}")
                    out.add((f.var, f.conj, f.op))
    return sorted(out)


def precompute_factors(frame: AngularFrame, env: dict, keys) -> dict:
    """Batched evaluation of derivative factors for later cache seeding."""
    ctx = KernelContext(frame, env, 0.0)
    return {key: ctx.factor(cat.Factor(*key)) for key in keys}


def ricci_from_matter(frame: AngularFrame, env: dict, mass: float) -> dict:
    """Ricci components Phi00..Phi22 and Lambda from the matter fields."""
    ctx = KernelContext(frame, env, mass)
    out = {name: ctx.rhs(f"EDeq{k}") for k, name in enumerate(
        ("Phi00", "Phi01", "Phi02", "Phi11", "Phi12", "Phi22", "Lam"), 1)}
    out["Phi10"] = np.conj(out["Phi01"])
    out["Phi20"] = np.conj(out["Phi02"])
    out["Phi21"] = np.conj(out["Phi12"])
    return out


def untilded_weyl(frame: AngularFrame, env: dict, mass: float) -> dict:
    """Plain Weyl scalars from the renormalised state variables."""
    phi = ricci_from_matter(frame, env, mass)
    return {
        "Psi0": env["Psi0"],
        "Psi1": env["Psi1t"] + phi["Phi01"],
        "Psi2": env["Psi2t"] - 2.0 * phi["Lam"],
        "Psi3": env["Psi3t"] + phi["Phi21"],
        "Psi4": env["Psi4"],
    }


def gaussian_curvature(frame: AngularFrame, env: dict, mass: float):
    """K from the constraint formula (matter + connections + Weyl)."""
    return KernelContext(frame, env, mass).rhs("gauss_curvature")


def gaussian_curvature_geometric(grid: AngularGrid, P: np.ndarray):
    """K of the induced 2-metric, from the frame components alone.

    Uses the Brioschi formula on the Riemannian metric q_ab obtained by
    inverting -(P^A conj(P)^B + conj(P)^A P^B); derivatives are the grid's
    4th-order stencils, so this is a fully independent cross-check of the
    constraint formula.
    """
    px = P[..., 0, :, :, :]
    py = P[..., 1, :, :, :]
    mxx = 2.0 * np.abs(px) ** 2
    myy = 2.0 * np.abs(py) ** 2
    mxy = 2.0 * np.real(px * np.conj(py))
    det = mxx * myy - mxy ** 2
    # metric components are per-patch tensors: all derivatives use the
    # edge-closed stencils and only the final scalar K is synced
    E = (myy / det).astype(np.complex128)
    F = (-mxy / det).astype(np.complex128)
    G = (mxx / det).astype(np.complex128)
    Ex, Ey = grid.partial_full(E)
    Fx, Fy = grid.partial_full(F)
    Gx, Gy = grid.partial_full(G)
    _, Eyy = grid.partial_full(Ey)
    Fxy, _ = grid.partial_full(Fy)
    Gxx, _ = grid.partial_full(Gx)

    def det3(r0, r1, r2):
        return (r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
                - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
                + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))

    M1 = det3((-0.5 * Eyy + Fxy - 0.5 * Gxx, 0.5 * Ex, Fx - 0.5 * Ey),
              (Fy - 0.5 * Gx, E, F),
              (0.5 * Gy, F, G))
    M2 = det3((np.zeros_like(E), 0.5 * Ey, 0.5 * Gx),
              (0.5 * Ey, E, F),
              (0.5 * Gx, F, G))
    det2 = E * G - F * F
    K = (M1 - M2) / (det2 * det2)
    grid.sync_scalar(K, 0)
    return K


def reality_residuals(frame: AngularFrame, env: dict) -> dict:
    """L2(S) norms of the gauge reality and pi = alpha + conj(beta) defects."""
    out = {}
    for name in ("rho", "mu", "omega", "vrho"):
        out["Im_" + name] = 1j * np.imag(env[name])
    out["pi_gauge"] = env["pi"] - env["alpha"] - np.conj(env["beta"])
    return out
