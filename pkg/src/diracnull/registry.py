"""Variable catalog, T-weights and the per-slice state container.

T-weights are stored doubled (``s2 = 2 s``) so half-integer weights stay
exact.  The matter and Upsilon weights are fixed inputs of the formalism;
the remaining weights are the unique assignment making every transport
equation weight-homogeneous (the test suite re-derives them from the
equation catalog from scratch).  ``alpha``, ``beta`` and ``eps`` carry no
T-weight: they are patch-frame connection components, excluded from the
weight audit and never carried across patches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .sphere import AngularGrid, AngularFrame, SpinField

# evolved scalar fields, in a fixed canonical order
SCALARS = (
    "Q", "rho", "sigma", "mu", "lam", "tau", "pi", "omega", "eps", "vrho",
    "alpha", "beta",
    "phi0", "phi1", "chi0", "chi1",
    "zeta0", "zeta1", "zeta2", "zeta3", "zeta4", "zeta5",
    "eta0", "eta1", "eta2", "eta3", "eta4", "eta5",
    "Psi0", "Psi1t", "Psi2t", "Psi3t", "Psi4",
)

# vector fields (two coordinate components each)
VECTORS = ("P", "C")

# derived quantities (defined pointwise from the state, never evolved)
DERIVED = ("Phi00", "Phi01", "Phi02", "Phi11", "Phi12", "Phi22", "Lam", "K")

ALL_VARIABLES = SCALARS + VECTORS + DERIVED

# doubled T-weights; None marks the unweighted patch-frame quantities
S2 = {
    "Q": 0, "rho": 0, "sigma": -4, "mu": 0, "lam": 4, "tau": -2, "pi": 2,
    "omega": 0, "eps": None, "vrho": 0, "alpha": None, "beta": None,
    "phi0": -1, "phi1": 1, "chi0": -1, "chi1": 1,
    "zeta0": -1, "zeta1": 1, "zeta2": 3, "zeta3": -3, "zeta4": -1, "zeta5": 1,
    "eta0": -1, "eta1": 1, "eta2": 3, "eta3": -3, "eta4": -1, "eta5": 1,
    "Psi0": -4, "Psi1t": -2, "Psi2t": 0, "Psi3t": 2, "Psi4": 4,
    "P": -2, "C": 0,
    "Phi00": 0, "Phi01": -2, "Phi02": -4, "Phi11": 0, "Phi12": -2,
    "Phi22": 0, "Lam": 0, "K": 0,
}

# fields evolved along the u direction (thorn'-class) versus reconstructed
# along v on every slice (thorn-class); each variable has exactly one
# evolution equation
U_CLASS = (
    "C", "P", "pi", "omega", "eps", "mu", "lam", "rho", "sigma",
    "alpha", "beta", "phi0", "chi0",
    "zeta0", "zeta1", "zeta2", "zeta3", "zeta4",
    "eta0", "eta1", "eta2", "eta3", "eta4",
    "Psi0", "Psi1t", "Psi2t", "Psi3t",
)
V_CLASS = ("Q", "tau", "vrho", "phi1", "chi1", "zeta5", "eta5", "Psi4")

# fields required to be real (within tolerance) by the gauge
REAL_FIELDS = ("rho", "mu", "omega", "vrho")


class StateError(KeyError):
    """Raised for missing or unknown variables on a slice."""


def weight_of(name: str):
    """T-weight of a variable as a Fraction, or None if unweighted."""
    base = name[1:] if name.startswith("~") else name
    if base not in S2:
        raise StateError(f"unknown variable {base!r}")
    s2 = S2[base]
    if s2 is None:
        return None
    return Fraction(-s2 if name.startswith("~") else s2, 2)


def s2_of(name: str):
    """Doubled T-weight, handling a '~' conjugation prefix; None if unweighted."""
    base = name[1:] if name.startswith("~") else name
    if base not in S2:
        raise StateError(f"unknown variable {base!r}")
    s2 = S2[base]
    if s2 is None:
        return None
    return -s2 if name.startswith("~") else s2


def conjugate_field(f: SpinField) -> SpinField:
    return f.conj()


@dataclass
class SliceState:
    """Every field on one u = const slice, sampled on the v grid.

    Scalar fields are arrays of shape (n_v, 2, n, n); the vector fields P
    and C carry an extra leading component axis of size 2.  ``u`` is the
    retarded-time label of the slice and ``mass`` the Dirac coupling.
    """

    grid: AngularGrid
    u: float
    v: np.ndarray                       # (n_v,) strictly increasing
    mass: float
    fields: dict = field(default_factory=dict)

    @classmethod
    def empty(cls, grid, u, v, mass):
        nv = len(v)
        st = cls(grid, float(u), np.asarray(v, dtype=float), float(mass))
        for name in SCALARS:
            st.fields[name] = grid.zeros(nv)
        for name in VECTORS:
            st.fields[name] = grid.zeros(nv, 2)
        return st

    def get(self, name: str) -> np.ndarray:
        try:
            return self.fields[name]
        except KeyError:
            raise StateError(f"variable {name!r} not on slice") from None

    def set(self, name: str, values: np.ndarray):
        if name not in SCALARS and name not in VECTORS:
            raise StateError(f"unknown variable {name!r}")
        self.fields[name] = values

    def spin_field(self, name: str, j: int) -> SpinField:
        s2 = S2[name]
        if s2 is None:
            raise StateError(f"{name!r} carries no T-weight")
        return SpinField(self.get(name)[j], s2)

    def copy(self) -> "SliceState":
        st = SliceState(self.grid, self.u, self.v.copy(), self.mass)
        st.fields = {k: v.copy() for k, v in self.fields.items()}
        return st

    def env(self, j=None) -> dict:
        """Variable -> raw array view, at one v index or the whole slice."""
        if j is None:
            return dict(self.fields)
        return {k: v[j] for k, v in self.fields.items()}


def env_reality_defects(env: dict, frame: AngularFrame) -> dict:
    """L2(S) norms of the imaginary parts of the gauge-real fields."""
    return {name: frame.norm_lp(1j * np.imag(env[name]), 2)
            for name in REAL_FIELDS if name in env}
