"""Symbolic verification that the flat reference satisfies the catalog.

Every geometric transport and constraint equation is evaluated with sympy
on the closed-form background (all matter and Weyl fields zero; rho, mu,
P, alpha, beta as recorded in the background module).  This re-derives the
convention constants from scratch: the signs of the expansions, the frame
connection, the operator direction conventions and the curvature
normalisation all have to be simultaneously consistent for these residuals
to vanish identically.
"""

import pytest

sp = pytest.importorskip("sympy")

from diracnull import catalog as cat
from diracnull.registry import S2

u, v, x, y, r0 = sp.symbols("u v x y r0", real=True, positive=False)
I = sp.I
z = x + I * y
zb = x - I * y
r = r0 + v - u / sp.Integer(2)
SQ2 = sp.sqrt(2)

P_SYM = (1 + x ** 2 + y ** 2) / (SQ2 * r)     # m = P d/dz
CONN = -zb / (SQ2 * r)                        # beta - conj(alpha)

zero = sp.Integer(0)
FIELDS = {name: zero for name in (
    "sigma", "lam", "tau", "pi", "omega", "eps", "vrho",
    "phi0", "phi1", "chi0", "chi1",
    "zeta0", "zeta1", "zeta2", "zeta3", "zeta4", "zeta5",
    "eta0", "eta1", "eta2", "eta3", "eta4", "eta5",
    "Psi0", "Psi1t", "Psi2t", "Psi3t", "Psi4",
    "Phi00", "Phi01", "Phi02", "Phi11", "Phi12", "Phi22", "Lam")}
FIELDS.update({
    "Q": sp.Integer(1), "rho": -1 / r, "mu": -1 / (2 * r),
    "alpha": z / (2 * SQ2 * r), "beta": -zb / (2 * SQ2 * r),
    "K": 1 / r ** 2,
})


def dz(e):
    return (sp.diff(e, x) - I * sp.diff(e, y)) / 2


def dzb(e):
    return (sp.diff(e, x) + I * sp.diff(e, y)) / 2


def delta(e):
    return P_SYM * dz(e)


def deltabar(e):
    return sp.conjugate(P_SYM) * dzb(e)


def apply_op(op, e, s2):
    if op == "thorn":
        return sp.diff(e, v)             # C = 0, eps real on the background
    if op == "thornp":
        return sp.diff(e, u)             # Q = 1, gamma = 0
    if op == "eth":
        return delta(e) + sp.Rational(s2, 2) * CONN * e
    if op == "ethp":
        return deltabar(e) - sp.Rational(s2, 2) * sp.conjugate(CONN) * e
    if op == "dl":
        return delta(e)
    if op == "dlb":
        return deltabar(e)
    raise AssertionError(op)


def field_expr(name, conj):
    e = FIELDS[name]
    return sp.conjugate(e) if conj else e


def s2_of_name(name, conj):
    s2 = S2[name]
    if s2 is None:
        return 0
    return -s2 if conj else s2


GEOMETRIC_LABELS = [
    "thornrho", "thornsigma", "thornmu", "thornlambda", "thornpi",
    "thorntau", "thornprimepi", "thornprimeomega", "thornprimemu",
    "thornprimelambda", "thornprimerho", "thornprimesigma", "thornvarrho",
    "mulambda", "rhosigma", "framecoefficient4", "framecoefficient6",
    "Dbeta", "Dalpha", "Deltabeta", "Deltaalpha", "Deltaepsilon",
    "alphabeta", "gauss_curvature",
]


@pytest.mark.parametrize("label", GEOMETRIC_LABELS)
def test_background_satisfies(label):
    eq = cat.CATALOG[label]
    if eq.lhs_op == "def":
        lhs = field_expr(eq.lhs_var, eq.lhs_conj)
    else:
        e = field_expr(eq.lhs_var, eq.lhs_conj)
        lhs = apply_op(eq.lhs_op, e, s2_of_name(eq.lhs_var, eq.lhs_conj))
    rhs = sp.Integer(0)
    for t in eq.terms:
        if t.m_power:
            continue                     # every mass term carries matter
        term = sp.nsimplify(t.coeff) * (I if t.ipow else 1)
        for f in t.factors:
            e = field_expr(f.var, f.conj)
            if f.op is not None:
                e = apply_op(f.op, e, s2_of_name(f.var, f.conj))
            term = term * e
        rhs = rhs + term
    resid = sp.simplify(sp.expand(lhs - rhs))
    assert resid == 0, f"{label}: residual {resid}"


def test_frame_connection_from_gradient():
    # the antisymmetrised frame gradient reproduces alpha - conj(beta):
    # deltabar P^A - delta conj(P)^A = X P^A - conj(X) conj(P)^A in the
    # complex component basis, where P^z = P and conj(P)^z = 0
    lhs_z = deltabar(P_SYM)
    X = FIELDS["alpha"] - sp.conjugate(FIELDS["beta"])
    assert sp.simplify(lhs_z - X * P_SYM) == 0
    assert sp.simplify(-CONN - sp.conjugate(X)) == 0


def test_round_commutator_and_eigenvalues():
    # unit sphere: (eth' eth - eth eth') f = -s f for T-weight s, and the
    # eigenvalue of eth' eth on the l = |s| top multiplet is zero while
    # eth eth' gives -(1/2)(l - s)(l + s + 1) with s read as -tweight
    subs0 = {r0: 1, u: 0, v: 0}
    for s2 in (-1, -2, -3, -4):
        l = sp.Rational(-s2, 2)
        f = zb * (1 + x ** 2 + y ** 2) ** sp.Rational(s2, 2)
        a = apply_op("ethp", apply_op("eth", f, s2).subs(subs0), s2 - 2)
        b = apply_op("eth", apply_op("ethp", f, s2).subs(subs0), s2 + 2)
        comm = sp.simplify((a - b).subs(subs0)
                           + sp.Rational(s2, 2) * f.subs(subs0))
        assert comm == 0, (s2, comm)
        # top multiplet: eth annihilates, so eth'eth f = 0 and
        # eth eth' f = +s_T f on the unit sphere (commutator value)
        ethf = sp.simplify(apply_op("eth", f, s2).subs(subs0))
        assert ethf == 0, (s2, ethf)
