"""Variable registry, weight audit and catalog integrity."""

from fractions import Fraction

import numpy as np
import pytest

from diracnull import catalog as cat
from diracnull.registry import (S2, SCALARS, SliceState, U_CLASS, V_CLASS,
                                StateError, weight_of)
from diracnull.sphere import SpinField, make_grid


def test_fixed_matter_weights():
    assert weight_of("zeta2") == Fraction(3, 2)
    assert weight_of("~zeta2") == Fraction(-3, 2)
    assert weight_of("zeta3") == Fraction(-3, 2)
    assert weight_of("phi0") == Fraction(-1, 2)
    assert weight_of("chi1") == Fraction(1, 2)
    assert weight_of("eta5") == Fraction(1, 2)


def test_unweighted_and_unknown():
    assert weight_of("alpha") is None
    assert weight_of("eps") is None
    with pytest.raises(StateError):
        weight_of("nonsense")


def test_audit_all_green():
    res = cat.audit_catalog()
    fails = [k for k, v in res.items() if v["verdict"] == "fail"]
    assert fails == []
    unweighted = sorted(k for k, v in res.items()
                        if v["verdict"] == "unweighted")
    assert unweighted == sorted(cat.UNWEIGHTED_LABELS)


def test_audit_catches_corruption():
    eq = cat.CATALOG["EOMDiracL1"]
    bad_terms = []
    for t in eq.terms:
        if t.m_power == 1:
            # replace conj(chi0) by chi0: weight flips, audit must fail
            bad_terms.append(cat.Term(t.coeff, t.ipow, t.m_power,
                                      (cat.Factor("chi0", False, None),)))
        else:
            bad_terms.append(t)
    bad = cat.Equation("corrupted", eq.lhs_op, eq.lhs_var, eq.lhs_conj,
                       tuple(bad_terms))
    res = cat.audit_equation(bad)
    assert res["verdict"] == "fail"
    assert any("chi0" in off[0] for off in res["offenders"])


def test_weight_assignment_unique():
    """Re-derive the derived weights from homogeneity, from scratch.

    With the matter and Upsilon weights fixed, homogeneity of the weighted
    catalog determines every remaining weight (and the eth shifts) as the
    unique solution of a linear system.
    """
    fixed = {v: S2[v] for v in S2
             if v.startswith(("phi", "chi", "zeta", "eta"))
             and S2[v] is not None}
    # Q multiplies both sides of its own relations, so homogeneity cannot
    # see its weight; it is pinned to zero by the gauge reality of Q
    fixed["Q"] = 0
    unknowns = sorted(v for v in S2 if v not in fixed and S2[v] is not None
                      and v not in ("P", "C", "K"))
    idx = {v: i for i, v in enumerate(unknowns)}
    rows, rhs = [], []

    def term_row(lhs_var, lhs_conj, lhs_op, t):
        """Homogeneity of one term as row . x = rhs over the unknowns."""
        row = np.zeros(len(unknowns))
        rhs = 0.0
        sign = -1 if lhs_conj else 1
        if lhs_var in idx:
            row[idx[lhs_var]] += sign
        else:
            rhs -= sign * fixed.get(lhs_var, 0)
        rhs -= {"eth": -2, "ethp": 2}.get(lhs_op, 0)
        for f in t.factors:
            s = -1 if f.conj else 1
            if f.var in idx:
                row[idx[f.var]] -= s
            elif f.var in fixed:
                rhs += s * fixed[f.var]
            else:
                return None
            if f.op in ("eth", "ethp"):
                rhs += {"eth": -2, "ethp": 2}[f.op]
        return row, rhs

    for label, eq in cat.CATALOG.items():
        if label in cat.UNWEIGHTED_LABELS:
            continue
        for t in eq.terms:
            out = term_row(eq.lhs_var, eq.lhs_conj, eq.lhs_op, t)
            if out is None:
                continue
            rows.append(out[0])
            rhs.append(out[1])
    A = np.array(rows)
    b = np.array(rhs)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    rank = np.linalg.matrix_rank(A)
    assert rank == len(unknowns), "weight system under-determined"
    resid = np.abs(A @ sol - b).max()
    assert resid < 1e-10, "no consistent assignment exists"
    for v in unknowns:
        assert round(sol[idx[v]]) == S2[v], (v, sol[idx[v]], S2[v])


def test_mass_filter():
    # every m-tagged term vanishes at m = 0: evaluate a representative RHS
    from diracnull.kernels import KernelContext
    from diracnull.background import round_frame
    g = make_grid(17, 3)
    fr = round_frame(g)
    rng = np.random.default_rng(5)
    env = {v: rng.normal(size=(2, g.n, g.n)) + 1j * rng.normal(size=(2, g.n, g.n))
           for v in SCALARS}
    ctx0 = KernelContext(fr, env, 0.0)
    ctx1 = KernelContext(fr, env, 1.0)
    eq = cat.CATALOG["EOMDiracL1"]
    m_terms = [t for t in eq.terms if t.m_power]
    assert m_terms, "expected a mass coupling"
    diff = ctx1.rhs("EOMDiracL1") - ctx0.rhs("EOMDiracL1")
    expect = sum(t.cvalue() * np.conj(env["chi0"]) for t in m_terms)
    assert np.abs(diff - expect)[..., g.owned].max() < 1e-12


def test_class_split_covers_every_variable():
    evolved = set(U_CLASS) | set(V_CLASS)
    assert evolved == set(SCALARS) | {"P", "C"} - set()


def test_state_accessors_and_conjugation():
    g = make_grid(17, 3)
    st = SliceState.empty(g, 0.0, np.linspace(0, 1, 5), 1.0)
    arr = np.full((5, 2, g.n, g.n), 1 + 2j)
    st.set("rho", arr)
    assert st.get("rho") is arr
    with pytest.raises(StateError):
        st.get("zeta9")
    f = SpinField(arr[0], 0)
    assert f.conj().conj().values == pytest.approx(f.values)
    real0 = SpinField(np.ones((2, g.n, g.n)) + 0j, 0)
    assert np.all(real0.conj().values == real0.values)


def test_manifest_mentions_repairs_and_hash():
    text = cat.manifest()
    assert "repaired" in text
    assert "catalog version" in text
    assert cat.catalog_hash() == cat.catalog_hash()
    # one line per term
    eq = cat.CATALOG["EOMDiracL2"]
    for t in eq.terms:
        assert f"EOMDiracL2: thornp(phi0) += {t.text()}" in text
