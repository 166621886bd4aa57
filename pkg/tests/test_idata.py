"""Cone-data construction against closed forms and self-consistency."""

import numpy as np
import pytest

from diracnull import background as bg
from diracnull import kernels
from diracnull.idata import assemble_cone_data, build_corner
from diracnull.oracles import (minkowski_free_data, pulse_free_data,
                               riccati_exact)
from diracnull.registry import SCALARS, U_CLASS, V_CLASS
from diracnull.sphere import make_grid


@pytest.fixture(scope="module")
def mink_cones(grid17):
    free = minkowski_free_data(grid17, 2.0, 1.0, 1.0, 0.0)
    return assemble_cone_data(free, n_u=32, n_v=64)


def test_corner_matches_background(grid17):
    free = minkowski_free_data(grid17, 2.0, 1.0, 1.0, 0.5)
    corner = build_corner(free)
    own = grid17.owned
    alpha, beta = bg.round_alpha_beta(grid17, 2.0)
    assert np.abs(corner["rho"] + 0.5)[..., own].max() < 1e-13
    assert np.abs(corner["mu"] + 0.25)[..., own].max() < 1e-13
    assert np.abs(corner["alpha"] - alpha)[..., own].max() < 1e-12
    assert np.abs(corner["beta"] - beta)[..., own].max() < 1e-12
    for name in ("Psi1t", "Psi2t", "Psi3t", "tau", "pi", "omega", "vrho",
                 "zeta0", "zeta3", "eta5", "phi0"):
        assert np.abs(corner[name])[..., own].max() < 1e-12, name


def test_corner_zero_matter_gives_zero_upsilon(grid17):
    free = pulse_free_data(grid17, 2.0, 1.0, 1.0, 1.0, 0.02,
                           with_matter=False)
    corner = build_corner(free)
    own = grid17.owned
    for fam in ("zeta", "eta"):
        for k in range(6):
            assert np.abs(corner[f"{fam}{k}"])[..., own].max() < 1e-14
    phi = kernels.ricci_from_matter(
        __import__("diracnull.sphere", fromlist=["AngularFrame"]).AngularFrame(
            grid17, corner["P"][0], corner["P"][1], synced=True),
        corner, 1.0)
    for name, arr in phi.items():
        assert np.abs(arr)[..., own].max() < 1e-14, name


def test_riccati_profiles(mink_cones, grid17):
    r0 = 2.0
    j = grid17.n // 2
    v = mink_cones.outgoing.v
    rho = mink_cones.outgoing.fields["rho"][:, 0, j, j]
    assert np.abs(rho - riccati_exact(-1 / r0, v, +1)).max() < 1e-8
    uu = mink_cones.ingoing.u
    mu = mink_cones.ingoing.fields["mu"][:, 0, j, j]
    assert np.abs(mu - riccati_exact(-0.5 / r0, uu, -1)).max() < 1e-8


def test_riccati_exact_values_and_blowup():
    assert riccati_exact(-1.0, 0.5, +1) == pytest.approx(-2.0 / 3.0)
    assert riccati_exact(-0.5, 0.0, -1) == pytest.approx(-0.5)
    with pytest.raises(FloatingPointError):
        riccati_exact(2.0, np.linspace(0, 1, 9), +1)


def test_ingoing_lambda_stays_zero(grid17):
    # zero matter and Psi4 = 0 keep lambda identically zero
    free = minkowski_free_data(grid17, 2.0, 0.5, 0.5, 0.0)
    cones = assemble_cone_data(free, 8, 8)
    assert np.abs(cones.ingoing.fields["lam"])[..., grid17.owned].max() < 1e-13


def test_outgoing_sigma_stays_zero(grid17, ):
    free = minkowski_free_data(grid17, 2.0, 0.5, 0.5, 0.0)
    cones = assemble_cone_data(free, 8, 8)
    assert np.abs(cones.outgoing.fields["sigma"])[..., grid17.owned].max() < 1e-13


def test_corner_compatibility(mink_cones):
    assert mink_cones.corner_defect < 1e-10


def test_cone_self_convergence():
    # generic smooth free data: 4th-order self-convergence of the builder
    diffs = []
    grid = make_grid(17, 3)
    free = pulse_free_data(grid, 2.0, 0.6, 0.4, 1.0, 0.05)
    fine = assemble_cone_data(free, 16, 32)
    coarse = assemble_cone_data(free, 8, 16)
    own = grid.owned
    for name in ("rho", "phi1", "zeta2", "Psi1t"):
        a = coarse.outgoing.fields[name][-1]
        b = fine.outgoing.fields[name][-1]
        diffs.append(np.abs(a - b)[..., own].max())
    coarser = assemble_cone_data(free, 4, 8)
    diffs2 = []
    for name in ("rho", "phi1", "zeta2", "Psi1t"):
        a = coarser.outgoing.fields[name][-1]
        b = coarse.outgoing.fields[name][-1]
        diffs2.append(np.abs(a - b)[..., own].max())
    rates = np.log2(np.array(diffs2) / np.array(diffs))
    assert (rates > 3.5).all(), rates


def test_unused_relations_hold_on_outgoing():
    # residuals of relations not used by the hierarchy shrink on the built
    # cone when every grid is refined together
    from diracnull import diagnostics as dg
    res = {}
    for key, (n, n_u, n_v) in (("coarse", (17, 6, 12)),
                               ("fine", (25, 12, 24))):
        grid = make_grid(n, 3)
        free = pulse_free_data(grid, 2.0, 0.6, 0.4, 1.0, 0.02)
        cones = assemble_cone_data(free, n_u, n_v)
        table = dg.constraint_residuals(cones.outgoing, relative=False)
        res[key] = {k: float(np.max(table[k])) for k in
                    ("zeta3zeta1", "zeta4zeta2", "eta3eta1", "eta4eta2",
                     "framecoefficient5", "framecoefficient6")}
    for k in res["coarse"]:
        if res["coarse"][k] < 1e-12:
            continue
        assert res["fine"][k] < 0.5 * res["coarse"][k], k


def test_hierarchy_causality():
    """No equation marched on a cone reads a variable produced later.

    The ingoing march uses v-class slots from free data and gauge only;
    the outgoing march likewise never reads a u-marched quantity before
    the corner provides it.  Statically: every variable referenced by a
    marched equation is either marched itself, given, or corner data.
    """
    from diracnull import catalog as cat
    from diracnull.idata import OUTGOING_EQ, OUTGOING_GIVEN
    marched = set(OUTGOING_EQ) | {"P"}
    given = set(OUTGOING_GIVEN) | {"Q"}
    for name, label in OUTGOING_EQ.items():
        for t in cat.CATALOG[label].terms:
            for f in t.factors:
                assert f.var in marched or f.var in given or f.var == "pi", \
                    (label, f.var)
    vready = set(V_CLASS) | {"omega", "eps"} | {"P", "C", "Q"}
    for name, label in kernels.UCLASS_EQ.items():
        for t in cat.CATALOG[label].terms:
            for f in t.factors:
                assert f.var in U_CLASS or f.var in vready, (label, f.var)
