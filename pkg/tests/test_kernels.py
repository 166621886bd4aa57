"""Right-hand-side kernels on reference states."""

import numpy as np
import pytest

from diracnull import background as bg
from diracnull import kernels
from diracnull.kernels import KernelContext, SequencingError
from diracnull.oracles import minkowski_state
from diracnull.registry import SCALARS, S2
from diracnull.sphere import make_grid


@pytest.fixture(scope="module")
def mink(grid17):
    sl = minkowski_state(grid17, 2.0, 0.04, np.linspace(0.0, 1.0, 5), 1.0)
    return sl


def frame_of(sl):
    from diracnull.sphere import AngularFrame
    P = sl.fields["P"]
    return AngularFrame(sl.grid, P[:, 0], P[:, 1], synced=True)


def test_uclass_rates_match_background(mink, grid17):
    fr = frame_of(mink)
    env = mink.env()
    rates = kernels.rates_uclass(fr, env, 1.0)
    own = grid17.owned
    assert np.abs(rates["mu"] + env["mu"] ** 2)[..., own].max() < 1e-13
    assert np.abs(rates["rho"] + env["mu"] * env["rho"])[..., own].max() < 1e-13
    for name in ("pi", "omega", "sigma", "lam", "Psi2t", "zeta3", "eta0",
                 "phi0", "chi0"):
        assert np.abs(rates[name])[..., own].max() < 1e-13, name


def test_vclass_rates_vanish_on_background(mink, grid17):
    fr = frame_of(mink)
    rates = kernels.rates_vclass(grid17, fr, mink.env(0), 1.0)
    for name, arr in rates.items():
        assert np.abs(arr)[..., grid17.owned].max() < 1e-13, name


def test_sequencing_error(grid17, mink):
    env = mink.env()
    env.pop("Psi4")
    with pytest.raises(SequencingError):
        kernels.rates_uclass(frame_of(mink), env, 1.0)


def test_zero_state_linearity_probe(grid17):
    # all dynamic fields zero on a round frame: every rate vanishes except
    # the ones forced by the frame data (here none, since rho = mu = 0 too)
    sl = minkowski_state(grid17, 2.0, 0.0, [0.0], 0.0)
    env = sl.env(0)
    zero = np.zeros((2, grid17.n, grid17.n), dtype=complex)
    for name in SCALARS:
        env[name] = zero.copy()
    env["Q"] = np.ones_like(zero)
    fr = frame_of(sl)
    rates = kernels.rates_uclass(fr, env, 0.0)
    own = grid17.owned
    for name, arr in rates.items():
        assert np.abs(arr)[..., own].max() < 1e-12, name


def test_ricci_from_matter_examples(grid17, mink):
    fr = frame_of(mink)
    env = mink.env(0)
    phi = kernels.ricci_from_matter(fr, env, 1.0)
    for name, arr in phi.items():
        assert np.abs(arr)[..., grid17.owned].max() == 0.0, name
    # constant phi1 / chi0: Lambda = (i m /3)(c d - conj(c d))
    c, d = 0.7 + 0.2j, -0.3 + 0.5j
    env2 = dict(env)
    env2["phi1"] = np.full_like(env["phi1"], c)
    env2["chi0"] = np.full_like(env["chi0"], d)
    phi2 = kernels.ricci_from_matter(fr, env2, 1.0)
    lam_want = (1j / 3.0) * (c * d - np.conj(c * d))
    assert np.abs(phi2["Lam"] - lam_want)[..., grid17.owned].max() < 1e-14
    # conjugate-transpose partners
    rng = np.random.default_rng(3)
    env3 = {k: rng.normal(size=v.shape) + 1j * rng.normal(size=v.shape)
            for k, v in env.items()}
    phi3 = kernels.ricci_from_matter(fr, env3, 1.3)
    assert np.allclose(phi3["Phi20"], np.conj(phi3["Phi02"]))
    assert np.allclose(phi3["Phi21"], np.conj(phi3["Phi12"]))


def test_gaussian_curvature_background(grid17):
    for u, v in ((0.0, 0.0), (0.05, 0.8)):
        sl = minkowski_state(grid17, 2.0, u, [v], 1.0)
        fr = frame_of(sl)
        K = kernels.gaussian_curvature(fr, sl.env(0), 1.0)
        r = bg.radius(2.0, u, v)
        assert np.abs(K - 1.0 / r ** 2)[..., grid17.owned].max() < 1e-12


def test_gaussian_curvature_zero_matter_form(grid17, mink):
    # with zero matter, K reduces to the connection/Weyl part exactly
    fr = frame_of(mink)
    rng = np.random.default_rng(11)
    env = mink.env(0)
    env = dict(env)
    for name in ("mu", "rho", "lam", "sigma", "Psi2t"):
        env[name] = rng.normal(size=env[name].shape) \
            + 1j * rng.normal(size=env[name].shape)
    K = kernels.gaussian_curvature(fr, env, 1.0)
    want = (-env["Psi2t"] - np.conj(env["Psi2t"]) + 2 * env["mu"] * env["rho"]
            - env["lam"] * env["sigma"]
            - np.conj(env["lam"]) * np.conj(env["sigma"]))
    assert np.abs(K - want)[..., grid17.owned].max() < 1e-12


def test_geometric_curvature_cross_check():
    errs, hs = [], []
    for n in (25, 41):
        g = make_grid(n, 3)
        sl = minkowski_state(g, 1.0, 0.0, [0.0], 0.0)
        Kg = kernels.gaussian_curvature_geometric(g, sl.fields["P"][0])
        errs.append(np.abs(Kg - 1.0)[..., g.owned].max())
        hs.append(g.h)
    rate = np.log(errs[0] / errs[1]) / np.log(hs[0] / hs[1])
    assert rate > 3.5


def test_rate_weights_match_variable_weights():
    # the audit guarantees it statically; spot-check the catalog mapping
    from diracnull import catalog as cat
    for name, label in kernels.UCLASS_EQ.items():
        eq = cat.CATALOG[label]
        if eq.lhs_s2() is None:
            continue
        assert eq.lhs_var == name
        assert eq.lhs_s2() == S2[name]
    for name, label in kernels.VCLASS_EQ.items():
        eq = cat.CATALOG[label]
        assert eq.lhs_s2() == S2[name]
