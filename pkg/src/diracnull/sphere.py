"""Two-patch angular grid on topological 2-spheres and weighted calculus.

The sphere is covered by two overlapping stereographic patches (north and
south), each carrying a uniform square grid in the complex stereographic
coordinate ``zeta = x + i y``.  The patches are glued along the equatorial
annulus: the transition map is ``zeta_S = 1 / zeta_N`` and the two patch
dyads differ by the fixed rotation ``exp(i theta_t) = -(zeta/|zeta|)**2``
(expressed in target-patch coordinates).  A quantity of T-weight ``s``
picks up the factor ``E**(2s)`` with ``E = i zeta/|zeta|`` when carried to
the other patch, so half-integer weights are single-valued once the branch
of ``E`` is fixed; that branch choice is part of the grid.

Derivatives are 4th-order centred finite differences.  Points too close to
the patch edge to be computed locally ("halo" points, beyond the sync
radius) are filled by 4th-order Lagrange interpolation from the partner
patch.  Integration uses a C^2 partition of unity in the log radius so the
two patches never double count.

Sign conventions follow the transport equations of the evolution system:
``eth`` lowers the T-weight by one and ``eth_prime`` raises it (T-weight is
minus the classical spin weight), and the operators are normalised so that
the scalar sphere Laplacian is ``2 eth eth_prime``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import sparse

NORTH, SOUTH = 0, 1

# 4th-order centred first-derivative stencil.
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


class GridError(ValueError):
    """Raised for geometrically infeasible or undersized grids."""


class SingularFrameError(ValueError):
    """Raised when the angular frame degenerates (vanishing area element)."""


class WeightError(ValueError):
    """Raised when an operation receives a field of the wrong T-weight."""


def _smoothstep(t):
    """Mollifier-based smooth step with S(t) + S(1-t) = 1 (C^infinity)."""
    t = np.clip(t, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        qa = np.where(t > 0.0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        qb = np.where(t < 1.0, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return qa / (qa + qb)


@dataclass(frozen=True)
class SpinField:
    """A complex scalar of definite T-weight sampled on both patches.

    Values are components relative to each patch's coordinate dyad; the
    doubled weight ``s2 = 2 s`` is stored so half-integer weights stay
    exact.
    """

    values: np.ndarray  # (..., 2, n, n) complex
    s2: int

    @property
    def tweight(self) -> Fraction:
        return Fraction(self.s2, 2)

    def conj(self) -> "SpinField":
        return SpinField(np.conj(self.values), -self.s2)

    def __add__(self, other):
        if isinstance(other, SpinField):
            if other.s2 != self.s2:
                raise WeightError(
                    f"cannot add weights {self.tweight} and {other.tweight}")
            return SpinField(self.values + other.values, self.s2)
        return SpinField(self.values + other, self.s2)

    def __sub__(self, other):
        if isinstance(other, SpinField):
            if other.s2 != self.s2:
                raise WeightError(
                    f"cannot subtract weights {self.tweight} and {other.tweight}")
            return SpinField(self.values - other.values, self.s2)
        return SpinField(self.values - other, self.s2)

    def __mul__(self, other):
        if isinstance(other, SpinField):
            return SpinField(self.values * other.values, self.s2 + other.s2)
        return SpinField(self.values * other, self.s2)

    __rmul__ = __mul__


class AngularGrid:
    """Two stereographic patches with transition maps and sync machinery.

    Parameters
    ----------
    n : int
        Points per patch side.
    overlap : int
        Width of the two-patch overlap band in grid cells (>= 3).

    Notes
    -----
    The square half-width ``R`` and the sync radius are solved from the
    requirements that (a) every point farther than the sync radius from
    the patch centre can be interpolated from partner points that are
    themselves inside the partner's sync radius (no circular dependency),
    (b) centred 5-point stencils fit at every owned point, and (c) the
    owned regions overlap by ``overlap`` cells.  Infeasible (n, overlap)
    combinations raise :class:`GridError`.
    """

    def __init__(self, n: int, overlap: int):
        if n < 9:
            raise GridError(f"n={n} below minimum 9 for 4th-order stencils")
        if overlap < 3:
            raise GridError(f"overlap={overlap} below minimum 3")
        self.n = int(n)
        self.overlap = int(overlap)
        self._solve_geometry()
        self._build_coords()
        self._build_interpolation()
        self._build_quadrature()

    # -- construction -----------------------------------------------------

    #: log-radius width of the inter-patch blending band.  Held fixed in
    #: physical size (not in cells) so that blended patch-mismatch errors
    #: keep O(h^4) derivatives under repeated differentiation.
    BLEND_WIDTH = 0.16

    def _solve_geometry(self):
        n, b = self.n, self.overlap
        margin = 1.05
        reach = 3.0 * np.sqrt(2.0)   # 6-point interpolation, diagonal reach
        R = 1.5
        core = sync = 1.0
        for _ in range(200):
            h = 2.0 * R / (n - 1)
            # core radius: interpolation sources for any synced point must
            # lie inside the partner's core (no circular dependency)
            q = margin * reach * h
            core = 0.5 * (q + np.sqrt(q * q + 4.0))
            core = max(core, 1.0 + 0.5 * b * h - (np.exp(self.BLEND_WIDTH) - 1.0))
            sync = core * np.exp(self.BLEND_WIDTH)
            R_new = sync + 2.0 * h * margin
            if not np.isfinite(R_new) or R_new > 50.0:
                raise GridError(
                    f"grid (n={n}, overlap={b}) infeasible: stencil and "
                    f"overlap do not fit between equator and patch edge")
            if abs(R_new - R) < 1e-13:
                R = R_new
                break
            R = R_new
        else:
            raise GridError(f"grid (n={n}, overlap={b}) infeasible: no fixed point")
        self.R = R
        self.h = 2.0 * R / (n - 1)
        self.r_core = core
        self.r_sync = sync
        if 1.0 / core + reach * self.h > core + 1e-12:
            raise GridError(
                f"grid (n={n}, overlap={b}) infeasible: interpolation "
                f"sources cannot stay inside the partner core")

    def _build_coords(self):
        n = self.n
        ax = np.linspace(-self.R, self.R, n)
        self.x1d = ax
        X, Y = np.meshgrid(ax, ax, indexing="ij")
        self.X, self.Y = X, Y
        self.zeta = X + 1j * Y
        self.rad = np.abs(self.zeta)
        self.halo = self.rad > self.r_sync
        self.owned = ~self.halo
        self.core = self.rad <= self.r_core
        # points refreshed from the partner on every sync: the halo is
        # overwritten, the band is smoothly blended with own values
        self.synced = self.rad > self.r_core
        with np.errstate(divide="ignore"):
            ell = np.log(np.maximum(self.rad, 1e-300))
        wband = 1.0 - _smoothstep(
            (ell - np.log(self.r_core)) / self.BLEND_WIDTH)
        self.blend_own = wband[self.synced]
        self.blend_own[self.rad[self.synced] > self.r_sync] = 0.0
        # branch-fixed half transition phases at the sync points.  The two
        # directions carry opposite branches so that the spinor cocycle
        # condition t_NS * t_SN = 1 holds for half-integer weights.
        zs = self.zeta[self.synced]
        self.E_to_south = 1j * zs / np.abs(zs)
        self.E_to_north = -1j * zs / np.abs(zs)
        self._phase_cache = {}

    def _phases(self, s2: int):
        hit = self._phase_cache.get(s2)
        if hit is None:
            if s2:
                hit = (self.E_to_south ** s2, self.E_to_north ** s2)
            else:
                one = np.ones_like(self.E_to_south)
                hit = (one, one)
            self._phase_cache[s2] = hit
        return hit
        if np.any(self.rad[self.owned] > self.R - 2.0 * self.h + 1e-12):
            raise GridError("owned region leaks into the stencil margin")

    def _build_interpolation(self):
        # image of each synced point in the partner patch and quintic
        # Lagrange gather weights (6x6 per point, O(h^6): two orders above
        # the FD stencil so synced values survive repeated differentiation)
        zs = self.zeta[self.synced]
        img = 1.0 / zs
        n, h, R = self.n, self.h, self.R
        npt = 6
        ix = np.clip(np.floor((img.real + R) / h).astype(int) - 2, 0, n - npt)
        iy = np.clip(np.floor((img.imag + R) / h).astype(int) - 2, 0, n - npt)
        wx = self._lagrange_weights((img.real - (-R + ix * h)) / h, npt)
        wy = self._lagrange_weights((img.imag - (-R + iy * h)) / h, npt)
        w = wx[:, :, None] * wy[:, None, :]        # (ns, 6, 6)
        cols = (ix[:, None, None] + np.arange(npt)[None, :, None]) * n \
            + (iy[:, None, None] + np.arange(npt)[None, None, :])
        self._interp_cols = cols.reshape(len(zs), npt * npt)
        self._interp_w = w.reshape(len(zs), npt * npt)
        src_rad = np.abs(self.zeta.reshape(-1)[self._interp_cols])
        if np.any(src_rad > self.r_core + 1e-12):
            raise GridError("interpolation sources reach outside the core")
        self._sync_flat = np.flatnonzero(self.synced.reshape(-1))
        ns = len(zs)
        rows = np.repeat(np.arange(ns), npt * npt)
        self._interp_mat = sparse.csr_matrix(
            (self._interp_w.ravel(), (rows, self._interp_cols.ravel())),
            shape=(ns, n * n))

    def _gather(self, flat_side: np.ndarray) -> np.ndarray:
        """Interpolate partner-patch data at the sync images.

        ``flat_side``: (..., n*n) values of one patch; returns (..., ns).
        """
        lead = flat_side.shape[:-1]
        arr = flat_side.reshape(-1, flat_side.shape[-1])
        out = self._interp_mat.dot(arr.T).T
        return out.reshape(lead + (out.shape[-1],))

    @staticmethod
    def _lagrange_weights(t, npt=6):
        """Lagrange weights on nodes {0..npt-1} for offset t."""
        t = np.asarray(t)[..., None]
        nodes = np.arange(npt, dtype=float)
        diff = t - nodes
        w = np.empty(t.shape[:-1] + (npt,))
        for j in range(npt):
            others = [k for k in range(npt) if k != j]
            num = np.prod(diff[..., others], axis=-1)
            den = np.prod(nodes[j] - nodes[others])
            w[..., j] = num / den
        return w

    def _build_quadrature(self):
        # C^2 partition of unity in log radius; support ends inside r_sync
        L = 0.9 * np.log(self.r_sync)
        with np.errstate(divide="ignore"):
            ell = np.where(self.rad > 0, np.log(np.maximum(self.rad, 1e-300)), -50.0)
        self.pou = 1.0 - _smoothstep((ell + L) / (2.0 * L))
        self.pou[self.halo] = 0.0

    # -- field plumbing ----------------------------------------------------

    def zeros(self, *lead) -> np.ndarray:
        return np.zeros(lead + (2, self.n, self.n), dtype=np.complex128)

    def sync_scalar(self, vals: np.ndarray, s2: int) -> np.ndarray:
        """Refresh the overlap of a weight-s field from the partner patch.

        Halo points are overwritten; band points are blended smoothly with
        the patch's own values.  Operates in place on ``vals`` with shape
        (..., 2, n, n); returns it.
        """
        flat = vals.reshape(vals.shape[:-3] + (2, -1))
        gathered_n = self._gather(flat[..., NORTH, :])
        gathered_s = self._gather(flat[..., SOUTH, :])
        fac_s, fac_n = self._phases(s2)
        w = self.blend_own
        idx = self._sync_flat
        vs = flat[..., SOUTH, :]
        vn = flat[..., NORTH, :]
        vs[..., idx] = w * vs[..., idx] + (1.0 - w) * (fac_s * gathered_n)
        vn[..., idx] = w * vn[..., idx] + (1.0 - w) * (fac_n * gathered_s)
        if not np.shares_memory(flat, vals):
            vals[...] = flat.reshape(vals.shape)
        return vals

    def sync_multi(self, vals: np.ndarray, s2_list) -> np.ndarray:
        """Sync a stack of fields of different weights in one gather.

        ``vals`` has shape (m, ..., 2, n, n) with ``s2_list`` of length m.
        """
        flat = vals.reshape(vals.shape[:-3] + (2, -1))
        gathered_n = self._gather(flat[..., NORTH, :])
        gathered_s = self._gather(flat[..., SOUTH, :])
        shape = (len(s2_list),) + (1,) * (vals.ndim - 4) + (-1,)
        pairs = [self._phases(s2) for s2 in s2_list]
        fac_s = np.stack([p[0] for p in pairs]).reshape(shape)
        fac_n = np.stack([p[1] for p in pairs]).reshape(shape)
        w = self.blend_own
        idx = self._sync_flat
        vs = flat[..., SOUTH, :]
        vn = flat[..., NORTH, :]
        vs[..., idx] = w * vs[..., idx] + (1.0 - w) * (fac_s * gathered_n)
        vn[..., idx] = w * vn[..., idx] + (1.0 - w) * (fac_n * gathered_s)
        if not np.shares_memory(flat, vals):
            vals[...] = flat.reshape(vals.shape)
        return vals

    def sync_vector(self, vx: np.ndarray, vy: np.ndarray, dyad: bool):
        """Refresh the overlap of a tangent-vector field (coord components).

        ``dyad=True`` applies the dyad rotation on top of the coordinate
        Jacobian (for the frame vector m); ``dyad=False`` is the plain
        push-forward (for the real shift vector C).
        """
        a = vx + 1j * vy          # component along d/dzeta
        b = vx - 1j * vy          # component along d/dzetabar
        w = self.blend_own
        zs = self.zeta[self.synced]
        for arr, jac in ((a, -zs * zs), (b, -np.conj(zs) ** 2)):
            flat = arr.reshape(arr.shape[:-3] + (2, -1))
            gn = self._gather(flat[..., NORTH, :])
            gs = self._gather(flat[..., SOUTH, :])
            fac_s = fac_n = jac
            if dyad:
                fac_s = jac * self.E_to_south ** (-2)
                fac_n = jac * self.E_to_north ** (-2)
            as_ = arr[..., SOUTH, :, :]
            an_ = arr[..., NORTH, :, :]
            as_[..., self.synced] = w * as_[..., self.synced] + (1.0 - w) * fac_s * gn
            an_[..., self.synced] = w * an_[..., self.synced] + (1.0 - w) * fac_n * gs
        vx[...] = 0.5 * (a + b)
        vy[...] = -0.5j * (a - b)
        return vx, vy

    def partial(self, vals: np.ndarray):
        """4th-order coordinate partials d/dx, d/dy of (..., 2, n, n) data.

        Valid on the stencil region (2 cells in from the edge); the outer
        two rings of the returned arrays are zero and must be synced by the
        caller if needed.
        """
        fx = np.zeros_like(vals)
        fy = np.zeros_like(vals)
        inv = 1.0 / self.h
        core = (slice(None),) * (vals.ndim - 2)
        for k, c in enumerate(_D1):
            if c == 0.0:
                continue
            sh = k - 2
            fx[core + (slice(2, -2), slice(None))] += (
                c * inv) * vals[core + (slice(2 + sh, vals.shape[-2] - 2 + sh), slice(None))]
            fy[core + (slice(None), slice(2, -2))] += (
                c * inv) * vals[core + (slice(None), slice(2 + sh, vals.shape[-1] - 2 + sh))]
        return fx, fy

    def partial_full(self, vals: np.ndarray):
        """Coordinate partials valid on the whole square.

        Centred 4th-order stencils in the interior with 4th-order one-sided
        closures on the outer two rings; used for per-patch tensor algebra
        (quantities that cannot be synced across patches).
        """
        fx, fy = self.partial(vals)
        inv = 1.0 / self.h
        edge = np.array([[-25.0, 48.0, -36.0, 16.0, -3.0],
                         [-3.0, -10.0, 18.0, -6.0, 1.0]]) / 12.0
        n = self.n
        for r, coeffs in enumerate(edge):
            fx[..., r, :] = inv * sum(
                c * vals[..., k, :] for k, c in enumerate(coeffs))
            fx[..., n - 1 - r, :] = -inv * sum(
                c * vals[..., n - 1 - k, :] for k, c in enumerate(coeffs))
            fy[..., :, r] = inv * sum(
                c * vals[..., :, k] for k, c in enumerate(coeffs))
            fy[..., :, n - 1 - r] = -inv * sum(
                c * vals[..., :, n - 1 - k] for k, c in enumerate(coeffs))
        return fx, fy

    def interp_roundtrip_error(self) -> float:
        """Max error of syncing a smooth weight-0 field versus truth."""
        f = np.empty((2, self.n, self.n), dtype=np.complex128)
        truth = (1.0 - self.rad ** 2) / (1.0 + self.rad ** 2)
        f[NORTH] = truth
        f[SOUTH] = -truth
        g = f.copy()
        self.sync_scalar(g, 0)
        return float(np.max(np.abs(g - f)))


def make_grid(n: int, overlap: int = 4) -> AngularGrid:
    """Build the two-patch angular grid; rejects infeasible sizes."""
    return AngularGrid(n, overlap)


class AngularFrame:
    """Angular dyad data derived from the frame components P^A.

    Holds the complex components (px, py) of the frame vector on each
    patch, the connection scalar ``beta - conj(alpha)`` obtained pointwise
    from the frame-gradient relation, and the induced area element.  All
    weighted angular operators live here.
    """

    def __init__(self, grid: AngularGrid, px: np.ndarray, py: np.ndarray,
                 *, synced: bool = False):
        self.grid = grid
        self.px = np.array(px, dtype=np.complex128, copy=True)
        self.py = np.array(py, dtype=np.complex128, copy=True)
        if not synced:
            grid.sync_vector(self.px, self.py, dyad=True)
        im = np.imag(self.px * np.conj(self.py))
        if np.any(np.abs(im[..., grid.owned]) < 1e-14):
            raise SingularFrameError("area element vanished")
        if np.any(im[..., grid.owned] < 0.0):
            raise SingularFrameError("frame orientation flipped")
        self.area_density = 1.0 / (2.0 * im)
        self.conn = self._derive_connection()

    def view(self, j) -> "AngularFrame":
        """Constant-time view of one leading index of a batched frame."""
        out = object.__new__(AngularFrame)
        out.grid = self.grid
        out.px = self.px[j]
        out.py = self.py[j]
        out.area_density = self.area_density[j]
        out.conn = self.conn[j]
        out._conn_defect = self._conn_defect
        return out

    def _derive_connection(self):
        """Solve the antisymmetrised frame gradient for beta - conj(alpha).

        The relation ``deltabar P - delta Pbar = (alpha - conj(beta)) P -
        conj(alpha - conj(beta)) Pbar`` is a pointwise 2x2 linear system for
        X = alpha - conj(beta); the connection scalar is -conj(X).  Edge-
        closed stencils keep the result valid on the whole square (the
        connection is a patch quantity and is never synced).
        """
        g = self.grid
        pxx, pxy = g.partial_full(self.px)
        pyx, pyy = g.partial_full(self.py)
        cpx, cpy = np.conj(self.px), np.conj(self.py)
        # deltabar P^A  =  conj(P)^B  d_B  P^A
        lx = cpx * pxx + cpy * pxy - (self.px * np.conj(pxx) + self.py * np.conj(pxy))
        ly = cpx * pyx + cpy * pyy - (self.px * np.conj(pyx) + self.py * np.conj(pyy))
        det = -(self.px * cpy - cpx * self.py)
        x = (-cpy * lx + cpx * ly) / det
        xbar = (-self.py * lx + self.px * ly) / det
        self._conn_defect = np.max(np.abs((xbar - np.conj(x))[..., self.grid.owned]))
        return -np.conj(x)

    # -- weighted derivatives ----------------------------------------------

    def delta_raw(self, vals):
        fx, fy = self.grid.partial_full(vals)
        return self.px * fx + self.py * fy

    def deltabar_raw(self, vals):
        fx, fy = self.grid.partial_full(vals)
        return np.conj(self.px) * fx + np.conj(self.py) * fy

    def eth_raw(self, vals: np.ndarray, s2: int) -> np.ndarray:
        """eth on raw values of doubled weight s2; output weight s2 - 2."""
        out = self.delta_raw(vals)
        if s2:
            out += (0.5 * s2) * self.conn * vals
        return self.grid.sync_scalar(out, s2 - 2)

    def ethp_raw(self, vals: np.ndarray, s2: int) -> np.ndarray:
        """eth' on raw values of doubled weight s2; output weight s2 + 2."""
        out = self.deltabar_raw(vals)
        if s2:
            out -= (0.5 * s2) * np.conj(self.conn) * vals
        return self.grid.sync_scalar(out, s2 + 2)

    def eth(self, f: SpinField) -> SpinField:
        return SpinField(self.eth_raw(f.values, f.s2), f.s2 - 2)

    def eth_prime(self, f: SpinField) -> SpinField:
        return SpinField(self.ethp_raw(f.values, f.s2), f.s2 + 2)

    # -- integration and norms ----------------------------------------------

    def integral(self, vals: np.ndarray, s2: int = 0) -> complex:
        """Integral of a weight-0 scalar over the sphere."""
        if s2 != 0:
            raise WeightError(f"sphere integral needs weight 0, got {s2 / 2}")
        g = self.grid
        w = g.pou * g.h ** 2
        return complex((vals * self.area_density * w).sum((-3, -2, -1)))

    def integrate_scalar(self, vals: np.ndarray) -> np.ndarray:
        """Batched weight-0 integral; reduces the trailing (2, n, n) axes."""
        g = self.grid
        w = g.pou * g.h ** 2
        return (vals * self.area_density * w).sum((-3, -2, -1))

    def norm_lp(self, vals: np.ndarray, p) -> float:
        """L^p(S) norm, p in {2, 4, inf}, of arbitrary-weight values."""
        a2 = np.abs(vals) ** 2
        if p == 2:
            return float(np.sqrt(np.real(self.integrate_scalar(a2))))
        if p == 4:
            return float(np.real(self.integrate_scalar(a2 * a2)) ** 0.25)
        if p in ("inf", np.inf):
            return float(np.sqrt(np.max(a2[..., self.grid.owned], initial=0.0)))
        raise ValueError(f"unsupported p={p!r}")

    def norms(self, vals: np.ndarray):
        return {2: self.norm_lp(vals, 2), 4: self.norm_lp(vals, 4),
                "inf": self.norm_lp(vals, "inf")}


def d_strings(frame: AngularFrame, vals: np.ndarray, s2: int, k: int):
    """All ordered strings of {eth, eth'} of length exactly k applied to vals.

    Returns a dict mapping the string (tuple of '+'/'-' with '-' = eth,
    '+' = eth') to the resulting raw array.
    """
    if k < 0 or k > 4:
        raise ValueError("string order k must be in 0..4 (norm suite scope)")
    out = {(): (vals, s2)}
    for _ in range(k):
        nxt = {}
        for key, (v, w2) in out.items():
            nxt[key + ("-",)] = (frame.eth_raw(v, w2), w2 - 2)
            nxt[key + ("+",)] = (frame.ethp_raw(v, w2), w2 + 2)
        out = nxt
    return {key: v for key, (v, _) in out.items()}


def d_string_norms(frame: AngularFrame, f: SpinField, k: int):
    """Norms of all strings of length <= k and of the aggregate |D^j f|.

    Returns a dict with per-order entries: the string family, the
    aggregate field sqrt(sum |string f|^2) and its L2/L4/Linf norms.
    """
    if k > 4:
        raise ValueError("k > 4 outside the norm hierarchy")
    report = {}
    for j in range(k + 1):
        fam = d_strings(frame, f.values, f.s2, j)
        agg = np.sqrt(sum(np.abs(v) ** 2 for v in fam.values()))
        report[j] = {
            "strings": fam,
            "aggregate": agg,
            "norms": frame.norms(agg),
        }
    return report


def aggregate_dk(frame: AngularFrame, vals: np.ndarray, s2: int, k: int) -> np.ndarray:
    """|D^k f| pointwise: sqrt of the sum over all 2^k strings."""
    fam = d_strings(frame, vals, s2, k)
    return np.sqrt(sum(np.abs(v) ** 2 for v in fam.values()))
