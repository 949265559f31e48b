"""Mixed quasi-norms on phase-space grids and weighted Fock-space norms."""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp

from .bargmann import (
    _tensor,
    bargmann_series,
    complex_points,
    polar_rule,
    reproducing_project,
    stft_gaussian,
)
from .hermite import HermiteExpansion, analyze, eigenvalue
from .weights import GS, _log_profile


# --- grids -------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Uniform phase-space grid, identical for every coordinate.

    Parsed from ``"xmin:xmax:n,ximin:ximax:n"``.
    """

    x: tuple = (-8.0, 8.0, 161)
    xi: tuple = (-8.0, 8.0, 161)
    dim: int = 1

    def __post_init__(self):
        for lo, hi, n in (self.x, self.xi):
            if not hi > lo or int(n) < 2:
                raise ValueError(f"bad grid axis {lo}:{hi}:{n}")

    @classmethod
    def parse(cls, text, dim=1):
        try:
            parts = [p.split(":") for p in text.split(",")]
            (a, b, n), (c, e, m) = parts
            return cls((float(a), float(b), int(n)), (float(c), float(e), int(m)), dim)
        except ValueError as exc:
            raise ValueError(f"grid must look like 'xmin:xmax:n,ximin:ximax:n', got {text!r}") from exc

    def axes(self):
        xa = np.linspace(self.x[0], self.x[1], int(self.x[2]))
        xia = np.linspace(self.xi[0], self.xi[1], int(self.xi[2]))
        return xa, xia

    def points(self):
        """``(x, xi)`` arrays of shape ``(nx,)*d + (nxi,)*d + (d,)``."""
        xa, xia = self.axes()
        d = self.dim
        mesh = np.meshgrid(*([xa] * d + [xia] * d), indexing="ij")
        x = np.stack(mesh[:d], axis=-1)
        xi = np.stack(mesh[d:], axis=-1)
        return x, xi

    def halved(self):
        return GridSpec(
            (self.x[0], self.x[1], 2 * int(self.x[2]) - 1),
            (self.xi[0], self.xi[1], 2 * int(self.xi[2]) - 1),
            self.dim,
        )


@dataclass(frozen=True)
class PlaneGrid:
    """Values on a tensor phase-space grid; axes ``x_1..x_d, xi_1..xi_d``."""

    x_axes: tuple
    xi_axes: tuple
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(np.asarray(a, float) for a in self.x_axes + self.xi_axes)
        for a in axes:
            if len(a) < 2 or np.any(np.diff(a) <= 0):
                raise ValueError("grid axes must be strictly increasing with >= 2 nodes")
        vals = np.asarray(self.values)
        if vals.shape != tuple(len(a) for a in axes):
            raise ValueError(f"values shape {vals.shape} does not match grid")

    @property
    def dim(self):
        return len(self.x_axes)

    @classmethod
    def from_spec(cls, spec, values):
        xa, xia = spec.axes()
        return cls((xa,) * spec.dim, (xia,) * spec.dim, values)


def _trap_weights(a):
    a = np.asarray(a, float)
    w = np.empty_like(a)
    da = np.diff(a)
    w[0], w[-1] = da[0] / 2, da[-1] / 2
    w[1:-1] = (da[:-1] + da[1:]) / 2
    return w


def _lp(v, weights, p, axes):
    # weighted p-norm over the given leading axes of non-negative array v
    if np.isinf(p):
        return v.max(axis=axes) if v.size else 0.0
    W = weights[0]
    for w in weights[1:]:
        W = np.multiply.outer(W, w)
    W = W.reshape(W.shape + (1,) * (v.ndim - W.ndim))
    with np.errstate(divide="ignore"):
        return np.sum(W * v**p, axis=axes) ** (1.0 / p)


def mixed_norm(g, p=2.0, q=2.0):
    """Trapezoidal ``L^{p,q}`` quasi-norm: inner p-norm in x, outer q-norm in xi.

    ``p`` or ``q`` equal to ``inf`` use the maximum with no volume element.
    Values are scaled by their maximum before powering.
    """
    if not (p > 0 and q > 0):
        raise ValueError("p and q must be positive")
    v = np.abs(np.asarray(g.values))
    m = v.max() if v.size else 0.0
    if m == 0 or not np.isfinite(m):
        return float(m)
    v = v / m
    d = g.dim
    inner = _lp(v, [_trap_weights(a) for a in g.x_axes], p, tuple(range(d)))
    outer = _lp(np.asarray(inner), [_trap_weights(a) for a in g.xi_axes], q, tuple(range(d)))
    return float(m * outer)


# --- weighted Fock norms ----------------------------------------------------------


def a2_weighted_norm_series(e, theta):
    """``(sum |c_alpha theta(alpha)|^2)^(1/2)``."""
    if not e.coeffs:
        return 0.0
    logs = [2 * (np.log(abs(c)) + np.log(theta(a))) for a, c in e.coeffs.items()]
    return float(np.exp(logsumexp(logs) / 2))


def _profile_log(omega0, r, d):
    # omega0 acts on |z_1|^2 (d = 1) or on the vector (|z_1|^2, ..., |z_d|^2)
    return _log_profile(omega0, r[..., 0] if d == 1 else r)


def a2_weighted_norm_quadrature(F, omega0, radius=8.0, quad_order=80, n_angle=64, d=None):
    """``(pi^(-d) int |F(z) omega0(|z_1|^2, ..., |z_d|^2)|^2 dlambda(z))^(1/2)``.

    Polar product quadrature on the polydisc ``|z_j| <= radius``. Raises
    ``ValueError`` when the outermost ring carries more than 1e-8 of the total.
    """
    d = d or getattr(F, "dim", 1)
    nodes, weights, ring = polar_rule(radius, quad_order, n_angle)
    Z, W = _tensor(nodes, weights, d)
    R = _tensor(ring.astype(float), ring.astype(float), d)[0].max(axis=-1) > 0
    vals = np.abs(np.asarray(F(Z), complex))
    with np.errstate(divide="ignore"):
        logi = 2 * np.log(vals) + 2 * _profile_log(omega0, np.abs(Z) ** 2, d)
    integrand = np.exp(logi) * W
    total = integrand.sum() * np.pi ** (-d)
    shell = integrand[R].sum() * np.pi ** (-d) / W[R].mean() * radius if R.any() else 0.0
    if shell > 1e-8 * total and shell > 1e-300:
        raise ValueError(
            f"radius {radius} too small: boundary shell ~{shell:.3e} vs integral {total:.3e}"
        )
    return float(np.sqrt(total))


def modulation_norm(f, w, p=2.0, q=2.0, grid=None, cutoff=60):
    """``L^{p,q}`` norm of ``V_phi f(x, xi) w(x + i xi)`` sampled on ``grid``."""
    grid = grid or GridSpec()
    e = f if isinstance(f, HermiteExpansion) else analyze(f, cutoff=cutoff)
    grid = GridSpec(grid.x, grid.xi, e.dim)
    if not e.coeffs:
        return 0.0
    x, xi = grid.points()
    V = np.asarray(stft_gaussian(e, x, xi))
    logw = w.log_eval(x + 1j * xi)
    with np.errstate(divide="ignore", over="ignore"):
        vals = np.exp(np.log(np.abs(V)) + logw)
    return mixed_norm(PlaneGrid.from_spec(grid, vals), p, q)


class Seminorm(NamedTuple):
    value: float
    maximizer: int


def pilipovic_log_terms(e, h, s, N_sup=60):
    """``log(||H^N f|| / (h^N (N!)^(2s)))`` for ``N = 0..N_sup``."""
    if N_sup < 0:
        raise ValueError("N_sup must be >= 0")
    if not e.coeffs:
        return np.full(N_sup + 1, -np.inf)
    lam = np.log([eigenvalue(a) for a in e.coeffs])
    logc = np.log(np.abs(list(e.coeffs.values())))
    N = np.arange(N_sup + 1)
    lognorm = logsumexp(2 * (N[:, None] * lam[None, :] + logc[None, :]), axis=1) / 2
    return lognorm - N * np.log(h) - 2 * s * gammaln(N + 1.0)


def pilipovic_seminorm(e, h, s, N_sup=60):
    """``max_{N <= N_sup} ||H^N f||_{L^2} / (h^N (N!)^(2s))`` with its maximizing N."""
    t = pilipovic_log_terms(e, h, s, N_sup)
    i = int(np.argmax(t))
    return Seminorm(float(np.exp(t[i])), i)


def pi_a_weighted_l1_check(F, s, t, h1, h2, radius=8.0, quad_order=60, n_angle=64, d=None):
    """Both sides of the weighted L^1 estimate for the reproducing projection.

    ``lhs = ||(Pi_A F) exp(-(|z|^2/2 + h2 M))||_{L^1}``,
    ``rhs = ||F exp(-(|z|^2/2 + h1 M))||_{L^1}`` with ``M = M_{s,t}``; the
    projection is evaluated by :func:`reproducing_project` at the outer nodes.
    """
    if not (s >= 0.5 and t >= 0.5):
        raise ValueError("s and t must be >= 1/2")
    if not (0 < 2 * h1 <= h2):
        raise ValueError("need 0 < 2 h1 <= h2")
    if (s == 0.5 or t == 0.5) and not h2 < 0.5:
        raise ValueError("need h2 < 1/2 when s or t equals 1/2")
    d = d or getattr(F, "dim", 1)
    M = GS(s, t, 0.0, quadratic=False)
    nodes, weights, _ = polar_rule(radius, quad_order, n_angle)
    Z, W = _tensor(nodes, weights, d)
    gauss = np.exp(-np.sum(np.abs(Z) ** 2, axis=-1) / 2)
    FZ = np.asarray(F(Z), complex)
    rhs = float(np.sum(np.abs(FZ) * gauss * np.exp(-h1 * M.M(Z)) * W))
    if rhs == 0:
        return {"lhs": 0.0, "rhs": 0.0, "ratio": None}
    import warnings

    from .bargmann import TruncationWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        P = np.asarray(reproducing_project(F, Z, radius, quad_order, n_angle, d), complex)
    lhs = float(np.sum(np.abs(P) * gauss * np.exp(-h2 * M.M(Z)) * W))
    return {"lhs": lhs, "rhs": rhs, "ratio": lhs / rhs}


def fock_norm_fepexp(e, h):
    """``e^(r d) (sum |c_alpha e^(r|alpha|)|^2)^(1/2)`` with ``r = -log(2h)/2``."""
    r = -np.log(2 * h) / 2
    if not e.coeffs:
        return 0.0
    logs = [2 * (np.log(abs(c)) + r * sum(a)) for a, c in e.coeffs.items()]
    return float(np.exp(r * e.dim + logsumexp(logs) / 2))


def series_function(e):
    def F(z):
        return bargmann_series(e, complex_points(z, e.dim))

    F.dim = e.dim
    return F
