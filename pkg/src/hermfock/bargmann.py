"""Bargmann transform, Gaussian-window STFT and the reproducing projection.

Points of C^d are complex arrays with a trailing axis of length d; the
identification with R^{2d} is ``z = x + i xi``. The STFT and the Bargmann
transform are linked at the single canonical bridge point
``z = (x - i xi) / sqrt(2)`` (see :func:`bridge_point`).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from .hermite import (
    HermiteExpansion,
    analyze,
    gauss_hermite,
)
from .specs import CoefficientRule, Gaussian, HermiteCombo, Sampled

SQRT2 = np.sqrt(2.0)


class TruncationWarning(UserWarning):
    """A truncated integral has a non-negligible contribution near its boundary."""


def complex_points(z, d):
    z = np.asarray(z, dtype=complex)
    if d == 1 and (z.ndim == 0 or z.shape[-1] != 1):
        z = z[..., None]
    if z.shape[-1] != d:
        raise ValueError(f"points must have trailing dimension {d}, got shape {z.shape}")
    return z


def real_points(x, d):
    x = np.asarray(x, dtype=float)
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.shape[-1] != d:
        raise ValueError(f"points must have trailing dimension {d}, got shape {x.shape}")
    return x


def _scalarize(v):
    return complex(v) if np.ndim(v) == 0 else v


def bridge_point(x, xi):
    """Bargmann argument matching the STFT at ``(x, xi)``: ``(x - i xi)/sqrt(2)``."""
    return (np.asarray(x, float) - 1j * np.asarray(xi, float)) / SQRT2


def _dot(z, w):
    # bilinear <z, w> = sum z_j w_j over the trailing axis
    return np.sum(z * w, axis=-1)


def bargmann_kernel_log(z, y):
    d = np.shape(z)[-1]
    return (
        -d / 4 * np.log(np.pi)
        - (_dot(z, z) + np.sum(y * y, axis=-1)) / 2
        + SQRT2 * _dot(z, y)
    )


def bargmann_kernel(z, y, d=None):
    """``pi^(-d/4) exp(-(<z,z> + |y|^2)/2 + sqrt(2) <z,y>)``; overflow gives inf."""
    if d is None:
        d = 1 if np.ndim(z) == 0 else np.shape(z)[-1]
    z, y = complex_points(z, d), real_points(y, d)
    with np.errstate(over="ignore"):
        out = np.exp(bargmann_kernel_log(z, y))
    return _scalarize(out)


def _spec_rule(f, quad_order):
    """Quadrature nodes, weights and (log-)values of f for integrals over R^d."""
    if isinstance(f, CoefficientRule):
        raise ValueError("coefficient rules have no pointwise values; analyze them first")
    if isinstance(f, Sampled):
        pts, wts, vals = f.rule()
        return pts, wts, None, vals
    d = f.dim
    n = quad_order or 100
    y, W = gauss_hermite(n)
    mesh = np.meshgrid(*([y] * d), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    wmesh = np.meshgrid(*([W] * d), indexing="ij")
    wts = np.prod([m.ravel() for m in wmesh], axis=0)
    if isinstance(f, Gaussian):
        logv = f.log_evaluate(pts) + np.log(f.C) if f.C != 0 else None
        if logv is None:
            return pts, wts, None, np.zeros(len(pts), complex)
        return pts, wts, logv, None
    return pts, wts, None, f.evaluate(pts)


def bargmann_quadrature(f, z, quad_order=None):
    """Bargmann transform by direct quadrature of the integral with the kernel.

    Gaussians and finite combinations use Gauss-Hermite quadrature with the
    ``exp(-|y|^2)`` weight factored out (``quad_order`` nodes per axis,
    default 100); sampled functions use the trapezoidal rule on their grid.
    """
    if isinstance(f, HermiteExpansion):
        f = HermiteCombo(tuple(f.coeffs.items()), f.dim)
    d = f.dim
    z = complex_points(z, d)
    shape = z.shape[:-1]
    zf = z.reshape(-1, d)
    pts, wts, logv, vals = _spec_rule(f, quad_order)
    out = np.empty(len(zf), complex)
    step = max(1, 2**22 // max(1, len(pts)))
    for i in range(0, len(zf), step):
        zc = zf[i : i + step, None, :]
        lk = bargmann_kernel_log(zc, pts[None])
        with np.errstate(over="ignore", invalid="ignore"):
            if logv is not None:
                terms = np.exp(lk + logv[None])
            else:
                terms = np.exp(lk) * vals[None]
        out[i : i + step] = terms @ wts
    return _scalarize(out.reshape(shape))


def monomial_table(n_max, z):
    """``e_k(z) = z^k / sqrt(k!)`` for k = 0..n_max, stacked along a leading axis."""
    z = np.asarray(z, dtype=complex)
    out = np.empty((n_max + 1,) + z.shape, dtype=complex)
    out[0] = 1.0
    for k in range(n_max):
        out[k + 1] = out[k] * z / np.sqrt(k + 1.0)
    return out


def bargmann_series(e, z):
    """``sum c_alpha z^alpha / sqrt(alpha!)`` for a Hermite expansion ``e``."""
    z = complex_points(z, e.dim)
    shape = z.shape[:-1]
    total = np.zeros(shape, dtype=complex)
    if e.coeffs:
        top = max(sum(a) for a in e.coeffs)
        tables = [monomial_table(top, z[..., j]) for j in range(e.dim)]
        for a in sorted(e.coeffs, key=lambda a: (sum(a), tuple(-v for v in a))):
            term = np.ones(shape, dtype=complex)
            for j, aj in enumerate(a):
                term = term * tables[j][aj]
            total = total + e.coeffs[a] * term
    return _scalarize(total)


def _as_expansion(f, cutoff):
    if isinstance(f, HermiteExpansion):
        return f
    return analyze(f, cutoff=cutoff)


def stft_gaussian(f, x, xi, cutoff=60):
    """Gaussian-window STFT through the Bargmann transform of ``f``.

    ``V_phi f(x, xi) = (2 pi)^(-d/2) exp(-(|x|^2+|xi|^2)/4 - i<x,xi>/2) Vf(z)``
    with ``z = (x - i xi)/sqrt(2)``. Function specs are first analyzed up to
    ``cutoff``.
    """
    e = _as_expansion(f, cutoff)
    d = e.dim
    x, xi = np.broadcast_arrays(real_points(x, d), real_points(xi, d))
    F = bargmann_series(e, bridge_point(x, xi))
    r2 = np.sum(x * x + xi * xi, axis=-1)
    pref = (2 * np.pi) ** (-d / 2) * np.exp(-r2 / 4 - 0.5j * np.sum(x * xi, axis=-1))
    return _scalarize(pref * F)


def stft_direct(f, x, xi, quad_order=None):
    """``(2 pi)^(-d/2) int f(y) phi(y - x) exp(-i <y, xi>) dy`` by quadrature."""
    if isinstance(f, HermiteExpansion):
        f = HermiteCombo(tuple(f.coeffs.items()), f.dim)
    d = f.dim
    x, xi = np.broadcast_arrays(real_points(x, d), real_points(xi, d))
    shape = x.shape[:-1]
    xf, xif = x.reshape(-1, d), xi.reshape(-1, d)
    pts, wts, logv, vals = _spec_rule(f, quad_order)
    out = np.empty(len(xf), complex)
    step = max(1, 2**22 // max(1, len(pts)))
    for i in range(0, len(xf), step):
        xc, xic = xf[i : i + step, None, :], xif[i : i + step, None, :]
        y = pts[None]
        lk = (
            -d / 2 * np.log(2 * np.pi)
            - d / 4 * np.log(np.pi)
            - np.sum((y - xc) ** 2, axis=-1) / 2
            - 1j * np.sum(y * xic, axis=-1)
        )
        if logv is not None:
            terms = np.exp(lk + logv[None])
        else:
            terms = np.exp(lk) * vals[None]
        out[i : i + step] = terms @ wts
    return _scalarize(out.reshape(shape))


def uv_apply(F, x, xi, d=None):
    """``(2 pi)^(d/2) exp((|x|^2+|xi|^2)/2) exp(-i<x,xi>) F(sqrt2 x - i sqrt2 xi)``.

    ``F`` is a plane function: a callable on complex points ``w = u + i v``
    standing for ``F(u, v)``.
    """
    d = d or getattr(F, "dim", 1)
    x, xi = np.broadcast_arrays(real_points(x, d), real_points(xi, d))
    w = SQRT2 * x - 1j * SQRT2 * xi
    r2 = np.sum(x * x + xi * xi, axis=-1)
    pref = (2 * np.pi) ** (d / 2) * np.exp(r2 / 2 - 1j * np.sum(x * xi, axis=-1))
    return _scalarize(pref * np.asarray(F(w)))


def groechenig_lift(F, x, xi, d=None):
    """``(2 pi^3)^(d/4) F(sqrt2 x, -sqrt2 xi) exp((|x|^2+|xi|^2)/2) exp(-i<x,xi>)``."""
    d = d or getattr(F, "dim", 1)
    x, xi = np.broadcast_arrays(real_points(x, d), real_points(xi, d))
    w = SQRT2 * x - 1j * SQRT2 * xi
    r2 = np.sum(x * x + xi * xi, axis=-1)
    vals = np.asarray(F(w), dtype=complex)
    pref = (2 * np.pi**3) ** (d / 4) * np.exp(r2 / 2 - 1j * np.sum(x * xi, axis=-1))
    out = np.where(vals == 0, 0.0, pref * vals)
    return _scalarize(out)


# --- plane and entire functions -------------------------------------------------


@dataclass(frozen=True)
class SeriesFunction:
    """Entire function ``sum c_alpha e_alpha`` given by a Hermite expansion."""

    expansion: HermiteExpansion

    @property
    def dim(self):
        return self.expansion.dim

    def __call__(self, z):
        return bargmann_series(self.expansion, z)


def _phi1(u):
    # (e^u - 1)/u with the removable singularity handled by a short series
    u = np.asarray(u, dtype=complex)
    small = np.abs(u) < 1e-4
    safe = np.where(small, 1.0, u)
    big = np.expm1(safe) / safe
    ser = 1 + u / 2 + u**2 / 6 + u**3 / 24
    return np.where(small, ser, big)


def pi_a_box_closed_form(z):
    """Reproducing projection of ``exp(|w|^2)`` times the indicator of the unit square.

    ``pi^(-d) prod_j (e^{z_j} - 1)/z_j * (1 - e^{-i z_j})/(i z_j)``.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z[None]
    d = z.shape[-1]
    out = np.pi ** (-d) * np.prod(_phi1(z) * _phi1(-1j * z), axis=-1)
    return _scalarize(out)


_CLOSED_FORMS = {
    "one": lambda z, **p: np.ones(z.shape[:-1], complex),
    "exp_linear": lambda z, a=1.0, **p: np.exp(np.sum(np.asarray(a) * z, axis=-1)),
    "box_projection": lambda z, **p: pi_a_box_closed_form(z),
    "monomial": lambda z, alpha=(0,), **p: np.prod(z ** np.asarray(alpha), axis=-1),
}


@dataclass(frozen=True)
class ClosedForm:
    """Named closed-form entire function: one, exp_linear(a), box_projection, monomial(alpha)."""

    name: str
    params: dict = field(default_factory=dict)
    dim: int = 1

    def __post_init__(self):
        if self.name not in _CLOSED_FORMS:
            raise ValueError(f"unknown closed form {self.name!r}; known: {sorted(_CLOSED_FORMS)}")

    def __call__(self, z):
        z = complex_points(z, self.dim)
        return _scalarize(np.asarray(_CLOSED_FORMS[self.name](z, **self.params), complex))


@dataclass(frozen=True)
class SampledEntire:
    """Values of a function of one complex variable on a rectangular grid (bilinear)."""

    re_axis: np.ndarray
    im_axis: np.ndarray
    values: np.ndarray
    dim: int = 1

    def __call__(self, z):
        from scipy.interpolate import RegularGridInterpolator

        z = complex_points(z, 1)[..., 0]
        vals = np.asarray(self.values, complex)
        interp = RegularGridInterpolator(
            (np.asarray(self.re_axis), np.asarray(self.im_axis)), vals,
            bounds_error=False, fill_value=0.0,
        )
        pts = np.stack([z.real.ravel(), z.imag.ravel()], axis=-1)
        return _scalarize(interp(pts).reshape(z.shape))


@dataclass(frozen=True)
class BoxFunction:
    """Plane function supported in a box, optionally times ``exp(|w|^2)``.

    ``lo``/``hi`` give the corners ``(re, im)`` of the same square in every
    coordinate. ``lifted=True`` gives ``exp(|w|^2) chi(w)``, the function whose
    reproducing projection has a closed form for the unit square.
    """

    lo: tuple = (0.0, 0.0)
    hi: tuple = (1.0, 1.0)
    lifted: bool = False
    dim: int = 1

    @property
    def support(self):
        return [(self.lo[0], self.hi[0], self.lo[1], self.hi[1])] * self.dim

    def inside(self, w):
        w = complex_points(w, self.dim)
        ok = (
            (w.real >= self.lo[0]) & (w.real <= self.hi[0])
            & (w.imag >= self.lo[1]) & (w.imag <= self.hi[1])
        )
        return np.all(ok, axis=-1)

    def __call__(self, w):
        w = complex_points(w, self.dim)
        chi = self.inside(w).astype(float)
        if self.lifted:
            chi = chi * np.exp(np.sum(np.abs(w) ** 2, axis=-1))
        return _scalarize(chi.astype(complex))


# --- reproducing projection -----------------------------------------------------


def polar_rule(radius, n_radial, n_angle=64):
    """Nodes and weights for ``int_{|w| <= radius} g(w) dlambda(w)`` on C."""
    t, wt = roots_legendre(n_radial)
    rho = radius * (t + 1) / 2
    wrho = wt * radius / 2
    theta = 2 * np.pi * np.arange(n_angle) / n_angle
    w = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = (wrho * rho)[:, None].repeat(n_angle, axis=1).ravel() * (2 * np.pi / n_angle)
    ring = np.zeros((n_radial, n_angle), bool)
    ring[-1] = True
    return w, weights, ring.ravel()


def box_rule(support, n):
    """Tensor Gauss-Legendre rule on the box ``[a,b] x [c,d]`` of one coordinate."""
    a, b, c, d = support
    t, wt = roots_legendre(n)
    u = a + (b - a) * (t + 1) / 2
    v = c + (d - c) * (t + 1) / 2
    w = (u[:, None] + 1j * v[None, :]).ravel()
    weights = np.outer(wt * (b - a) / 2, wt * (d - c) / 2).ravel()
    return w, weights


def _tensor(nodes, weights, d):
    if d == 1:
        return nodes[:, None], weights
    mesh = np.meshgrid(*([np.arange(len(nodes))] * d), indexing="ij")
    idx = np.stack([m.ravel() for m in mesh], axis=-1)
    return nodes[idx], np.prod(weights[idx], axis=-1)


def _gauss_measure_rule(F, d, radius, quad_order, n_angle):
    support = getattr(F, "support", None)
    if support is not None:
        nodes, weights = box_rule(support[0], quad_order)
        ring = np.zeros(len(nodes), bool)
        boxed = True
    else:
        nodes, weights, ring = polar_rule(radius, quad_order, n_angle)
        boxed = False
    W, Wt = _tensor(nodes, weights, d)
    Rg = _tensor(ring.astype(float), ring.astype(float), d)[0].max(axis=-1) > 0 if d > 1 else ring
    return W, Wt * np.pi ** (-d), Rg, boxed


def reproducing_project(F, z, radius=8.0, quad_order=80, n_angle=64, d=None):
    """``(Pi_A F)(z) = pi^(-d) int F(w) exp((z, w)) exp(-|w|^2) dlambda(w)``.

    Integrates over the polydisc ``|w_j| <= radius`` with a polar product rule
    (Gauss-Legendre in the radius, ``n_angle`` equispaced angles). Functions
    exposing a rectangular ``support`` are integrated with a tensor
    Gauss-Legendre rule on that box instead. Emits :class:`TruncationWarning`
    when the outermost ring contributes more than 1e-8 of the estimate.
    """
    d = d or getattr(F, "dim", 1)
    z = complex_points(z, d)
    shape = z.shape[:-1]
    zf = z.reshape(-1, d)
    W, Wt, ring, boxed = _gauss_measure_rule(F, d, radius, quad_order, n_angle)
    g = np.asarray(F(W), complex) * np.exp(-np.sum(np.abs(W) ** 2, axis=-1)) * Wt
    keep = g != 0
    Wk, gk = W[keep], g[keep]
    out = np.empty(len(zf), complex)
    step = max(1, 2**22 // max(1, len(Wk)))
    for i in range(0, len(zf), step):
        E = np.exp(zf[i : i + step] @ np.conj(Wk).T)
        out[i : i + step] = E @ gk
    if not boxed and len(Wk):
        # last-ring magnitude, scaled up to a shell of unit width
        Wr, gr = W[ring], g[ring]
        for i in range(len(zf)):
            shell = np.abs(np.exp(Wr.conj() @ zf[i]) * gr).sum() * radius
            if shell > 1e-8 * max(abs(out[i]), 1e-300) and shell > 1e-300:
                warnings.warn(
                    f"radius {radius} too small at z={zf[i]}: boundary shell ~{shell:.2e} "
                    f"vs estimate {abs(out[i]):.2e}",
                    TruncationWarning,
                    stacklevel=2,
                )
                break
    return _scalarize(out.reshape(shape))


def a2_inner_quadrature(F, G, radius=8.0, quad_order=80, n_angle=64, d=None):
    """``(F, G)_{A^2} = pi^(-d) int F conj(G) exp(-|z|^2) dlambda`` on the polydisc."""
    d = d or getattr(F, "dim", 1)
    nodes, weights, _ = polar_rule(radius, quad_order, n_angle)
    W, Wt = _tensor(nodes, weights, d)
    vals = np.asarray(F(W)) * np.conj(np.asarray(G(W)))
    return complex(np.sum(vals * np.exp(-np.sum(np.abs(W) ** 2, axis=-1)) * Wt) * np.pi ** (-d))


def stft_plane(f, quad_order=None):
    """The STFT ``V_phi f`` as a plane function ``w = x + i xi -> V_phi f(x, xi)``."""
    d = f.dim

    def G(w):
        w = complex_points(w, d)
        return stft_direct(f, w.real, w.imag, quad_order)

    G.dim = d
    return G
