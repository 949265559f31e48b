"""Symbolic descriptions of test functions on R^d.

Four variants are supported: Gaussians ``C exp(-<Ay,y>/2 + L(y))``, finite
Hermite combinations, coefficient rules ``alpha -> c_alpha`` and sampled
grids. All variants are immutable.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .multiindex import check_alpha


def _as_points(y, dim):
    y = np.asarray(y, dtype=float)
    if dim == 1 and (y.ndim == 0 or y.shape[-1] != 1):
        y = y[..., None]
    if y.shape[-1] != dim:
        raise ValueError(f"points must have trailing dimension {dim}, got {y.shape}")
    return y


@dataclass(frozen=True)
class Gaussian:
    """``C * exp(-<A y, y>/2 + <L, y>)`` with complex symmetric ``A``.

    ``Re A`` must be positive definite; this is checked on construction.
    """

    A: np.ndarray
    L: np.ndarray = None
    C: complex = 1.0

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=complex))
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(1.0, np.abs(A).max())):
            raise ValueError("A must be symmetric")
        d = A.shape[0]
        L = np.zeros(d, complex) if self.L is None else np.asarray(self.L, complex).reshape(-1)
        if L.shape != (d,):
            raise ValueError(f"L must have length {d}")
        eig = np.linalg.eigvalsh(A.real)
        if eig.min() <= 0:
            raise ValueError(
                f"Re A is not positive definite (eigenvalues {eig.tolist()}); "
                "the Gaussian is not integrable"
            )
        A.setflags(write=False)
        L.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "C", complex(self.C))

    @property
    def dim(self):
        return self.A.shape[0]

    def log_evaluate(self, y):
        y = _as_points(y, self.dim)
        quad = np.einsum("...i,ij,...j->...", y, self.A, y)
        return -quad / 2 + y @ self.L

    def evaluate(self, y):
        if self.C == 0:
            return np.zeros(_as_points(y, self.dim).shape[:-1], complex)
        return self.C * np.exp(self.log_evaluate(y))

    def decay_rate(self):
        """Smallest eigenvalue of ``Re A`` (the Gaussian decays like exp(-rate |y|^2 / 2))."""
        return float(np.linalg.eigvalsh(self.A.real).min())


@dataclass(frozen=True)
class HermiteCombo:
    """Finite combination ``sum_k c_k h_{alpha_k}``."""

    terms: tuple
    dim: int = 1

    def __post_init__(self):
        terms = tuple((check_alpha(a, self.dim), complex(c)) for a, c in self.terms)
        object.__setattr__(self, "terms", terms)

    def to_expansion(self, cutoff=None):
        from .hermite import HermiteExpansion

        top = max((sum(a) for a, _ in self.terms), default=0)
        cutoff = top if cutoff is None else cutoff
        coeffs = {}
        for a, c in self.terms:
            if sum(a) <= cutoff:
                coeffs[a] = coeffs.get(a, 0) + c
        return HermiteExpansion(self.dim, cutoff, coeffs)

    def evaluate(self, y):
        from .hermite import synthesize

        return synthesize(self.to_expansion(), y)


RULES = {
    # log |c_alpha| as a function of (|alpha|, log alpha!)
    "stretched_exp": lambda n, lf, r, s, C=1.0: np.log(C) - r * n ** (1.0 / (2 * s)),
    "exp_growth": lambda n, lf, r, s, C=1.0: np.log(C) + r * n ** (1.0 / (2 * s)),
    "factorial": lambda n, lf, R, C=1.0: np.log(C) + n * np.log(R) - lf / 2,
    "dual_factorial": lambda n, lf, R, C=1.0: np.log(C) + n * np.log(R) + lf / 2,
    "power": lambda n, lf, k, C=1.0: np.log(C) - k * np.log1p(n),
}


@dataclass(frozen=True)
class CoefficientRule:
    """Coefficients given by a named closed-form rule.

    Rules (``n = |alpha|``):

    ``stretched_exp(r, s)``    C exp(-r n^(1/(2s)))
    ``exp_growth(r, s)``       C exp(+r n^(1/(2s)))
    ``factorial(R)``           C R^n / sqrt(alpha!)
    ``dual_factorial(R)``      C R^n sqrt(alpha!)
    ``power(k)``               C (1+n)^(-k)
    """

    rule: str
    params: dict = field(default_factory=dict)
    dim: int = 1

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown coefficient rule {self.rule!r}; known: {sorted(RULES)}")
        object.__setattr__(self, "params", dict(self.params))

    def log_abs(self, orders, logfac):
        return RULES[self.rule](np.asarray(orders, float), np.asarray(logfac, float), **self.params)

    def to_expansion(self, cutoff):
        from .hermite import HermiteExpansion
        from .multiindex import index_arrays

        alphas, orders, logfac = index_arrays(self.dim, cutoff)
        logs = self.log_abs(orders, logfac)
        if np.any(logs > 709):
            n = int(orders[np.argmax(logs)])
            raise ValueError(f"rule {self.rule} overflows double precision at |alpha| = {n}; lower the cutoff")
        with np.errstate(divide="ignore"):
            vals = np.exp(logs)
        return HermiteExpansion.from_arrays(self.dim, cutoff, alphas, vals)


@dataclass(frozen=True)
class Sampled:
    """Values on a tensor grid; ``axes[j]`` are the (uniform) nodes of axis j."""

    axes: tuple
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(np.asarray(a, float) for a in self.axes)
        vals = np.asarray(self.values, complex)
        if vals.shape != tuple(len(a) for a in axes):
            raise ValueError(
                f"values shape {vals.shape} does not match grid {tuple(len(a) for a in axes)}"
            )
        for a in axes:
            if len(a) < 3 or np.any(np.diff(a) <= 0):
                raise ValueError("sampled grid axes must be increasing with >= 3 nodes")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self):
        return len(self.axes)

    def rule(self):
        """Trapezoidal nodes, weights and values as flat arrays."""
        ws = []
        for a in self.axes:
            w = np.empty_like(a)
            da = np.diff(a)
            w[0], w[-1] = da[0] / 2, da[-1] / 2
            w[1:-1] = (da[:-1] + da[1:]) / 2
            ws.append(w)
        mesh = np.meshgrid(*self.axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        wmesh = np.meshgrid(*ws, indexing="ij")
        wts = np.prod([m.ravel() for m in wmesh], axis=0)
        return pts, wts, self.values.ravel()

    def support_warning(self, rel=1e-8):
        """Message if the function is not negligible on the grid boundary, else None."""
        v = np.abs(self.values)
        peak = v.max() if v.size else 0.0
        if peak == 0:
            return None
        edge = 0.0
        for j in range(self.dim):
            edge = max(edge, np.take(v, 0, axis=j).max(), np.take(v, -1, axis=j).max())
        if edge > rel * peak:
            return (
                f"sampled grid does not cover the effective support: boundary magnitude "
                f"{edge:.3g} vs peak {peak:.3g}"
            )
        return None

    def evaluate(self, y):
        from scipy.interpolate import RegularGridInterpolator

        y = _as_points(y, self.dim)
        interp = RegularGridInterpolator(self.axes, self.values, bounds_error=False, fill_value=0.0)
        return interp(y.reshape(-1, self.dim)).reshape(y.shape[:-1])


FunctionSpec = (Gaussian, HermiteCombo, CoefficientRule, Sampled)


def phi(dim=1):
    """The normalized Gaussian window pi^(-d/4) exp(-|y|^2/2)."""
    return Gaussian(np.eye(dim), None, np.pi ** (-dim / 4))


def log_factorials(alphas):
    return gammaln(np.asarray(alphas) + 1.0).sum(axis=-1)
