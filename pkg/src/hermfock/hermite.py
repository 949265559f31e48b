"""Hermite functions, Hermite expansions and their analysis/synthesis.

The orthonormal Hermite functions are evaluated with the normalized
three-term recurrence

    h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x),
    h_0(x) = pi^(-1/4) exp(-x^2/2),

which carries the Gaussian factor along and never forms a bare Hermite
polynomial. Multivariate functions are tensor products.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.special import roots_hermite

from .multiindex import check_alpha, index_arrays
from .specs import CoefficientRule, Gaussian, HermiteCombo, Sampled, _as_points

#: coefficients below this magnitude are stored as exact zeros
ZERO_CUTOFF = 1e-300

_PI_QUARTER = np.pi ** (-0.25)
# exp(-x^2/2) underflows beyond this
_UNDERFLOW_X = np.sqrt(2 * 745.0)


def hermite_table(n_max, x):
    """Return ``h_0(x), ..., h_{n_max}(x)`` stacked along a new leading axis."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((n_max + 1,) + x.shape)
    with np.errstate(under="ignore"):
        out[0] = np.where(np.abs(x) < _UNDERFLOW_X, _PI_QUARTER * np.exp(-(x**2) / 2), 0.0)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, n_max):
        out[k + 1] = x * np.sqrt(2.0 / (k + 1)) * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def hermite_eval(alpha, x):
    """Evaluate ``h_alpha`` at one point (or an array of points) of R^d."""
    alpha = check_alpha(alpha)
    d = len(alpha)
    x = _as_points(x, d)
    val = np.ones(x.shape[:-1])
    for j, a in enumerate(alpha):
        val = val * hermite_table(a, x[..., j])[a]
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class HermiteExpansion:
    """Truncated Hermite series ``sum_{|alpha| <= cutoff} c_alpha h_alpha``.

    Parameters
    ----------
    dim : int
        Ambient dimension d.
    cutoff : int
        Maximal total degree N_max.
    coeffs : dict
        Map from multi-index tuples to complex coefficients; absent keys are
        zero.
    noise_floor : float
        Absolute magnitude below which coefficients are numerically
        unresolved (set by quadrature-based analysis, 0 for exact data).
    warnings : tuple of str
        Diagnostics attached during analysis.
    """

    dim: int
    cutoff: int
    coeffs: dict = field(default_factory=dict)
    noise_floor: float = 0.0
    warnings: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        clean = {}
        for a, c in self.coeffs.items():
            a = check_alpha(a, self.dim)
            if sum(a) > self.cutoff:
                raise ValueError(f"multi-index {a} exceeds cutoff {self.cutoff}")
            c = complex(c)
            if abs(c) >= ZERO_CUTOFF:
                clean[a] = c
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @classmethod
    def from_arrays(cls, dim, cutoff, alphas, values, **kw):
        values = np.asarray(values, dtype=complex)
        coeffs = {
            tuple(int(v) for v in a): complex(c)
            for a, c in zip(np.asarray(alphas).reshape(-1, dim), values)
            if abs(c) >= ZERO_CUTOFF
        }
        return cls(dim, cutoff, coeffs, **kw)

    @classmethod
    def basis(cls, alpha, cutoff=None, coeff=1.0):
        alpha = check_alpha(alpha)
        return cls(len(alpha), sum(alpha) if cutoff is None else cutoff, {alpha: coeff})

    @cached_property
    def dense(self):
        """Coefficients on the full graded index set, as ``(alphas, values)``."""
        alphas, _, _ = index_arrays(self.dim, self.cutoff)
        vals = np.array([self.coeffs.get(tuple(a), 0j) for a in alphas.tolist()], dtype=complex)
        vals.setflags(write=False)
        return alphas, vals

    def replace(self, coeffs=None, cutoff=None, noise_floor=None):
        return HermiteExpansion(
            self.dim,
            self.cutoff if cutoff is None else cutoff,
            self.coeffs if coeffs is None else coeffs,
            self.noise_floor if noise_floor is None else noise_floor,
            self.warnings,
        )

    def truncate(self, cutoff):
        return self.replace({a: c for a, c in self.coeffs.items() if sum(a) <= cutoff}, cutoff)

    def __len__(self):
        return len(self.coeffs)


def synthesize(e, x):
    """Evaluate ``sum c_alpha h_alpha(x)``, accumulating in order of increasing |alpha|."""
    x = _as_points(x, e.dim)
    shape = x.shape[:-1]
    total = np.zeros(shape, dtype=complex)
    if not e.coeffs:
        return total if shape else complex(total)
    top = max(sum(a) for a in e.coeffs)
    tables = [hermite_table(top, x[..., j]) for j in range(e.dim)]
    for a in sorted(e.coeffs, key=lambda a: (sum(a), tuple(-v for v in a))):
        term = np.ones(shape)
        for j, aj in enumerate(a):
            term = term * tables[j][aj]
        total = total + e.coeffs[a] * term
    return total if shape else complex(total)


def eigenvalue(alpha):
    """Harmonic oscillator eigenvalue 2|alpha| + d of h_alpha."""
    return 2 * sum(alpha) + len(alpha)


def apply_H(e, N):
    """Apply the N-th power of the harmonic oscillator ``|x|^2 - Laplacian``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = {}
    for a, c in e.coeffs.items():
        lam = eigenvalue(a)
        if N * np.log(lam) < 600:
            out[a] = c * float(lam) ** N
        else:
            mag = np.exp(np.log(abs(c)) + N * np.log(lam))
            out[a] = mag * (c / abs(c))
    return e.replace(out)


def l2_inner(e1, e2):
    """``(f, g)_{L^2}`` via coefficients, conjugate-linear in the second slot."""
    if e1.dim != e2.dim:
        raise ValueError(f"dimension mismatch: {e1.dim} vs {e2.dim}")
    keys = sorted(set(e1.coeffs) & set(e2.coeffs), key=lambda a: (sum(a), a))
    return complex(sum(e1.coeffs[a] * np.conj(e2.coeffs[a]) for a in keys))


def default_quad_order(cutoff):
    return 2 * cutoff + 20


def gauss_hermite(n):
    """Nodes and *unweighted* weights ``w_i exp(y_i^2)`` for integrals over R."""
    y, w = roots_hermite(n)
    return y, w * np.exp(y**2)


def _contract(table, F, d):
    # table: (K+1, n) per axis; F: (n,)*d  ->  (K+1,)*d
    out = F
    for _ in range(d):
        # contract the first remaining grid axis, append coefficient axis at the end
        out = np.tensordot(out, table, axes=([0], [1]))
    return out


def _gather(full, alphas):
    return full[tuple(alphas.T)]


def analyze(f, d=None, cutoff=20, quad_order=None, exact=True):
    """Hermite coefficients ``c_alpha = (f, h_alpha)`` for ``|alpha| <= cutoff``.

    Gaussians are integrated by tensorized Gauss-Hermite quadrature with
    ``quad_order`` nodes per axis (default ``2*cutoff + 20``); sampled
    functions by the trapezoidal rule on their own grid. Coefficients at or
    below the resulting noise floor are stored as zeros. Finite combinations
    and coefficient rules are copied exactly unless ``exact=False``, in which
    case combinations are synthesized and re-analyzed by quadrature.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if isinstance(f, HermiteExpansion):
        return f.truncate(cutoff) if f.cutoff >= cutoff else f.replace(cutoff=cutoff)
    dim = f.dim
    if d is not None and d != dim:
        raise ValueError(f"function has dimension {dim}, requested {d}")
    if dim > 3:
        raise ValueError("dimensions above 3 are not supported")
    if isinstance(f, CoefficientRule):
        return f.to_expansion(cutoff)
    if isinstance(f, HermiteCombo) and exact:
        return f.to_expansion(cutoff)

    alphas, _, _ = index_arrays(dim, cutoff)
    warnings = []
    if isinstance(f, Sampled):
        pts, wts, vals = f.rule()
        msg = f.support_warning()
        if msg:
            warnings.append(msg)
        prod = np.ones((len(alphas), len(pts)))
        tables = [hermite_table(cutoff, pts[:, j]) for j in range(dim)]
        for j in range(dim):
            prod *= tables[j][alphas[:, j]]
        terms = prod * (wts * vals)
        coeffs = terms.sum(axis=1)
        scale = np.abs(terms).sum(axis=1).max()
    else:
        n = default_quad_order(cutoff) if quad_order is None else int(quad_order)
        if n < cutoff + 1:
            raise ValueError(f"quad_order {n} too small for cutoff {cutoff}")
        y, W = gauss_hermite(n)
        table = hermite_table(cutoff, y) * W
        mesh = np.meshgrid(*([y] * dim), indexing="ij")
        pts = np.stack(mesh, axis=-1)
        F = f.evaluate(pts)
        coeffs = _gather(_contract(table, F, dim), alphas)
        scale = _gather(_contract(np.abs(table), np.abs(F), dim), alphas).max()
    floor = 64 * np.finfo(float).eps * float(scale)
    # unresolved coefficients are stored as exact zeros
    coeffs = np.where(np.abs(coeffs) > floor, coeffs, 0)
    return HermiteExpansion.from_arrays(
        dim, cutoff, alphas, coeffs, noise_floor=floor, warnings=tuple(warnings)
    )


def gaussian_coefficients_1d(a, b, C, cutoff):
    """Exact Hermite coefficients of ``C exp(-a y^2/2 + b y)`` on R (Re a > 0).

    Derived from the Bargmann image
    ``C pi^(1/4) sqrt(2/(1+a)) exp(b^2/(2(1+a))) exp(rho z^2/2 + sqrt(2) b z/(1+a))``
    with ``rho = (1-a)/(1+a)``; used as an independent check of quadrature.
    """
    a, b = complex(a), complex(b)
    rho = (1 - a) / (1 + a)
    beta = np.sqrt(2.0) * b / (1 + a)
    pref = C * np.pi**0.25 * np.sqrt(2 / (1 + a)) * np.exp(b**2 / (2 * (1 + a)))
    # Taylor coefficients t_n of exp(rho z^2/2 + beta z), then c_n = t_n sqrt(n!)
    t = np.zeros(cutoff + 1, dtype=complex)
    t[0] = 1.0
    if cutoff >= 1:
        t[1] = beta
    for n in range(1, cutoff):
        # (n+1) t_{n+1} = beta t_n + rho t_{n-1}
        t[n + 1] = (beta * t[n] + rho * t[n - 1]) / (n + 1)
    from scipy.special import gammaln

    n = np.arange(cutoff + 1)
    return pref * t * np.exp(gammaln(n + 1) / 2)


__all__ = [
    "HermiteExpansion",
    "Gaussian",
    "HermiteCombo",
    "CoefficientRule",
    "Sampled",
    "hermite_table",
    "hermite_eval",
    "synthesize",
    "apply_H",
    "l2_inner",
    "analyze",
    "gauss_hermite",
    "gaussian_coefficients_1d",
]
