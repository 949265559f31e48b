"""Partial fractional Fourier transforms acting on Hermite coefficients.

``F_r h_alpha = exp(-i pi <r, alpha> / 2) h_alpha``; ``r = (1, ..., 1)`` is the
Fourier transform ``(2 pi)^(-d/2) int f(x) exp(-i<x, xi>) dx``.
"""

from fractions import Fraction

import numpy as np
from scipy.integrate import trapezoid

from .hermite import apply_H, synthesize
from .norms import modulation_norm

# exp(-i pi k / 2) for k mod 4
_QUARTER_TURNS = (1 + 0j, -1j, -1 + 0j, 1j)


def _as_r(r, d):
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if r.shape == (1,) and d > 1:
        r = np.repeat(r, d)
    if r.shape != (d,):
        raise ValueError(f"r must have {d} entries, got {r.shape[0]}")
    return r


def phase(r, alpha):
    """``exp(-i pi <r, alpha> / 2)``, exact when ``<r, alpha>`` is an integer."""
    t = float(np.sum(np.asarray(r, dtype=float) * np.asarray(alpha)))
    if t == round(t):
        return _QUARTER_TURNS[int(round(t)) % 4]
    # reduce modulo 4 in exact rational arithmetic before the exponential
    q = Fraction(t) % 4
    return complex(np.exp(-0.5j * np.pi * float(q)))


def fractional_ft(e, r):
    """Apply ``F_r`` to a Hermite expansion (``r`` a scalar or one entry per axis)."""
    r = _as_r(r, e.dim)
    return e.replace({a: c * phase(r, a) for a, c in e.coeffs.items()})


def verify_commutes_with_H(e, r, N=1):
    """Compare ``H^N F_r e`` with ``F_r H^N e`` coefficient by coefficient."""
    left = apply_H(fractional_ft(e, r), N).coeffs
    right = fractional_ft(apply_H(e, N), r).coeffs
    keys = set(left) | set(right)
    worst = max((abs(left.get(a, 0) - right.get(a, 0)) for a in keys), default=0.0)
    scale = max((abs(v) for v in right.values()), default=0.0)
    return {"exact": worst == 0.0, "max_abs_diff": float(worst), "scale": float(scale)}


def verify_isometry(e, r, w, p=2.0, grid=None):
    """Relative change of a radially weighted modulation norm under ``F_r``."""
    if not getattr(w, "is_radial", False):
        raise ValueError(f"weight {w!r} is not radial (a function of |z_j| only)")
    before = modulation_norm(e, w, p, p, grid)
    after = modulation_norm(fractional_ft(e, r), w, p, p, grid)
    dev = abs(after - before) / before if before else abs(after)
    return {"before": before, "after": after, "deviation": float(dev)}


def fourier_direct(e, xi, n=None, extent=None):
    """Fourier transform of the synthesized function by trapezoidal quadrature (d = 1).

    Independent check of ``r = 1``; the grid defaults to ``[-L, L]`` with ``L``
    beyond the turning point of the highest Hermite function present.
    """
    if e.dim != 1:
        raise ValueError("fourier_direct is one-dimensional")
    top = max((a[0] for a in e.coeffs), default=0)
    L = extent or (np.sqrt(2 * top + 1) + 12.0)
    n = n or 4001
    x = np.linspace(-L, L, n)
    f = synthesize(e, x)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    kern = np.exp(-1j * np.outer(xi, x))
    out = trapezoid(kern * f, x, axis=1) / np.sqrt(2 * np.pi)
    return out
