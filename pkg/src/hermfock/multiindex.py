"""Multi-index helpers.

A multi-index is a plain tuple of non-negative ints. Enumeration is graded:
by total order first, then reverse-lexicographic inside a shell, so that
``(2, 0)`` precedes ``(1, 1)`` precedes ``(0, 2)``.
"""

from functools import lru_cache
from math import lgamma

import numpy as np


def check_alpha(alpha, dim=None):
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index entries must be non-negative, got {alpha}")
    if not alpha:
        raise ValueError("multi-index must have length >= 1")
    if dim is not None and len(alpha) != dim:
        raise ValueError(f"multi-index {alpha} does not have length {dim}")
    return alpha


def order(alpha):
    """Total order |alpha|."""
    return sum(alpha)


def log_factorial(alpha):
    """log(alpha!) via log-gamma."""
    return sum(lgamma(a + 1) for a in alpha)


def _compositions(n, d):
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, d - 1):
            yield (first,) + rest


def shell(n, d):
    """All multi-indices of length ``d`` with total order ``n``."""
    return list(_compositions(n, d))


@lru_cache(maxsize=64)
def multi_indices(d, cutoff):
    """All multi-indices with ``|alpha| <= cutoff``, in graded order."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    out = []
    for n in range(cutoff + 1):
        out.extend(_compositions(n, d))
    return tuple(out)


@lru_cache(maxsize=64)
def index_arrays(d, cutoff):
    """Return ``(alphas, orders, log_factorials)`` as read-only arrays."""
    alphas = np.array(multi_indices(d, cutoff), dtype=np.int64).reshape(-1, d)
    orders = alphas.sum(axis=1)
    from scipy.special import gammaln

    logfac = gammaln(alphas + 1.0).sum(axis=1)
    for arr in (alphas, orders, logfac):
        arr.setflags(write=False)
    return alphas, orders, logfac
