"""Weights on C^d, sequence weights and the moment transform between them.

A weight on the phase space is identified with a function of ``z = x + i xi``.
A radial profile ``omega0`` on ``[0, inf)`` defines the sequence weight

    theta(alpha)^2 = (1/(|alpha|+d-1)!) int_0^inf omega0(r)^2 r^(|alpha|+d-1) dr

(radial case) or ``(1/alpha!) int_{R_+^d} omega0(r)^2 r^alpha dr`` (separable
case). Profiles are applied to ``|z_j|^2``, so ``omega0(r) = exp(-r/2)``
reproduces the plain Fock norm with ``theta = 1``.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_legendre

from .bargmann import complex_points


# --- weight specs on C^d ---------------------------------------------------------


def _abs2(z):
    return np.sum(z.real**2 + z.imag**2, axis=-1)


@dataclass(frozen=True)
class GS:
    """``exp(|z|^2/2 + r M(z))`` with ``M(x + i xi) = |x|^(1/t) + |xi|^(1/s)``.

    ``quadratic=False`` drops the Gaussian factor and leaves ``exp(r M)``.
    """

    s: float
    t: float
    r: float
    quadratic: bool = True

    def __post_init__(self):
        if self.s <= 0 or self.t <= 0:
            raise ValueError("s and t must be positive")

    def M(self, z):
        x = np.sqrt(np.sum(z.real**2, axis=-1))
        xi = np.sqrt(np.sum(z.imag**2, axis=-1))
        return x ** (1 / self.t) + xi ** (1 / self.s)

    def log_eval(self, z):
        out = self.r * self.M(z)
        return out + _abs2(z) / 2 if self.quadratic else out

    is_radial = False


@dataclass(frozen=True)
class Quadratic:
    """``exp((1 - 2h)|z|^2 / 2)``."""

    h: float

    def __post_init__(self):
        if self.h < 0:
            raise ValueError("h must be non-negative")

    def log_eval(self, z):
        return (1 - 2 * self.h) * _abs2(z) / 2

    is_radial = True


@dataclass(frozen=True)
class FlatExp:
    """``exp((|x|^2 + |xi|^2)/4 - R(|x| + |xi|))``."""

    R: float

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("R must be positive")

    def log_eval(self, z):
        x = np.sqrt(np.sum(z.real**2, axis=-1))
        xi = np.sqrt(np.sum(z.imag**2, axis=-1))
        return (x**2 + xi**2) / 4 - self.R * (x + xi)

    is_radial = False


@dataclass(frozen=True)
class Poly:
    """``<z>^r = (1 + |z|^2)^(r/2)``."""

    r: float

    def log_eval(self, z):
        return self.r / 2 * np.log1p(_abs2(z))

    is_radial = True


@dataclass(frozen=True)
class Radial:
    """``omega0(|z|)`` for a positive profile on ``[0, inf)``."""

    omega0: object
    name: str = "radial"

    def log_eval(self, z):
        prof = self.omega0
        rho = np.sqrt(_abs2(z))
        if hasattr(prof, "log"):
            return prof.log(rho)
        return np.log(prof(rho))

    is_radial = True


WeightSpec = (GS, Quadratic, FlatExp, Poly, Radial)


def weight_log(w, z, d=None):
    d = d or (1 if np.ndim(z) == 0 else np.shape(z)[-1])
    return w.log_eval(complex_points(z, d))


def weight_eval(w, z, d=None):
    """Value of the weight ``w`` at ``z`` (computed as exp of its logarithm)."""
    with np.errstate(over="ignore"):
        out = np.exp(weight_log(w, z, d))
    return float(out) if np.ndim(out) == 0 else out


# --- radial profiles -------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """Named positive function on ``[0, inf)`` with an exact logarithm.

    ``exponential(h)``: ``exp(-h r)``; ``linear_exponential(R)``:
    ``exp(-R sqrt(r))``; ``power_exponential(h, k)``: ``(1+r)^k exp(-h r)``.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def log(self, r):
        r = np.asarray(r, dtype=float)
        p = self.params
        if self.kind == "exponential":
            return -p["h"] * r
        if self.kind == "linear_exponential":
            return -p["R"] * np.sqrt(r)
        if self.kind == "power_exponential":
            return p["k"] * np.log1p(r) - p["h"] * r
        raise ValueError(f"unknown profile {self.kind!r}")

    def __call__(self, r):
        return np.exp(self.log(r))


def exponential(h):
    return Profile("exponential", {"h": float(h)})


def linear_exponential(R):
    return Profile("linear_exponential", {"R": float(R)})


def _log_profile(omega0, r):
    if hasattr(omega0, "log"):
        return omega0.log(r)
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(omega0(r), dtype=float))


# --- moment transform ------------------------------------------------------------

_GL_X, _GL_W = roots_legendre(20)
T_MAX = 1e6


def _panel_rule(T, panels):
    edges = np.linspace(0.0, T, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    u = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return u, w


def _find_extent(log_f, u_probe_max=T_MAX):
    # double T until the integrand at T is 1e-16 below its running maximum
    T = 1.0
    probe = []
    while True:
        u = np.linspace(0.0, T, 257)[1:]
        vals = log_f(u)
        top = np.nanmax(np.where(np.isfinite(vals), vals, -np.inf))
        tail = vals[-1]
        probe.append((T, float(tail), float(top)))
        if np.isfinite(top) and (tail < top + np.log(1e-16) or tail == -np.inf) and np.argmax(vals) < len(u) - 1:
            return T, top
        T *= 2
        if T > u_probe_max:
            report = ", ".join(f"T={t:g}: log tail {a:.3g}, log peak {b:.3g}" for t, a, b in probe[-4:])
            raise ValueError(f"moment integral does not converge (divergent tail?); probe: {report}")


def _log_moment_1d(omega0, k):
    """``log int_0^inf omega0(r)^2 r^k dr`` via ``r = u^2`` and composite Gauss-Legendre."""

    def log_f(u):
        with np.errstate(divide="ignore"):
            return 2 * _log_profile(omega0, u * u) + (2 * k + 1) * np.log(u) + np.log(2.0)

    T, top = _find_extent(log_f)
    panels, prev = 8, None
    while True:
        u, w = _panel_rule(T, panels)
        val = np.sum(w * np.exp(log_f(u) - top))
        if prev is not None and abs(val - prev) <= 1e-10 * abs(val):
            return top + np.log(val)
        prev, panels = val, panels * 2
        if panels > 2**16:
            return top + np.log(val)


def theta_from_radial(omega0, alpha, d=None):
    """``theta(alpha)`` for a radial profile, by adaptive quadrature."""
    alpha = (alpha,) if np.ndim(alpha) == 0 else tuple(alpha)
    d = d or len(alpha)
    k = sum(alpha) + d - 1
    return float(np.exp((_log_moment_1d(omega0, k) - gammaln(k + 1)) / 2))


def theta_from_separable(omega0, alpha):
    """``theta(alpha)`` for a profile on ``R_+^d`` (callable on arrays of shape (..., d)).

    Tensor composite Gauss-Legendre in ``r_j = u_j^2``.
    """
    alpha = (alpha,) if np.ndim(alpha) == 0 else tuple(alpha)
    d = len(alpha)
    a = np.asarray(alpha, float)

    def log_f(u):
        # u: (..., d)
        with np.errstate(divide="ignore"):
            return (
                2 * _log_profile(omega0, u * u)
                + np.sum((2 * a + 1) * np.log(u), axis=-1)
                + d * np.log(2.0)
            )

    def diag(t):
        return log_f(np.repeat(np.asarray(t)[:, None], d, axis=1))

    T, _ = _find_extent(diag)
    # widen until every face of the cube is negligible
    while True:
        u, _ = _panel_rule(T, 16)
        mesh = np.stack(np.meshgrid(*([u] * d), indexing="ij"), axis=-1)
        L = log_f(mesh)
        top = L.max()
        face = max(np.take(L, -1, axis=j).max() for j in range(d))
        if face < top + np.log(1e-16):
            break
        T *= 2
        if T > T_MAX:
            raise ValueError("separable moment integral does not converge")
    panels, prev = 8, None
    while True:
        u, w = _panel_rule(T, panels)
        mesh = np.stack(np.meshgrid(*([u] * d), indexing="ij"), axis=-1)
        W = w
        for _ in range(d - 1):
            W = np.multiply.outer(W, w)
        val = np.sum(W * np.exp(log_f(mesh) - top))
        if prev is not None and abs(val - prev) <= 1e-10 * abs(val):
            break
        prev, panels = val, panels * 2
        if panels > 256:
            break
    logfac = gammaln(a + 1).sum()
    return float(np.exp((top + np.log(val) - logfac) / 2))


def theta_closed_exponential(h, alpha, d=None):
    """``((2h)^(-|alpha|-d))^(1/2)``, the transform of ``exp(-h r)``."""
    if h <= 0:
        raise ValueError("h must be positive")
    alpha = (alpha,) if np.ndim(alpha) == 0 else tuple(alpha)
    d = d or len(alpha)
    return float(np.exp(-(sum(alpha) + d) * np.log(2 * h) / 2))


def theta_closed_linear_exponential(R, alpha, d=None):
    """Square root of ``2 (2R)^(-2(|alpha|+d)) (2|alpha|+2d-1)! / (|alpha|+d-1)!``."""
    if R <= 0:
        raise ValueError("R must be positive")
    alpha = (alpha,) if np.ndim(alpha) == 0 else tuple(alpha)
    d = d or len(alpha)
    n = sum(alpha) + d
    log2 = np.log(2.0) - 2 * n * np.log(2 * R) + gammaln(2 * n) - gammaln(n)
    return float(np.exp(log2 / 2))


# --- sequence weights ------------------------------------------------------------


@dataclass(frozen=True)
class SequenceWeight:
    """Positive weight on multi-indices, ``rule(alpha) -> theta(alpha)``."""

    rule: object
    name: str = "custom"

    def __call__(self, alpha):
        v = float(self.rule(tuple(alpha)))
        if not v > 0:
            raise ValueError(f"sequence weight {self.name} is not positive at {alpha}")
        return v

    @classmethod
    def constant(cls, value=1.0):
        return cls(lambda a: value, f"constant({value})")

    @classmethod
    def exponential(cls, h, d):
        return cls(lambda a: theta_closed_exponential(h, a, d), f"exponential(h={h})")

    @classmethod
    def linear_exponential(cls, R, d):
        return cls(lambda a: theta_closed_linear_exponential(R, a, d), f"linear_exponential(R={R})")

    @classmethod
    def from_radial(cls, omega0, d):
        @lru_cache(maxsize=None)
        def by_order(n):
            return theta_from_radial(omega0, (n,) + (0,) * (d - 1), d)

        return cls(lambda a: by_order(sum(a)), "radial transform")

    @classmethod
    def from_separable(cls, omega0):
        return cls(lru_cache(maxsize=None)(lambda a: theta_from_separable(omega0, a)), "separable transform")

    def lower_bound_check(self, d, cutoff, Rs=(1.0, 2.0, 4.0)):
        """Ratios ``R^|alpha| / (sqrt(alpha!) theta(alpha))`` up to ``cutoff``.

        For each R the report gives the largest ratio and whether the per-order
        maximum is non-increasing over the top half of the orders, which is the
        numerical face of the bound ``R^|alpha|/sqrt(alpha!) <~ theta(alpha)``.
        """
        from .multiindex import multi_indices

        out = {}
        for R in Rs:
            per_order = np.full(cutoff + 1, -np.inf)
            for a in multi_indices(d, cutoff):
                n = sum(a)
                lr = n * np.log(R) - gammaln(np.asarray(a) + 1.0).sum() / 2 - np.log(self(a))
                per_order[n] = max(per_order[n], lr)
            tail = per_order[cutoff // 2 :]
            out[R] = {
                "max_ratio": float(np.exp(per_order.max())),
                "tail_non_increasing": bool(np.all(np.diff(tail) <= 1e-12)),
            }
        return out


# --- sampled predicates ----------------------------------------------------------


def _ladder_min(holds_at):
    for c in (0.125, 0.25, 0.5, 1.0, 2.0):
        if holds_at(c):
            return c
    return None


def _uniform_points(rng, n, d, box):
    u = rng.uniform(-box, box, size=(n, 2 * d))
    return u[:, :d] + 1j * u[:, d:]


def check_moderate(w, v, box=10.0, samples=20000, d=1, seed=0, jump=0.25):
    """Sampled test of ``w(x + y) <~ w(x) v(y)``.

    Draws ``samples`` pairs in ``[-box, box]^(2d)`` and in the half box. The
    bound is reported to hold when the worst log-ratio grows by less than
    ``jump`` between the two boxes, i.e. when it has visibly saturated.
    This is a statistical verdict with the witness point attached.
    """
    rng = np.random.default_rng(seed)

    def worst(b):
        x, y = _uniform_points(rng, samples, d, b), _uniform_points(rng, samples, d, b)
        lr = w.log_eval(x + y) - w.log_eval(x) - v.log_eval(y)
        i = int(np.argmax(lr))
        return float(lr[i]), x[i], y[i]

    half, _, _ = worst(box / 2)
    full, wx, wy = worst(box)
    full = max(full, half)
    return {
        "holds": bool(full - half < jump),
        "C": float(np.exp(full)),
        "log_ratio_half_box": half,
        "log_ratio_box": full,
        "witness": {"x": wx.tolist(), "y": wy.tolist()},
    }


def check_gauss_sandwich(w, c, box=10.0, n=201, d=1, jump=0.25):
    """Grid test of ``C^-1 exp(-c|z|^2) <= w(z) <= C exp(c|z|^2)``.

    The grid is ``n`` points per real axis (d = 1) or a random cloud of
    ``n**2`` points (d > 1). Reports ``holds`` for the given ``c``, the fitted
    ``C`` and the smallest ``c`` of the ladder 1/8, 1/4, 1/2, 1, 2 for which the
    bounds saturate.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if d == 1:
        t = np.linspace(-box, box, n)
        X, Y = np.meshgrid(t, t, indexing="ij")
        Z = (X + 1j * Y).reshape(-1, 1)
    else:
        Z = _uniform_points(np.random.default_rng(0), n * n, d, box)
    L = w.log_eval(Z)
    r2 = _abs2(Z)
    inner = np.all(np.abs(np.concatenate([Z.real, Z.imag], axis=-1)) <= box / 2 + 1e-12, axis=-1)

    def excess(cc, mask=None):
        up, lo = L - cc * r2, -L - cc * r2
        if mask is not None:
            up, lo = up[mask], lo[mask]
        return max(up.max(), lo.max())

    def holds(cc):
        return excess(cc) - excess(cc, inner) < jump

    i = int(np.argmax(np.maximum(L - c * r2, -L - c * r2)))
    return {
        "holds": bool(holds(c)),
        "C": float(np.exp(max(excess(c), 0.0))),
        "witness": Z[i].tolist(),
        "min_c": _ladder_min(holds),
    }


def dirichlet_simplex_identity(alpha, d=None, mc_samples=10**6, seed=0):
    """Monte Carlo check of ``int_simplex prod t_j^alpha_j (1 - sum t)^alpha_d = alpha!/(|alpha|+d-1)!``.

    Points are drawn uniformly in the unit cube ``[0,1]^(d-1)`` and the
    simplex is selected by an indicator.
    """
    alpha = tuple(int(a) for a in alpha)
    d = d or len(alpha)
    if d < 2 or len(alpha) != d:
        raise ValueError("need d >= 2 and len(alpha) == d")
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 1.0, size=(mc_samples, d - 1))
    rest = 1.0 - t.sum(axis=1)
    inside = rest >= 0
    vals = np.where(
        inside,
        np.prod(t ** np.asarray(alpha[:-1]), axis=1) * np.clip(rest, 0, None) ** alpha[-1],
        0.0,
    )
    lhs = float(vals.mean())
    stderr = float(vals.std(ddof=1) / np.sqrt(mc_samples))
    rhs = float(np.exp(gammaln(np.asarray(alpha) + 1.0).sum() - gammaln(sum(alpha) + d)))
    return {
        "lhs": lhs,
        "rhs": rhs,
        "rel_err": abs(lhs - rhs) / rhs,
        "stderr": stderr,
        "within_3se": bool(abs(lhs - rhs) <= 3 * stderr),
    }
