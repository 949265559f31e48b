"""Decay fitting of Hermite coefficients and placement in the space ladder.

Membership in the spaces below is an asymptotic statement about the
coefficients ``c_alpha``; from finitely many coefficients it can only be
estimated. The classifier works on the per-shell envelope

    m_n = max_{|alpha| = n} |c_alpha|

(with values at or below the expansion's noise floor treated as zero) and
fits local rates on the sliding tail windows ``[W, 2W]``, ``W = 8, 16, 24``.
How each label turns the window rates into a verdict is documented in
:func:`classify`. Verdicts are evidence, not proofs.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .hermite import ZERO_CUTOFF
from .norms import pilipovic_log_terms, pilipovic_seminorm
from .specs import Gaussian

MEMBER, NON_MEMBER, BORDERLINE = "member", "non-member", "borderline"
DEFAULT_S_GRID = (0.25, 0.5, 1.0)
WINDOWS = (8, 16, 24)


@dataclass(frozen=True)
class DecayFit:
    """One least-squares model of the coefficient tail.

    ``model`` is ``stretched_exp`` (``log|c| ~ logC - rate |alpha|^(1/(2s))``),
    ``factorial`` (``log|c| ~ logC + |alpha| log R - log(alpha!)/2``, ``rate``
    holds ``R``), ``dual_factorial`` (``+ log(alpha!)/2``) or ``finite``.
    """

    model: str
    rate: float = 0.0
    logC: float = 0.0
    residual: float = 0.0
    tail_window: tuple = (0, 0)
    s: float = None


@dataclass(frozen=True)
class SpaceLabel:
    """A space of the ladder: ``S0``, ``S_s``, ``Sigma_s``, ``H_flat``, ``H_flat0``; ``dual`` adds a prime."""

    kind: str
    s: float = None
    dual: bool = False

    def __post_init__(self):
        if self.kind not in ("S0", "S", "Sigma", "H_flat", "H_flat0"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind in ("S", "Sigma") and not (self.s and self.s > 0):
            raise ValueError("s-parameterized labels need s > 0")

    def __str__(self):
        base = self.kind if self.s is None else f"{self.kind}_{self.s:g}"
        return base + ("'" if self.dual else "")


def ladder(s_grid=DEFAULT_S_GRID):
    """Labels ordered by inclusion, smallest space first."""
    test = [SpaceLabel("S0")]
    placed = False
    for s in sorted(set(s_grid)):
        if s >= 0.5 and not placed:
            test += [SpaceLabel("H_flat0"), SpaceLabel("H_flat")]
            placed = True
        test += [SpaceLabel("Sigma", s), SpaceLabel("S", s)]
    if not placed:
        test += [SpaceLabel("H_flat0"), SpaceLabel("H_flat")]
    dual = [SpaceLabel(l.kind, l.s, True) for l in reversed(test)]
    return test + dual


@dataclass
class ClassificationReport:
    """Verdicts per label (after monotone closure), raw verdicts, fits and caveats."""

    verdicts: dict
    raw_verdicts: dict
    fits: list
    caveat: dict
    window_rates: dict = field(default_factory=dict)
    gaussian_criterion: dict = None
    notes: tuple = ()

    def members(self):
        return [k for k, v in self.verdicts.items() if v == MEMBER]

    def is_monotone(self):
        return monotone_ok(list(self.verdicts.values()))

    def to_dict(self):
        return {
            "verdicts": dict(self.verdicts),
            "raw_verdicts": dict(self.raw_verdicts),
            "fits": [f.__dict__ for f in self.fits],
            "window_rates": self.window_rates,
            "caveat": self.caveat,
            "gaussian_criterion": self.gaussian_criterion,
            "notes": list(self.notes),
        }


# --- shell envelopes -------------------------------------------------------------


def _envelopes(e):
    """Per-shell maxima of ``log|c|``, ``log|c| + log(a!)/2`` and ``log|c| - log(a!)/2``."""
    n_max = e.cutoff
    plain = np.full(n_max + 1, -np.inf)
    fac = np.full(n_max + 1, -np.inf)
    dual = np.full(n_max + 1, -np.inf)
    floor = e.noise_floor
    for a, c in e.coeffs.items():
        m = abs(c)
        if m <= floor:
            continue
        n = sum(a)
        lc = np.log(m)
        lf = gammaln(np.asarray(a) + 1.0).sum()
        plain[n] = max(plain[n], lc)
        fac[n] = max(fac[n], lc + lf / 2)
        dual[n] = max(dual[n], lc - lf / 2)
    return plain, fac, dual


def _top_shell(plain):
    nz = np.flatnonzero(np.isfinite(plain))
    return int(nz[-1]) if len(nz) else -1


def is_finite_expansion(e):
    """True when the coefficients stop abruptly below the cutoff."""
    plain, _, _ = _envelopes(e)
    top = _top_shell(plain)
    if top < 0:
        return True
    if top >= e.cutoff:
        return False
    if top == 0 or not np.isfinite(plain[top - 1]):
        return True
    # geometric extrapolation of the last step; an abrupt stop predicts a resolvable value
    predicted = 2 * plain[top] - plain[top - 1]
    return bool(predicted > np.log(1e3 * max(e.noise_floor, ZERO_CUTOFF)))


def _windows(plain, top):
    out = []
    for W in WINDOWS:
        lo, hi = W, min(2 * W, top)
        n = np.arange(lo, hi + 1)
        n = n[np.isfinite(plain[lo : hi + 1])] if hi >= lo else n[:0]
        if len(n) >= 3:
            out.append((W, n))
    return out


def _slope(x, y):
    return float(np.polyfit(x, y, 1)[0])


# --- fits --------------------------------------------------------------------------


def fit_decay(e, s_grid=DEFAULT_S_GRID, min_points=8):
    """Least-squares tail fits, sorted by residual.

    The tail window is ``[8, n_top]`` over the non-zero shells. A finitely
    supported expansion returns the single ``finite`` fit. Fewer than
    ``min_points`` usable shells raise ``ValueError``.
    """
    if is_finite_expansion(e):
        top = _top_shell(_envelopes(e)[0])
        return [DecayFit("finite", tail_window=(0, max(top, 0)))]
    plain, fac, dual = _envelopes(e)
    top = _top_shell(plain)
    n = np.arange(len(plain))
    sel = (n >= 8) & np.isfinite(plain)
    if sel.sum() < min_points:
        raise ValueError(f"need {min_points} non-zero shells in the tail window, found {int(sel.sum())}")
    n = n[sel].astype(float)
    window = (int(n[0]), int(top))
    fits = []

    def lin(x, y):
        A = np.vstack([x, np.ones_like(x)]).T
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        res = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
        return coef[0], coef[1], res

    for s in s_grid:
        k, b, res = lin(n ** (1 / (2 * s)), plain[sel])
        fits.append(DecayFit("stretched_exp", float(-k), float(b), res, window, s))
    k, b, res = lin(n, fac[sel])
    fits.append(DecayFit("factorial", float(np.exp(k)), float(b), res, window))
    k, b, res = lin(n, dual[sel])
    fits.append(DecayFit("dual_factorial", float(np.exp(k)), float(b), res, window))
    return sorted(fits, key=lambda f: f.residual)


# --- verdict rules -----------------------------------------------------------------


def _roumieu(r, tol):
    last, first = r[-1], r[0]
    if last > tol and last >= 0.9 * first:
        return MEMBER
    if last <= tol or (np.all(np.diff(r) < 0) and last < 0.8 * first):
        return NON_MEMBER
    return BORDERLINE


def _beurling(r, tol):
    inc = np.diff(r)
    if r[-1] > tol and np.all(inc > tol):
        return MEMBER
    if r[-1] <= tol or inc.max() <= tol:
        return NON_MEMBER
    return BORDERLINE


def _dual_roumieu(g, tol):
    # every h > 0: growth rate must fade
    last, first = g[-1], g[0]
    if last <= tol or (np.all(np.diff(g) < 0) and last < 0.8 * first):
        return MEMBER
    if last > tol and last >= 0.9 * first:
        return NON_MEMBER
    return BORDERLINE


def _dual_beurling(g, tol):
    # some h > 0: growth rate must not keep increasing
    inc = np.diff(g)
    if g[-1] <= tol or inc.max() <= tol:
        return MEMBER
    if g[-1] > tol and np.all(inc > tol):
        return NON_MEMBER
    return BORDERLINE


def _stable(v, tol):
    inc = np.diff(v)
    if np.all(inc <= tol):
        return MEMBER
    if np.all(inc > tol):
        return NON_MEMBER
    return BORDERLINE


def _to_minus_inf(v, tol):
    inc = np.diff(v)
    if np.all(inc < -tol):
        return MEMBER
    if np.all(inc >= -tol):
        return NON_MEMBER
    return BORDERLINE


# --- monotone closure --------------------------------------------------------------

_COST = {
    (MEMBER, MEMBER): 0, (NON_MEMBER, NON_MEMBER): 0, (BORDERLINE, BORDERLINE): 0,
    (MEMBER, NON_MEMBER): 2, (NON_MEMBER, MEMBER): 2,
}


def monotone_ok(chain):
    """Verdicts along the chain read non-member*, borderline*, member*."""
    rank = {NON_MEMBER: 0, BORDERLINE: 1, MEMBER: 2}
    r = [rank[v] for v in chain]
    return all(a <= b for a, b in zip(r, r[1:]))


def monotone_closure(chain):
    """Closest sequence of the form non-member*, borderline*, member*.

    Flipping member and non-member costs 2, any change involving borderline
    costs 1; ties prefer fewer borderline entries, then the earliest cut.
    """
    m = len(chain)
    best = None
    for a in range(m + 1):
        for b in range(a, m + 1):
            cand = [NON_MEMBER] * a + [BORDERLINE] * (b - a) + [MEMBER] * (m - b)
            cost = sum(_COST.get((x, y), 1) for x, y in zip(chain, cand))
            key = (cost, b - a, a)
            if best is None or key < best[0]:
                best = (key, cand)
    return best[1]


# --- classification ----------------------------------------------------------------


def classify(e, tol=0.05, s_grid=DEFAULT_S_GRID, gaussian=None):
    """Evidence-graded membership verdicts for every label of :func:`ladder`.

    Rules, with ``rho`` the fitted decay rate of the envelope against
    ``n^(1/(2s))`` on each window, ``sigma`` the slope of the factorial
    envelope ``log|c| + log(alpha!)/2`` and ``tau`` that of
    ``log|c| - log(alpha!)/2``:

    * ``S0``: member iff the expansion is finite.
    * ``S_s`` (some r): last rate above ``tol`` and not collapsing.
    * ``Sigma_s`` (every r): rates keep increasing by more than ``tol``.
    * ``H_flat`` (some R): ``sigma`` does not increase by more than ``tol``.
    * ``H_flat0`` (every R): ``sigma`` decreases by more than ``tol`` per window.
    * Dual labels mirror these on the growth ``-rho`` and on ``tau``.

    At least two windows are needed for any non-trivial verdict. Raw
    verdicts are then projected onto the nearest monotone sequence along the
    inclusion chain; both are reported.
    """
    chain = ladder(s_grid)
    plain, fac, dual = _envelopes(e)
    top = _top_shell(plain)
    finite = is_finite_expansion(e)
    raw = {}
    rates = {}
    if finite:
        raw = {str(l): MEMBER for l in chain}
    else:
        wins = _windows(plain, top)
        enough = len(wins) >= 2
        for lab in chain:
            key = str(lab)
            if lab.kind == "S0":
                raw[key] = MEMBER if lab.dual else NON_MEMBER
                continue
            if not enough:
                raw[key] = BORDERLINE
                continue
            if lab.kind in ("S", "Sigma"):
                r = np.array([-_slope(n ** (1 / (2 * lab.s)), plain[n]) for _, n in wins])
                rates[f"rho_{lab.s:g}"] = r.tolist()
                if lab.dual:
                    rule = _dual_roumieu if lab.kind == "S" else _dual_beurling
                    raw[key] = rule(-r, tol)
                else:
                    rule = _roumieu if lab.kind == "S" else _beurling
                    raw[key] = rule(r, tol)
            else:
                if lab.dual:
                    tau = np.array([_slope(n, dual[n]) for _, n in wins])
                    rates["tau"] = tau.tolist()
                    raw[key] = _to_minus_inf(tau, tol) if lab.kind == "H_flat" else _stable(tau, tol)
                else:
                    sig = np.array([_slope(n, fac[n]) for _, n in wins])
                    rates["sigma"] = sig.tolist()
                    raw[key] = _stable(sig, tol) if lab.kind == "H_flat" else _to_minus_inf(sig, tol)
        rates["windows"] = [[int(n[0]), int(n[-1])] for _, n in wins]
    keys = [str(l) for l in chain]
    adjusted = dict(zip(keys, monotone_closure([raw[k] for k in keys])))
    try:
        fits = fit_decay(e, s_grid)
    except ValueError:
        fits = []
    report = ClassificationReport(
        verdicts=adjusted,
        raw_verdicts=raw,
        fits=fits,
        caveat={
            "cutoff": e.cutoff,
            "tol": tol,
            "noise_floor": e.noise_floor,
            "top_shell": top,
            "raw_monotone": monotone_ok([raw[k] for k in keys]),
        },
        window_rates=rates,
        notes=(
            "H_flat row's H^N bound with N1 = N/log N is displayed, not enforced",
            "S_s uses 'for some r' (Roumieu); Sigma_s uses 'for every r' (Beurling)",
        ),
    )
    if gaussian is not None:
        g = gaussian_membership(gaussian.A, gaussian.L)
        v = adjusted.get("Sigma_0.5")
        agree = None if v in (None, BORDERLINE) else (v == MEMBER) == g["member"]
        report.gaussian_criterion = {**g, "classifier_verdict": v, "agreement": agree}
    return report


def gaussian_membership(A, L=None):
    """Algebraic test for ``C exp(-<Ay,y>/2 + L(y))``: member iff ``A = I``.

    For diagonalizable ``A`` this is the same as every eigenvalue being 1.
    """
    g = Gaussian(A, L)
    eig = np.linalg.eigvals(g.A)
    member = bool(np.abs(g.A - np.eye(g.dim)).max() <= 1e-10)
    return {"member": member, "eigenvalues": [complex(v) for v in eig]}


# --- oscillator bounds vs coefficient bounds ------------------------------------------


def _seminorm_extended(e, h, s, N_sup):
    while True:
        sn = pilipovic_seminorm(e, h, s, N_sup)
        if sn.maximizer < N_sup or N_sup >= 4096:
            return sn, N_sup
        N_sup *= 2


def equiv_forward_check(e, h, s, N_sup=60):
    """Coefficient bound implied by the harmonic-oscillator bound.

    ``C`` is the seminorm (sup over N, extended while the maximizer sits at
    the end of the range); every stored coefficient is then compared with
    ``4^s C exp(-s |alpha|^(1/(2s)) / h^(1/(2s)))`` in log space.
    """
    if h <= 0 or s <= 0:
        raise ValueError("h and s must be positive")
    sn, N_used = _seminorm_extended(e, h, s, N_sup)
    if not e.coeffs:
        return {"holds": True, "violations": 0, "worst_slack": None, "C": 0.0, "maximizer": 0}
    logC = np.log(sn.value)
    slack = []
    for a, c in e.coeffs.items():
        n = sum(a)
        bound = s * np.log(4) + logC - s * n ** (1 / (2 * s)) / h ** (1 / (2 * s))
        slack.append(bound - np.log(abs(c)))
    slack = np.array(slack)
    # rounding allowance for the log-space comparison
    violations = int(np.sum(slack < -1e-12))
    return {
        "holds": violations == 0,
        "violations": violations,
        "worst_slack": float(slack.min()),
        "C": sn.value,
        "maximizer": sn.maximizer,
        "N_sup": N_used,
    }


def equiv_backward_check(e, h, s, N_sup=60):
    """Harmonic-oscillator growth implied by the coefficient bound.

    Fits ``C = max |c_alpha| exp(|alpha|^(1/(2s)) / h)``, then computes the
    ratios ``||H^N f|| / ((3 (4 s h)^(2s))^N (N!)^(2s))`` for ``N <= N_sup``.
    The sequence counts as bounded when its maximum is attained before
    ``N_sup``; the constant ``C1`` is reported, not asserted.
    """
    if h <= 0 or s <= 0:
        raise ValueError("h and s must be positive")
    if not e.coeffs:
        return {"bounded": True, "maximizer": 0, "max_ratio": 0.0, "C": 0.0, "C1": None, "ratios": []}
    logs = [np.log(abs(c)) + sum(a) ** (1 / (2 * s)) / h for a, c in e.coeffs.items()]
    logC = max(logs)
    if not np.isfinite(logC) or logC > 700:
        raise ValueError(
            f"coefficient bound fit failed: log C = {logC:.3g}; the coefficients do not decay "
            f"like exp(-|alpha|^(1/(2s))/h) for s={s}, h={h}"
        )
    base = 3 * (4 * s * h) ** (2 * s)
    # pilipovic_log_terms uses h^N; pass the combined base
    t = pilipovic_log_terms(e, base, s, N_sup)
    i = int(np.argmax(t))
    extra = 1 + 2 * s * h ** (2 * s * e.dim) * np.exp(gammaln(2 * s * e.dim))
    return {
        "bounded": i < N_sup,
        "maximizer": i,
        "max_ratio": float(np.exp(t[i])),
        "C": float(np.exp(logC)),
        "C1": float(np.exp(t[i] - logC) / extra),
        "ratios": np.exp(t).tolist(),
    }


__all__ = [
    "DecayFit",
    "SpaceLabel",
    "ClassificationReport",
    "ladder",
    "fit_decay",
    "classify",
    "gaussian_membership",
    "equiv_forward_check",
    "equiv_backward_check",
    "monotone_closure",
    "monotone_ok",
    "is_finite_expansion",
    "MEMBER",
    "NON_MEMBER",
    "BORDERLINE",
]
