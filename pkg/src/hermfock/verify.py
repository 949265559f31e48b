"""Named suites of numerical identity checks, run by ``hermfock verify``.

Every check records the worst observed error and its tolerance; a suite
fails when any of its checks does. All randomness comes from one seeded
generator per suite.
"""

import warnings

import numpy as np

from . import bargmann as bg
from .classify import (
    MEMBER,
    classify,
    equiv_backward_check,
    equiv_forward_check,
)
from .fracft import fourier_direct, fractional_ft, verify_commutes_with_H, verify_isometry
from .hermite import HermiteExpansion, analyze, l2_inner, synthesize
from .norms import (
    GridSpec,
    PlaneGrid,
    a2_weighted_norm_quadrature,
    a2_weighted_norm_series,
    fock_norm_fepexp,
    mixed_norm,
    modulation_norm,
    series_function,
)
from .specs import CoefficientRule, Gaussian, HermiteCombo
from .weights import (
    GS,
    Quadratic,
    SequenceWeight,
    dirichlet_simplex_identity,
    exponential,
    linear_exponential,
    theta_closed_exponential,
    theta_closed_linear_exponential,
    theta_from_radial,
    theta_from_separable,
    weight_eval,
)


def _check(name, err, tol):
    err = float(err)
    return {"name": name, "status": "pass" if err <= tol else "fail", "worst_err": err, "tolerance": tol}


def _flag(name, ok):
    return {"name": name, "status": "pass" if ok else "fail", "worst_err": 0.0 if ok else 1.0, "tolerance": 0.0}


def random_expansion(rng, d=1, cutoff=8, terms=None, decay=0.5):
    """Random complex coefficients with magnitudes ``~ exp(-decay |alpha|)``."""
    from .multiindex import multi_indices

    idx = list(multi_indices(d, cutoff))
    if terms is not None:
        pick = rng.choice(len(idx), size=min(terms, len(idx)), replace=False)
        idx = [idx[i] for i in sorted(pick)]
    coeffs = {
        a: complex(rng.normal(), rng.normal()) * np.exp(-decay * sum(a)) for a in idx
    }
    return HermiteExpansion(d, cutoff, coeffs)


def _random_disc(rng, n, d, radius):
    z = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    z *= radius * rng.uniform(0, 1, size=(n, 1)) / np.linalg.norm(z, axis=1, keepdims=True)
    return z


def suite_bridge(rng):
    out = []
    corpus = [
        Gaussian(2 * np.eye(1)),
        Gaussian(np.eye(1), [1.0]),
        Gaussian(np.array([[1.5 + 0.5j]]), [0.3 - 0.2j]),
        HermiteCombo((((0,), 1.0), ((3,), 2.0 - 1j))),
    ]
    worst = 0.0
    for f in corpus:
        z = _random_disc(rng, 10, 1, 3.0)
        a = np.asarray(bg.bargmann_quadrature(f, z))
        b = np.asarray(bg.bargmann_series(analyze(f, cutoff=60), z))
        worst = max(worst, np.max(np.abs(a - b) / (1 + np.abs(b))))
    out.append(_check("bargmann quadrature vs series", worst, 1e-7))
    worst = 0.0
    for f in [HermiteCombo((((k,), 1.0),)) for k in range(3)] + [Gaussian(2 * np.eye(1))]:
        x, xi = rng.uniform(-3, 3, 25), rng.uniform(-3, 3, 25)
        a, b = bg.stft_gaussian(f, x, xi), bg.stft_direct(f, x, xi)
        worst = max(worst, np.max(np.abs(np.asarray(a) - np.asarray(b))))
    out.append(_check("stft via bargmann vs direct", worst, 1e-7))
    f = HermiteCombo((((2,), 1.0),))
    G = bg.stft_plane(f)
    x, xi = rng.uniform(-2, 2, 5), rng.uniform(-2, 2, 5)
    a = np.asarray(bg.uv_apply(G, x, xi))
    b = np.asarray(bg.bargmann_series(f.to_expansion(), x + 1j * xi))
    out.append(_check("uv_apply o stft reproduces Bargmann", np.max(np.abs(a - b) / (1 + np.abs(b))), 1e-6))
    return out


def suite_reproducing(rng):
    out = []
    z = np.array([0, 1, 1 + 1j, 2 - 1j], complex)
    a = np.asarray(bg.reproducing_project(bg.BoxFunction(lifted=True), z))
    b = np.asarray(bg.pi_a_box_closed_form(z[:, None]))
    out.append(_check("box lift projection vs closed form", np.max(np.abs(a - b)), 1e-6))
    worst = 0.0
    for k in range(7):
        F = bg.SeriesFunction(HermiteExpansion.basis((k,)))
        zz = _random_disc(rng, 5, 1, 2.0)
        worst = max(worst, np.max(np.abs(np.asarray(bg.reproducing_project(F, zz)) - np.asarray(F(zz)))))
    out.append(_check("projection fixes e_alpha", worst, 1e-6))
    worst = 0.0
    for _ in range(3):
        e1, e2 = random_expansion(rng), random_expansion(rng)
        q = bg.a2_inner_quadrature(bg.SeriesFunction(e1), bg.SeriesFunction(e2))
        s = l2_inner(e1, e2)
        worst = max(worst, abs(q - s) / abs(s))
    out.append(_check("L2 inner product equals Fock inner product", worst, 1e-6))
    return out


def suite_weights(rng):
    out = []
    worst = 0.0
    for d in (1, 2):
        for n in range(26):
            a = (n,) + (0,) * (d - 1)
            for h in (0.5, 1.0, 2.0):
                worst = max(worst, abs(theta_from_radial(exponential(h), a, d) / theta_closed_exponential(h, a, d) - 1))
            for R in (0.5, 1.0):
                worst = max(
                    worst,
                    abs(theta_from_radial(linear_exponential(R), a, d) / theta_closed_linear_exponential(R, a, d) - 1),
                )
    out.append(_check("theta transform vs closed forms", worst, 1e-8))

    class SumProfile:
        def __init__(self, p):
            self.p = p

        def log(self, r):
            return self.p.log(np.sum(r, axis=-1))

    worst = 0.0
    p = exponential(0.8)
    for a in [(0, 0), (2, 1), (4, 4), (7, 3)]:
        worst = max(worst, abs(theta_from_separable(SumProfile(p), a) / theta_from_radial(p, a, 2) - 1))
    out.append(_check("radial vs separable transform (d=2)", worst, 1e-6))
    worst = 0.0
    for a in [(0, 0), (1, 1), (2, 1), (3, 2)]:
        rep = dirichlet_simplex_identity(a, 2, 10**6, int(rng.integers(2**31)))
        worst = max(worst, abs(rep["lhs"] - rep["rhs"]) / max(3 * rep["stderr"], 1e-300) if rep["stderr"] else abs(rep["lhs"] - rep["rhs"]))
    out.append(_check("Dirichlet simplex identity (error / 3 stderr)", worst, 1.0))
    z = _random_disc(rng, 200, 1, 5.0)
    ok = np.all(weight_eval(GS(1, 1, -1.0), z) <= weight_eval(GS(1, 1, 0.5), z))
    out.append(_flag("gs weights monotone in r", bool(ok)))
    return out


def suite_norms(rng):
    out = []
    worst = 0.0
    for h in (0.5, 1.0, 2.0):
        for _ in range(3):
            e = random_expansion(rng, cutoff=int(rng.integers(1, 9)))
            s = a2_weighted_norm_series(e, SequenceWeight.exponential(h, 1))
            q = a2_weighted_norm_quadrature(series_function(e), exponential(h))
            f = fock_norm_fepexp(e, h)
            worst = max(worst, abs(s - q) / s, abs(f - q) / q)
    out.append(_check("series vs quadrature weighted norm", worst, 1e-6))
    xa = np.linspace(-3, 3, 31)
    vals = rng.normal(size=(31, 31)) + 1j * rng.normal(size=(31, 31))
    lam = complex(rng.normal(), rng.normal())
    worst = 0.0
    for p, q in [(2, 2), (1, 3), (0.5, np.inf), (np.inf, 0.7)]:
        a = mixed_norm(PlaneGrid((xa,), (xa,), lam * vals), p, q)
        b = abs(lam) * mixed_norm(PlaneGrid((xa,), (xa,), vals), p, q)
        worst = max(worst, abs(a - b) / b)
    out.append(_check("mixed norm homogeneity", worst, 1e-14))
    e = random_expansion(rng, cutoff=4)
    grid = GridSpec((-6, 6, 61), (-6, 6, 61))
    norms = [modulation_norm(e, GS(0.5, 0.5, r), 2, 2, grid) for r in (-0.4, -0.3, -0.2)]
    out.append(_flag("modulation norm non-decreasing in r", bool(np.all(np.diff(norms) >= 0))))
    return out


def equiv_corpus(rng, n=50):
    cases = []
    for i in range(n):
        d = 1 + (i % 2)
        cutoff = int(rng.integers(4, 13)) if d == 1 else int(rng.integers(3, 9))
        e = random_expansion(rng, d, cutoff, decay=float(rng.uniform(0.3, 1.5)))
        s = (0.5, 1.0)[i % 2]
        h = (0.5, 1.0, 2.0)[i % 3]
        cases.append((e, h, s))
    return cases


def suite_equiv_lemma(rng):
    fwd_viol, worst_slack, back_max, unbounded = 0, np.inf, 0, 0
    for e, h, s in equiv_corpus(rng):
        f = equiv_forward_check(e, h, s)
        fwd_viol += f["violations"]
        worst_slack = min(worst_slack, f["worst_slack"])
        b = equiv_backward_check(e, h, s)
        back_max = max(back_max, b["maximizer"])
        unbounded += not b["bounded"]
    return [
        _check("forward bound violations", fwd_viol, 0),
        _check("backward ratio maximizer N", back_max, 20),
        _check("backward ratio unbounded cases", unbounded, 0),
    ]


def suite_fracft(rng):
    out = []
    quarter = (1, -1j, -1, 1j)
    ok = all(
        fractional_ft(HermiteExpansion.basis((k,)), r).coeffs == {(k,): quarter[(r * k) % 4]}
        for k in range(9)
        for r in (0, 1, 2, 3, 5)
    )
    out.append(_flag("eigenrelation (integer orders, exact)", ok))
    worst = 0.0
    for k in range(9):
        for r in (0.5, 1.7, 0.3):
            c = fractional_ft(HermiteExpansion.basis((k,)), r).coeffs[(k,)]
            worst = max(worst, abs(c - np.exp(-0.5j * np.pi * r * k)))
    out.append(_check("eigenrelation (fractional orders)", worst, 1e-14))
    e = random_expansion(rng, cutoff=8)
    ok = all(
        fractional_ft(fractional_ft(e, r1), r2).coeffs == fractional_ft(e, r1 + r2).coeffs
        for r1, r2 in [(1, 2), (3, 3), (2, -1), (4, 1)]
    )
    out.append(_flag("group law (integer orders, exact)", ok))
    out.append(_flag("period four (exact)", fractional_ft(e, 4).coeffs == e.coeffs))
    out.append(_flag("commutes with H (integer order, exact)", verify_commutes_with_H(e, 1, 3)["exact"]))
    rep = verify_commutes_with_H(e, 0.3, 3)
    out.append(_check("commutes with H (order 0.3, relative)", rep["max_abs_diff"] / rep["scale"], 1e-15))
    worst = 0.0
    for w in (Quadratic(0.6), Quadratic(0.5)):
        worst = max(worst, verify_isometry(random_expansion(rng, cutoff=6), float(rng.uniform(0, 4)), w)["deviation"])
    out.append(_check("isometry for radial weights", worst, 1e-4))
    xi = rng.uniform(-3, 3, 5)
    a = fourier_direct(e, xi)
    b = synthesize(fractional_ft(e, 1), xi)
    out.append(_check("order one equals Fourier transform", np.max(np.abs(a - b)), 1e-6))
    return out


def suite_classify(rng):
    out = []
    fin = classify(HermiteCombo((((0,), 1.0), ((3,), 2.0))).to_expansion(40))
    out.append(_flag("finite combination in S0", fin.verdicts["S0"] == MEMBER))
    ex = classify(CoefficientRule("stretched_exp", {"r": 1.0, "s": 0.5}).to_expansion(40))
    out.append(_flag("exp(-|alpha|) in S_1/2, not in H_flat", ex.verdicts["S_0.5"] == MEMBER and ex.verdicts["H_flat"] != MEMBER))
    fa = classify(CoefficientRule("factorial", {"R": 1.5}).to_expansion(40))
    out.append(_flag("R^|alpha|/sqrt(alpha!) in H_flat", fa.verdicts["H_flat"] == MEMBER))
    disagree = 0
    for A in [np.eye(1), 2 * np.eye(1), np.diag([1.0, 3.0])]:
        g = Gaussian(A)
        rep = classify(analyze(g, cutoff=40), gaussian=g)
        disagree += rep.gaussian_criterion["agreement"] is False
    out.append(_check("Gaussian criterion disagreements", disagree, 0))
    bad, changed = 0, 0
    for _ in range(20):
        e = random_expansion(rng, cutoff=40, decay=float(rng.uniform(0.2, 1.5)))
        r1, r2 = classify(e), classify(fractional_ft(e, float(rng.uniform(0, 4))))
        bad += not r1.is_monotone()
        changed += r1.verdicts != r2.verdicts
    out.append(_check("non-monotone reports", bad, 0))
    out.append(_check("verdict changes under fractional FT", changed, 0))
    return out


SUITES = {
    "bridge": suite_bridge,
    "reproducing": suite_reproducing,
    "weights": suite_weights,
    "norms": suite_norms,
    "equiv-lemma": suite_equiv_lemma,
    "fracft": suite_fracft,
    "classify": suite_classify,
}


def run_suite(name, seed=0):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    rng = np.random.default_rng(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", bg.TruncationWarning)
        checks = SUITES[name](rng)
    return {"suite": name, "seed": seed, "checks": checks, "passed": all(c["status"] == "pass" for c in checks)}
