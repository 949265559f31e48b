import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from hermfock.weights import (
    GS,
    FlatExp,
    Poly,
    Profile,
    Quadratic,
    Radial,
    SequenceWeight,
    check_gauss_sandwich,
    check_moderate,
    dirichlet_simplex_identity,
    exponential,
    linear_exponential,
    theta_closed_exponential,
    theta_closed_linear_exponential,
    theta_from_radial,
    theta_from_separable,
    weight_eval,
)


class ProductProfile:
    """prod_j exp(-h_j r_j) on arrays of shape (..., d)."""

    def __init__(self, hs):
        self.hs = np.asarray(hs, float)

    def log(self, r):
        return -np.sum(self.hs * r, axis=-1)


def test_weight_eval_examples():
    assert weight_eval(Quadratic(0.5), 3 - 2j) == 1.0
    assert weight_eval(GS(0.5, 0.5, -1.0), 1 + 0j) == pytest.approx(math.exp(-0.5), rel=1e-15)
    assert weight_eval(FlatExp(1.0), 1 + 1j) == pytest.approx(math.exp(0.5 - 2), rel=1e-15)
    assert weight_eval(Poly(2.0), 3.0) == pytest.approx(10.0)


def test_weight_eval_vectorized_2d():
    z = np.array([[1.0, 1j], [0.0, 0.0]])
    assert weight_eval(Poly(2.0), z).tolist() == pytest.approx([3.0, 1.0])


def test_theta_examples():
    assert theta_from_radial(exponential(1.0), (3,), 1) == pytest.approx(0.25, rel=1e-10)
    assert theta_from_radial(exponential(0.5), (0,), 1) == pytest.approx(1.0, rel=1e-10)
    assert theta_from_radial(linear_exponential(0.5), (0,), 1) ** 2 == pytest.approx(2.0, rel=1e-10)
    assert theta_closed_exponential(0.5, (7, 2)) == 1.0
    assert theta_closed_exponential(1.0, (3,), 1) == pytest.approx(0.25)
    assert theta_closed_linear_exponential(0.5, (0,), 1) == pytest.approx(math.sqrt(2))
    assert theta_closed_linear_exponential(0.5, (1,), 1) == pytest.approx(math.sqrt(12))


def test_theta_separable_examples():
    assert theta_from_separable(ProductProfile([1.0, 1.0]), (1, 1)) ** 2 == pytest.approx(1 / 16, rel=1e-9)
    assert theta_from_separable(ProductProfile([0.5, 0.5]), (0, 0)) == pytest.approx(1.0, rel=1e-9)


def test_theta_separable_reduces_to_radial_in_1d():
    rng = np.random.default_rng(12)
    for _ in range(10):
        h = float(rng.uniform(0.3, 3))
        k = float(rng.uniform(0, 3))
        n = int(rng.integers(0, 12))
        prof = Profile("power_exponential", {"h": h, "k": k})

        class Sep:
            def log(self, r, prof=prof):
                return prof.log(r[..., 0])

        assert theta_from_separable(Sep(), (n,)) == pytest.approx(theta_from_radial(prof, (n,), 1), rel=1e-8)


def test_theta_against_scipy_quad():
    prof = Profile("power_exponential", {"h": 0.7, "k": 1.5})
    n = 4
    val = quad(lambda r: prof(r) ** 2 * r**n, 0, np.inf)[0] / math.factorial(n)
    assert theta_from_radial(prof, (n,), 1) == pytest.approx(math.sqrt(val), rel=1e-9)


def test_theta_divergent_tail_rejected():
    grow = Profile("power_exponential", {"h": -0.1, "k": 0.0})
    with pytest.raises(ValueError, match="probe"):
        theta_from_radial(grow, (0,), 1)


def test_closed_forms_reject_bad_parameters():
    with pytest.raises(ValueError):
        theta_closed_exponential(0.0, (1,))
    with pytest.raises(ValueError):
        theta_closed_linear_exponential(-1.0, (1,))


def test_sequence_weight_from_radial_matches_closed():
    sw = SequenceWeight.from_radial(exponential(0.8), 2)
    closed = SequenceWeight.exponential(0.8, 2)
    for a in [(0, 0), (3, 1), (2, 5)]:
        assert sw(a) == pytest.approx(closed(a), rel=1e-9)


def test_lower_bound_check_flat_weight():
    rep = SequenceWeight.linear_exponential(0.5, 1).lower_bound_check(1, 40)
    assert all(v["tail_non_increasing"] for v in rep.values())


def test_sequence_weight_must_be_positive():
    with pytest.raises(ValueError):
        SequenceWeight(lambda a: 0.0, "zero")((1,))


def test_check_moderate_examples():
    peetre = check_moderate(Poly(2.0), Poly(2.0), box=10)
    assert peetre["holds"] and peetre["C"] <= 4.0
    gauss = check_moderate(Quadratic(0.0), Poly(4.0), box=10)
    assert not gauss["holds"]
    assert gauss["witness"]["x"]


def test_check_moderate_gs_weights():
    # the subexponential factor alone is submultiplicative for t, s >= 1
    w = GS(1, 1, 1, quadratic=False)
    assert check_moderate(w, w, box=10)["holds"]
    # with the Gaussian factor the weight is not moderate
    wq = GS(1, 1, 1)
    assert not check_moderate(wq, wq, box=10)["holds"]


def test_check_gauss_sandwich_examples():
    assert check_gauss_sandwich(Poly(3.0), 0.125)["holds"]
    q = Quadratic(0.25)
    assert not check_gauss_sandwich(q, 0.125)["holds"]
    assert check_gauss_sandwich(q, 0.5)["holds"]
    rep = check_gauss_sandwich(FlatExp(1.0), 0.25)
    assert rep["holds"] and rep["C"] >= 1.0
    # equality of exponents already saturates
    assert check_gauss_sandwich(q, 0.125)["min_c"] == 0.25


def test_dirichlet_examples():
    rep = dirichlet_simplex_identity((1, 1), 2, 10**5, seed=1)
    assert rep["rhs"] == pytest.approx(1 / 6)
    assert quad(lambda t: t * (1 - t), 0, 1)[0] == pytest.approx(rep["rhs"])
    assert dirichlet_simplex_identity((0, 0), 2, 1000)["lhs"] == 1.0
    assert dirichlet_simplex_identity((2, 1), 2, 1000)["rhs"] == pytest.approx(1 / 12)


def test_dirichlet_three_dimensions():
    rep = dirichlet_simplex_identity((1, 0, 2), 3, 4 * 10**5, seed=3)
    assert rep["rhs"] == pytest.approx(2 / math.factorial(5))
    assert rep["within_3se"]


def test_radial_weight_from_profile():
    w = Radial(exponential(2.0))
    assert weight_eval(w, 3j) == pytest.approx(math.exp(-6.0))


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.25, 2),
    st.floats(0.25, 2),
    st.floats(-2, 2),
    st.floats(-2, 2),
    st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False),
)
def test_gs_monotone_in_r(s, t, r1, r2, z):
    lo, hi = sorted((r1, r2))
    assert weight_eval(GS(s, t, lo), z) <= weight_eval(GS(s, t, hi), z) * (1 + 1e-15)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 3.0), st.integers(0, 25), st.integers(1, 2))
def test_theta_radial_matches_closed_property(h, n, d):
    a = (n,) + (0,) * (d - 1)
    assert theta_from_radial(exponential(h), a, d) == pytest.approx(theta_closed_exponential(h, a, d), rel=1e-8)
