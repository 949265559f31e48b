import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermfock.fracft import (
    fourier_direct,
    fractional_ft,
    phase,
    verify_commutes_with_H,
    verify_isometry,
)
from hermfock.hermite import HermiteExpansion, analyze, synthesize
from hermfock.norms import GridSpec
from hermfock.specs import phi
from hermfock.weights import GS, Poly, Quadratic


def random_e(rng, d=1, cutoff=8, terms=None):
    from hermfock.multiindex import multi_indices

    idx = list(multi_indices(d, cutoff))
    if terms:
        idx = [idx[i] for i in sorted(rng.choice(len(idx), terms, replace=False))]
    return HermiteExpansion(d, cutoff, {a: complex(*rng.normal(size=2)) for a in idx})


def test_phase_quarter_turns_are_exact():
    assert phase(1, (1,)) == -1j
    assert phase(2, (3,)) == -1
    assert phase(0.5, (2,)) == -1j
    assert phase((1, 0.5), (1, 2)) == -1
    assert phase(-1, (1,)) == 1j


def test_phase_reduces_large_orders():
    assert phase(1e6 + 0.5, (1,)) == pytest.approx(np.exp(-0.25j * np.pi), abs=1e-15)


def test_fractional_ft_examples():
    out = fractional_ft(HermiteExpansion.basis((3,)), 2)
    assert out.coeffs == {(3,): -1}
    for r in (0.3, 1.7, -2.2):
        assert fractional_ft(HermiteExpansion.basis((0,)), r).coeffs == {(0,): 1}
    e = analyze(phi(1), cutoff=20)
    assert fractional_ft(e, 1).coeffs == e.coeffs


def test_fourier_of_window_by_quadrature():
    e = analyze(phi(1), cutoff=20)
    xi = np.linspace(-3, 3, 7)
    assert np.abs(fourier_direct(e, xi) - np.pi**-0.25 * np.exp(-(xi**2) / 2)).max() < 1e-10


def test_partial_transform_in_2d():
    e = HermiteExpansion(2, 4, {(1, 2): 1.0})
    assert fractional_ft(e, (1, 0)).coeffs == {(1, 2): -1j}
    assert fractional_ft(e, (0, 1)).coeffs == {(1, 2): -1}
    with pytest.raises(ValueError):
        fractional_ft(e, (1, 0, 0))


def test_commutes_with_H_examples():
    rng = np.random.default_rng(0)
    e = random_e(rng)
    for r in (0, 1, -3):
        assert verify_commutes_with_H(e, r, 1)["exact"]
    for r in (2.5, -0.7):
        rep = verify_commutes_with_H(e, r, 1)
        assert rep["max_abs_diff"] <= 4 * np.finfo(float).eps * rep["scale"]
    rep = verify_commutes_with_H(e, 0.3, 3)
    # fractional phases are rounded once on each route
    assert rep["max_abs_diff"] <= 4 * np.finfo(float).eps * rep["scale"]
    assert verify_commutes_with_H(HermiteExpansion.basis((5,)), 1.7, 2)["exact"]


def test_commutes_with_H_integer_orders_exact():
    rng = np.random.default_rng(1)
    e = random_e(rng, 2, 6)
    for r in range(-3, 5):
        for N in (1, 2, 3):
            assert verify_commutes_with_H(e, r, N)["exact"]


def test_isometry_examples():
    grid = GridSpec((-10, 10, 201), (-10, 10, 201))
    rep = verify_isometry(HermiteExpansion.basis((2,)), 1, Poly(0.0), 2, grid)
    assert rep["deviation"] < 1e-6
    assert verify_isometry(HermiteExpansion(1, 3), 0.4, Poly(0.0))["deviation"] == 0
    rng = np.random.default_rng(2)
    rep = verify_isometry(random_e(rng, 1, 10, terms=6), 0.5, Quadratic(0.6))
    assert rep["deviation"] < 1e-4


def test_isometry_rejects_non_radial_weight():
    with pytest.raises(ValueError, match="radial"):
        verify_isometry(HermiteExpansion.basis((1,)), 1, GS(1, 1, 0.1))


def test_fourier_direct_is_one_dimensional():
    with pytest.raises(ValueError):
        fourier_direct(HermiteExpansion.basis((0, 0)), [0.0])


@settings(max_examples=50, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(0, 2**32 - 1))
def test_group_law_integer_orders(r1, r2, seed):
    e = random_e(np.random.default_rng(seed), 1, 8)
    assert fractional_ft(fractional_ft(e, r1), r2).coeffs == fractional_ft(e, r1 + r2).coeffs


@settings(max_examples=50, deadline=None)
@given(st.floats(-4, 4), st.floats(-4, 4), st.integers(0, 2**32 - 1))
def test_group_law_fractional_orders(r1, r2, seed):
    e = random_e(np.random.default_rng(seed), 1, 8)
    a = fractional_ft(fractional_ft(e, r1), r2).coeffs
    b = fractional_ft(e, r1 + r2).coeffs
    assert max(abs(a[k] - b[k]) for k in b) <= 1e-13 * max(abs(v) for v in b.values())


@settings(max_examples=50, deadline=None)
@given(st.floats(-4, 4), st.integers(0, 2**32 - 1))
def test_unitary_on_coefficients(r, seed):
    e = random_e(np.random.default_rng(seed), 1, 8)
    out = fractional_ft(e, r)
    for k, c in e.coeffs.items():
        assert abs(out.coeffs[k]) == pytest.approx(abs(c), rel=1e-15)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_order_one_is_fourier_transform(seed):
    e = random_e(np.random.default_rng(seed), 1, 8, terms=4)
    xi = np.linspace(-3, 3, 5)
    assert np.abs(fourier_direct(e, xi) - synthesize(fractional_ft(e, 1), xi)).max() < 1e-6
