import math

import numpy as np
import pytest

from hermfock.multiindex import check_alpha, log_factorial, multi_indices, order, shell
from hermfock.specs import CoefficientRule, Gaussian, HermiteCombo, Sampled, phi


def test_check_alpha():
    assert check_alpha([1, 2]) == (1, 2)
    with pytest.raises(ValueError):
        check_alpha((-1,))
    with pytest.raises(ValueError):
        check_alpha(())
    with pytest.raises(ValueError):
        check_alpha((1, 2), 3)


def test_order_and_factorial():
    assert order((2, 3)) == 5
    assert log_factorial((3, 4)) == pytest.approx(math.log(6 * 24))


def test_shell_sizes():
    for d in (1, 2, 3):
        for n in range(6):
            assert len(shell(n, d)) == math.comb(n + d - 1, d - 1)
    assert len(multi_indices(3, 5)) == math.comb(8, 3)


def test_gaussian_evaluate():
    g = Gaussian([[2.0]], [1j], 3.0)
    assert g.evaluate(0.5) == pytest.approx(3 * np.exp(-0.25 + 0.5j))
    assert phi(2).evaluate(np.zeros(2)) == pytest.approx(1 / math.sqrt(math.pi))


def test_gaussian_must_be_symmetric():
    with pytest.raises(ValueError):
        Gaussian([[1.0, 0.5], [0.0, 1.0]])


def test_hermite_combo_merges_repeats():
    e = HermiteCombo((((1,), 1.0), ((1,), 2.0))).to_expansion()
    assert e.coeffs == {(1,): 3.0} and e.cutoff == 1


@pytest.mark.parametrize(
    "name,params,n,value",
    [
        ("stretched_exp", {"r": 2.0, "s": 1.0}, 9, math.exp(-6.0)),
        ("factorial", {"R": 2.0}, 3, 8 / math.sqrt(6)),
        ("dual_factorial", {"R": 0.5}, 4, math.sqrt(24) / 16),
        ("power", {"k": 2.0, "C": 3.0}, 4, 3 / 25),
        ("exp_growth", {"r": 1.0, "s": 0.5}, 2, math.exp(2.0)),
    ],
)
def test_coefficient_rules(name, params, n, value):
    e = CoefficientRule(name, params).to_expansion(n)
    assert e.coeffs[(n,)] == pytest.approx(value, rel=1e-14)


def test_coefficient_rule_2d_uses_multi_factorial():
    e = CoefficientRule("factorial", {"R": 1.0}, 2).to_expansion(3)
    assert e.coeffs[(1, 2)] == pytest.approx(1 / math.sqrt(2))


def test_coefficient_rule_errors():
    with pytest.raises(ValueError, match="unknown"):
        CoefficientRule("bogus")
    with pytest.raises(ValueError, match="overflows"):
        CoefficientRule("exp_growth", {"r": 30.0, "s": 0.5}).to_expansion(40)


def test_sampled_validation_and_interpolation():
    x = np.linspace(0, 2, 5)
    s = Sampled((x,), x**2)
    assert s.evaluate(1.0) == pytest.approx(1.0)
    assert s.evaluate(5.0) == 0
    with pytest.raises(ValueError):
        Sampled((x,), np.ones(4))
    with pytest.raises(ValueError):
        Sampled((x[::-1],), x)
