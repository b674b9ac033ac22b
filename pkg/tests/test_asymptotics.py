import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgrowth.asymptotics import (
    FitResult,
    classify_growth,
    conjecture_report,
    default_window,
    fit_exponential_ratio,
    fit_polynomial_exponent,
    root_qn,
    root_rn,
)
from qgrowth.fusion import volumes
from qgrowth.qgroups import ao_ring
from qgrowth.series import closed_form, growth_ratio


@pytest.mark.parametrize("d", [1, 3, 8, 14])
def test_polynomial_exponent_recovered(d):
    seq = {k: k**d * (2.5 + 7.0 / k) for k in range(100, 1001)}
    fit = fit_polynomial_exponent(seq, (100, 1000))
    assert abs(fit.estimate - d) < 0.05
    assert fit.method == "polynomial-loglog"


@given(st.floats(0.5, 20), st.floats(0.1, 100))
@settings(max_examples=30, deadline=None)
def test_polynomial_exponent_exact_power(d, c):
    seq = [c * max(k, 1) ** d for k in range(200)]
    assert fit_polynomial_exponent(seq).estimate == pytest.approx(d, abs=1e-9)


@pytest.mark.parametrize("r", [2.0, 6.854])
@pytest.mark.parametrize("a", [-1.5, 0.0])
def test_exponential_ratio_recovered(r, a):
    logs = [k * math.log(r) + a * math.log(k + 1) for k in range(301)]
    fit = fit_exponential_ratio(logs, (100, 300), logs=True)
    assert fit.estimate == pytest.approx(r, rel=1e-3)


def test_ratio_of_huge_integers():
    b, _ = volumes(ao_ring(3), 400)
    assert b[-1] > 10**300
    fit = fit_exponential_ratio(b)
    assert fit.estimate == pytest.approx(root_qn(5).value ** 2, rel=1e-9)


def test_log_input():
    logs = {k: -1.5 * math.log(k) + 0.3 for k in range(10, 500)}
    assert fit_polynomial_exponent(logs, logs=True).estimate == pytest.approx(-1.5, abs=1e-9)


def test_default_window():
    assert default_window(1000) == (200, 1000)
    assert default_window(10) == (2, 10)
    assert default_window(3, 0) == (1, 3)


def test_window_too_small():
    with pytest.raises(ValueError, match="fewer than two"):
        fit_polynomial_exponent([1, 2, 3], (2, 2))


def test_nonpositive_entry():
    with pytest.raises(ValueError, match="nonpositive"):
        fit_polynomial_exponent([1, 0, 3, 4, 5], (1, 4))


def test_classify():
    poly = [max(k, 1) ** 3 for k in range(300)]
    expo = [3**k for k in range(300)]
    decay = [Fraction(1, 2**k) for k in range(300)]
    assert classify_growth(poly).method.startswith("polynomial")
    assert classify_growth(expo).method.startswith("exponential")
    assert classify_growth(decay).method.startswith("exponential")
    assert classify_growth(decay).estimate == pytest.approx(0.5, rel=1e-9)


class TestRoots:
    @pytest.mark.parametrize("n", range(5, 12))
    def test_qn(self, n):
        q = root_qn(n)
        assert q.residual() < 1e-9
        # the bracket is narrower than a few ulp, so compare with float slack
        eps = Fraction(1, 10**14)
        assert q.bracket[0] - eps <= Fraction(q.value) <= q.bracket[1] + eps
        assert q.value == pytest.approx(max(np.roots([1, -(n - 2), 1]).real), rel=1e-12)

    def test_qn_domain(self):
        with pytest.raises(ValueError):
            root_qn(4)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_rn(self, n):
        ref = max(np.roots([1, -(2 * n * n - 1), 2 * (n * n - 1), -2]).real)
        assert root_rn(n) == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("m", range(3, 9))
    def test_ao_ratio_is_q_squared(self, m):
        assert growth_ratio(closed_form("ao", m)) == pytest.approx(root_qn(m + 2).value ** 2, abs=1e-9)

    @pytest.mark.parametrize("m", range(5, 9))
    def test_as_ratio_is_q_squared(self, m):
        assert growth_ratio(closed_form("as", m)) == pytest.approx(root_qn(m).value ** 2, abs=1e-9)


class TestConjectureReport:
    def fit(self, x, method="polynomial-loglog"):
        return FitResult(x, (1, 10), 0.0, method)

    def test_consistent(self):
        v = conjecture_report(self.fit(3.0), self.fit(-1.5))
        assert v.passed is True and v.verdict == "consistent"
        assert v.difference == pytest.approx(0.0)

    def test_inconsistent(self):
        v = conjecture_report(self.fit(3.0), self.fit(-0.5))
        assert v.passed is False

    def test_outside(self):
        v = conjecture_report(self.fit(6.8, "exponential-ratio"), self.fit(-1.5))
        assert v.passed is None and v.verdict == "outside polynomial regime"
        assert v.to_dict()["growth_exponent"] is None
