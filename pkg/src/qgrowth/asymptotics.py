"""Fitting growth exponents and ratios, and the root solvers for the closed-form ratios.

Inputs may be huge exact integers or fractions; logarithms are taken
exactly-then-rounded so ``k ~ 10^4`` terms never overflow a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .series import Polynomial

__all__ = [
    "FitResult",
    "AlgebraicRoot",
    "ConjectureVerdict",
    "fit_polynomial_exponent",
    "fit_exponential_ratio",
    "classify_growth",
    "default_window",
    "root_qn",
    "root_rn",
    "conjecture_report",
]


@dataclass(frozen=True)
class FitResult:
    estimate: float
    window: tuple[int, int]
    residual: float
    method: str

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "window": list(self.window), "residual": self.residual, "method": self.method}


def _log(x) -> float:
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError(f"nonpositive entry {x}")
        return math.log(x.numerator) - math.log(x.denominator)
    if x <= 0:
        raise ValueError(f"nonpositive entry {x}")
    return math.log(x)


def _points(seq, window, logs=False) -> tuple[np.ndarray, np.ndarray, tuple[int, int]]:
    if isinstance(seq, Mapping):
        keys = sorted(seq)
        get = seq.__getitem__
    else:
        keys = list(range(len(seq)))
        get = seq.__getitem__
    if window is None:
        window = default_window(keys[-1], keys[0])
    lo, hi = window
    ks = [k for k in keys if lo <= k <= hi]
    if len(ks) < 2:
        raise ValueError(f"window {window} holds fewer than two terms")
    ys = [float(get(k)) for k in ks] if logs else [_log(get(k)) for k in ks]
    return np.array(ks, dtype=float), np.array(ys), (ks[0], ks[-1])


def default_window(k_max: int, k_min: int = 0) -> tuple[int, int]:
    """Drop the first 20% of the index range (and ``k = 0``)."""
    return max(1, k_min, math.ceil(0.2 * k_max)), k_max


def fit_polynomial_exponent(
    seq: Sequence | Mapping, window: tuple[int, int] | None = None, logs: bool = False
) -> FitResult:
    """Least-squares slope of ``log seq_k`` against ``log k``.

    ``seq`` is indexed by ``k`` (a list with ``seq[k]`` or a mapping).  With
    ``logs=True`` the entries are already natural logarithms, which is how
    underflowing return probabilities are passed in.
    """
    ks, ys, win = _points(seq, window, logs)
    if ks[0] <= 0:
        raise ValueError("polynomial fits need k >= 1")
    xs = np.log(ks)
    slope, icpt = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((ys - (slope * xs + icpt)) ** 2)))
    return FitResult(float(slope), win, resid, "polynomial-loglog")


def fit_exponential_ratio(
    seq: Sequence | Mapping, window: tuple[int, int] | None = None, logs: bool = False
) -> FitResult:
    """Exponential growth ratio ``lim seq_{k+1} / seq_k``.

    Two estimators are computed: ``exp`` of the least-squares slope of
    ``log seq_k`` against ``k``, and Richardson extrapolation
    ``(k+1) rho_{k+1} - k rho_k`` of successive ratios ``rho_k``, which kills
    the ``1/k`` term coming from polynomial prefactors.  The Richardson value
    is reported when its last two estimates agree more closely than the last
    two raw ratios do.
    """
    ks, ys, win = _points(seq, window, logs)
    slope, icpt = np.polyfit(ks, ys, 1)
    loglin = FitResult(float(math.exp(slope)), win, float(np.sqrt(np.mean((ys - (slope * ks + icpt)) ** 2))), "exponential-loglinear")
    consecutive = np.diff(ks) == 1
    if len(ks) < 4 or not consecutive.all():
        return loglin
    rho = np.exp(np.diff(ys))
    kk = ks[:-1]
    # rho is indexed by its left end k, so this is (k+1) rho_{k+1} - k rho_k
    rich = kk[1:] * rho[1:] - kk[:-1] * rho[:-1]
    spread_rich = abs(rich[-1] - rich[-2])
    spread_raw = abs(rho[-1] - rho[-2])
    if spread_rich < spread_raw:
        return FitResult(float(rich[-1]), win, float(spread_rich), "exponential-richardson")
    return FitResult(float(rho[-1]), win, float(spread_raw), "exponential-ratio")


def classify_growth(seq: Sequence | Mapping, window: tuple[int, int] | None = None, logs: bool = False) -> FitResult:
    """Heuristic regime choice: whichever of the log-log or log-linear fits has smaller residual.

    Works for decaying sequences too (ratio below 1).
    """
    poly = fit_polynomial_exponent(seq, window, logs)
    ks, ys, _ = _points(seq, window, logs)
    slope, icpt = np.polyfit(ks, ys, 1)
    lin_resid = float(np.sqrt(np.mean((ys - (slope * ks + icpt)) ** 2)))
    if lin_resid < poly.residual and abs(slope) > 1e-3:
        return fit_exponential_ratio(seq, window, logs)
    return poly


@dataclass(frozen=True)
class AlgebraicRoot:
    """A real root of an integer polynomial with a float value and an exact rational bracket."""

    value: float
    poly: Polynomial
    bracket: tuple[Fraction, Fraction]

    def residual(self) -> float:
        return abs(float(self.poly(self.value)))


def _bisect(poly: Polynomial, lo: Fraction, hi: Fraction, tol: float) -> tuple[Fraction, Fraction]:
    slo = poly(lo) > 0
    if (poly(hi) > 0) == slo:
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (poly(mid) > 0) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def root_qn(n: int) -> AlgebraicRoot:
    """Largest root of ``q^2 - (n-2) q + 1``; real and > 1 for ``n >= 5``."""
    if n <= 4:
        raise ValueError(f"q_n needs n >= 5 (n = 4 gives the double root 1), got {n}")
    poly = Polynomial([1, -(n - 2), 1])
    m = n - 2
    value = (m + math.sqrt(m * m - 4)) / 2
    bracket = _bisect(poly, Fraction(m, 2), Fraction(m), 1e-15)
    return AlgebraicRoot(value, poly, bracket)


def root_rn(n: int, tol: float = 1e-12) -> float:
    """Largest real root of ``r^3 - (2n^2-1) r^2 + 2(n^2-1) r - 2`` by bisection on ``[1, 2n^2]``."""
    if n < 2:
        raise ValueError(f"r_n needs n >= 2, got {n}")
    f = lambda r: ((r - (2 * n * n - 1)) * r + 2 * (n * n - 1)) * r - 2  # noqa: E731
    lo, hi = 1.0, 2.0 * n * n
    assert f(lo) < 0 < f(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ConjectureVerdict:
    growth_exponent: float | None
    walk_exponent: float | None
    difference: float | None
    passed: bool | None
    verdict: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def conjecture_report(growth_fit: FitResult, walk_fit: FitResult, tol: float = 0.5) -> ConjectureVerdict:
    """Compare the growth exponent ``d`` of ``b_k`` with ``-2 x`` (slope ``x`` of ``log p_k`` vs ``log k``).

    Numerical evidence only.  If either fit is in the exponential regime the
    comparison is outside the scope of the statement and ``passed`` is None.
    """
    if not growth_fit.method.startswith("polynomial") or not walk_fit.method.startswith("polynomial"):
        return ConjectureVerdict(None, None, None, None, "outside polynomial regime")
    d_growth = growth_fit.estimate
    d_walk = -2.0 * walk_fit.estimate
    diff = d_growth - d_walk
    ok = abs(diff) < tol
    return ConjectureVerdict(d_growth, d_walk, diff, ok, "consistent" if ok else "inconsistent")
