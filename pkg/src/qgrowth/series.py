"""Exact polynomial, rational-function and truncated power-series arithmetic.

Everything here works over :class:`fractions.Fraction`; no floats enter the
series algebra.  The generating series of sphere volumes ``S``, its running
sum ``B``, and the invariants ``P = 1 - 1/S`` and ``Q = (1 + 1/z) P`` are all
:class:`RationalFunction` values, normalized so that equal functions compare
equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PowerSeries",
    "NotExpandableError",
    "DegenerateSeriesError",
    "SubexponentialGrowth",
    "expand",
    "b_from_s",
    "p_invariant",
    "s_from_p",
    "q_invariant",
    "tensor_series",
    "free_series",
    "free_components",
    "free_version_series",
    "closed_form",
    "growth_ratio",
    "smallest_positive_root",
]


class NotExpandableError(ValueError):
    """The denominator vanishes at the origin."""


class DegenerateSeriesError(ValueError):
    """A series combination hit an identically zero denominator."""


class SubexponentialGrowth(ValueError):
    """No pole of ``S`` lies strictly inside the unit disc."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Polynomial:
    """Univariate polynomial with rational coefficients, ``coeffs[i]`` of degree ``i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def z(cls) -> Polynomial:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree ``-1``."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = _as_poly(other)
            if other is None:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        out = Polynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        dg = other.degree
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i] / lead
            if c:
                q[i - dg] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dg + j] -= c * b
        return Polynomial(q), Polynomial(rem[:dg] if dg > 0 else [])

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> Polynomial:
        return Polynomial(c / self.leading for c in self.coeffs) if self.coeffs else self

    def reversed(self, degree: int | None = None) -> Polynomial:
        """Reciprocal polynomial ``z^degree p(1/z)``."""
        d = self.degree if degree is None else degree
        return Polynomial(self[d - i] for i in range(d + 1))


def _as_poly(x) -> Polynomial | None:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial([x])
    if isinstance(x, (list, tuple)):
        return Polynomial(x)
    return None


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RationalFunction:
    """A reduced quotient of polynomials.

    On construction the numerator and denominator are divided by their gcd and
    scaled so the denominator has constant term 1 (or, when it vanishes at 0,
    leading coefficient 1).  Two equal functions therefore have identical
    coefficient tuples.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if num is None or den is None:
            raise TypeError("numerator and denominator must be polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Polynomial(), Polynomial([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        scale = den[0] if den[0] != 0 else den.leading
        self.num = Polynomial(c / scale for c in num.coeffs)
        self.den = Polynomial(c / scale for c in den.coeffs)

    @classmethod
    def from_coefficients(cls, num: Sequence, den: Sequence = (1,)) -> RationalFunction:
        return cls(Polynomial(num), Polynomial(den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            p = _as_poly(other)
            if p is None:
                return NotImplemented
            other = RationalFunction(p)
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({[str(c) for c in self.num.coeffs]}, {[str(c) for c in self.den.coeffs]})"

    def _coerce(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        p = _as_poly(other)
        return None if p is None else RationalFunction(p)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __call__(self, x):
        return self.num(x) / self.den(x)


class PowerSeries:
    """Truncated power series ``c_0 + c_1 z + ... + c_K z^K`` (``order == K``)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs: tuple[Fraction, ...] = tuple(_frac(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a power series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == tuple(_frac(c) for c in other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PowerSeries({[str(c) for c in self.coeffs]})"

    def truncate(self, K: int) -> PowerSeries:
        if K > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {K}")
        return PowerSeries(self.coeffs[: K + 1])

    def __add__(self, other: PowerSeries) -> PowerSeries:
        K = min(self.order, other.order)
        return PowerSeries(self.coeffs[i] + other.coeffs[i] for i in range(K + 1))

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        K = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return PowerSeries(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(K + 1))

    def as_ints(self) -> list[int]:
        """Coefficients as Python ints; raises if any is not integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(c.numerator)
        return out


def expand(rf: RationalFunction, K: int) -> PowerSeries:
    """Taylor coefficients ``c_0 .. c_K`` of ``rf`` at the origin."""
    if K < 0:
        raise ValueError("truncation order must be nonnegative")
    den = rf.den
    d0 = den[0]
    if d0 == 0:
        raise NotExpandableError("not expandable at origin: denominator vanishes at 0")
    out: list[Fraction] = []
    for k in range(K + 1):
        acc = rf.num[k]
        for j in range(1, min(k, den.degree) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return PowerSeries(out)


def b_from_s(S: PowerSeries) -> PowerSeries:
    """Ball volumes from sphere volumes (running sums; ``B = S / (1 - z)``)."""
    out, acc = [], Fraction(0)
    for c in S:
        acc += c
        out.append(acc)
    return PowerSeries(out)


def _check_nonzero(S: RationalFunction) -> None:
    if S.is_zero():
        raise DegenerateSeriesError("degenerate series: S is identically zero")


def p_invariant(S: RationalFunction) -> RationalFunction:
    """``P = 1 - 1/S``; additive under free products."""
    _check_nonzero(S)
    return 1 - 1 / S


def s_from_p(P: RationalFunction) -> RationalFunction:
    """Inverse of :func:`p_invariant`: ``S = 1 / (1 - P)``."""
    one_minus = 1 - P
    if one_minus.is_zero():
        raise DegenerateSeriesError("degenerate series: P is identically 1")
    return 1 / one_minus


def q_invariant(S: RationalFunction) -> RationalFunction:
    """``Q = (1 + 1/z)(1 - 1/S)``; constant ``2n`` for the free group on n generators."""
    z = RationalFunction(Polynomial.z())
    return (1 + 1 / z) * p_invariant(S)


def tensor_series(S1: RationalFunction, S2: RationalFunction) -> RationalFunction:
    """S series of a direct (tensor) product: the product of the factors' series."""
    return S1 * S2


def free_components(S1: RationalFunction, S2: RationalFunction) -> tuple[RationalFunction, RationalFunction]:
    """The parts ``C1, C2`` of the free-product series starting with a letter of factor 1, resp. 2.

    They solve ``C1 = (S1 - 1)(C2 + 1)``, ``C2 = (S2 - 1)(C1 + 1)``.
    """
    den = S1 + S2 - S1 * S2
    if den.is_zero():
        raise DegenerateSeriesError("degenerate free product: S1 + S2 - S1 S2 vanishes")
    return (S1 * S2 - S2) / den, (S1 * S2 - S1) / den


def free_series(S1: RationalFunction, S2: RationalFunction) -> RationalFunction:
    """S series of a free product, ``S1 S2 / (S1 + S2 - S1 S2)``."""
    c1, c2 = free_components(S1, S2)
    return 1 + c1 + c2


def free_version_series(S: RationalFunction) -> RationalFunction:
    """S series of the (non-degenerate) free version: ``S / (2 - S)``, i.e. ``P+ = 2P``."""
    den = 2 - S
    if den.is_zero():
        raise DegenerateSeriesError("degenerate free version: 2 - S vanishes")
    return S / den


_FAMILY_MIN_N = {"ao": 3, "au": 2, "as": 5}


def closed_form(family: str, n: int) -> RationalFunction:
    """Closed-form sphere series of the free orthogonal, unitary or symmetric quantum group.

    ``family`` is one of ``"ao"``, ``"au"``, ``"as"`` (case-insensitive).  The
    formulas are asserted only for ``n >= 3``, ``n >= 2`` and ``n >= 5``
    respectively; smaller ``n`` is rejected.
    """
    fam = family.lower()
    if fam not in _FAMILY_MIN_N:
        raise ValueError(f"unknown family {family!r}; expected one of ao, au, as")
    if n < _FAMILY_MIN_N[fam]:
        raise ValueError(f"closed form for {fam} requires n >= {_FAMILY_MIN_N[fam]}, got n={n}")
    P = Polynomial
    one_plus_z = P([1, 1])
    if fam == "ao":
        return RationalFunction(one_plus_z, P([1, -(n * n - 2), 1]) * P([1, -1]))
    if fam == "au":
        return RationalFunction(one_plus_z, P([1, -(2 * n * n - 1), 2 * (n * n - 1), -2]))
    sq = one_plus_z * one_plus_z
    num = sq + P([0, 2 * (n - 2)])
    den = P([1, -1]) * (sq - P([0, (n - 2) ** 2]))
    return RationalFunction(num, den)


def _sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = chain[-2].divmod(chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    return [q for q in chain if not q.is_zero()]


def _sign_changes(chain: list[Polynomial], x: Fraction) -> int:
    signs = [s for s in ((q(x) > 0) - (q(x) < 0) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def smallest_positive_root(p: Polynomial, upper, tol, relative: bool = False) -> tuple[Fraction, Fraction] | None:
    """Bracket ``(lo, hi]`` of width < ``tol`` around the smallest root of ``p`` in ``(0, upper)``.

    With ``relative=True`` the width is below ``tol * hi`` instead.

    Root counting uses a Sturm chain of the square-free part, so even-order
    roots (no sign change) are found too.  Returns ``None`` when there is no
    root in the open interval.
    """
    if p[0] == 0:
        raise NotExpandableError("not expandable at origin: denominator vanishes at 0")
    sqfree = p.divmod(poly_gcd(p, p.derivative()))[0]
    chain = _sturm_chain(sqfree)
    lo, hi = Fraction(0), _frac(upper)
    v_lo = _sign_changes(chain, lo)
    count = v_lo - _sign_changes(chain, hi)
    if sqfree(hi) == 0:
        count -= 1
    if count <= 0:
        return None
    tol = _frac(tol)
    while hi - lo >= (tol * hi if relative else tol):
        mid = (lo + hi) / 2
        if v_lo - _sign_changes(chain, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def growth_ratio(rf: RationalFunction, tol: float = 1e-13) -> float:
    """Exponential growth ratio of the coefficients of ``rf``: the reciprocal of its smallest pole.

    ``tol`` is relative.  Assumes nonnegative Taylor coefficients, so the radius of convergence is a
    positive real pole and complex poles can be ignored.  Raises
    :class:`SubexponentialGrowth` when the denominator has no root in ``(0, 1)``.
    """
    bracket = smallest_positive_root(rf.den, 1, tol, relative=True)
    if bracket is None:
        raise SubexponentialGrowth("subexponential growth: no pole of S inside the unit disc")
    lo, hi = bracket
    return float(2 / (lo + hi))
