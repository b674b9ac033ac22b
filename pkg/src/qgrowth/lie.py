"""Root systems, Weyl dimensions and lattice random walks for compact Lie groups.

Root systems of types A, B, C, D and G2 are realized with exact rational
coordinates (G2 inside the sum-zero plane of Q^3).  Weights are handled as
integer tuples of Dynkin labels, i.e. coordinates in the basis of
fundamental weights, which is a basis of the weight lattice X of the simply
connected group.

The discrete dual of G is generated by ``u`` = sum of the fundamental
representations.  Lengths are then l1-norms of Dynkin labels, and the return
probability of the walk on irreducibles is the expectation of the Fourier
coefficients of the Weyl density under the walk on X with steps the weights
of ``u``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np
from scipy import integrate

__all__ = [
    "RootSystem",
    "GridTooCoarse",
    "build_root_system",
    "weyl_dim",
    "sphere_weights",
    "lie_volumes",
    "weyl_orbit",
    "dominant_conjugate",
    "fundamental_weight_system",
    "generator_weights",
    "delta_hat",
    "lattice_walk",
    "lie_return_probability",
    "lie_return_probabilities",
    "lie_exact_return_probabilities",
    "covariance_form",
    "walk_lattice_index",
    "gaussian_limit_constant",
    "torus_quadrature_pk",
    "MAX_DELTA_ROOTS",
]

Vector = tuple  # tuple of Fractions (ambient) or ints (Dynkin labels)
MAX_DELTA_ROOTS = 16


class GridTooCoarse(ValueError):
    pass


def _dot(x, y):
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _e(i: int, n: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _simple_roots(kind: str, r: int) -> list[list[Fraction]]:
    if kind == "A":
        return [[a - b for a, b in zip(_e(i, r + 1), _e(i + 1, r + 1))] for i in range(r)]
    base = [[a - b for a, b in zip(_e(i, r), _e(i + 1, r))] for i in range(r - 1)]
    if kind == "B":
        return base + [_e(r - 1, r)]
    if kind == "C":
        return base + [_e(r - 1, r, 2)]
    if kind == "D":
        return base + [[a + b for a, b in zip(_e(r - 2, r), _e(r - 1, r))]]
    if kind == "G":
        return [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]]
    raise ValueError(f"unknown root system type {kind!r}")


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + _e(i, n) for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


_WEYL_ORDER = {
    "A": lambda r: math.factorial(r + 1),
    "B": lambda r: 2**r * math.factorial(r),
    "C": lambda r: 2**r * math.factorial(r),
    "D": lambda r: 2 ** (r - 1) * math.factorial(r),
    "G": lambda r: 12,
}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class RootSystem:
    """A reduced irreducible root system with its fundamental weights.

    ``cartan[i][j] = <alpha_i, alpha_j^vee>`` so that the Dynkin labels of the
    simple root ``alpha_i`` are the row ``cartan[i]``.  ``positive_roots``
    are stored as integer coefficient vectors in the simple-root basis.
    """

    kind: str
    rank: int
    simple_roots: tuple
    positive_roots: tuple
    fundamental_weights: tuple
    cartan: tuple
    weyl_order: int
    _gram: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def num_roots(self) -> int:
        return 2 * len(self.positive_roots)

    @property
    def dimension(self) -> int:
        """Real dimension of the compact group: rank plus number of roots."""
        return self.rank + self.num_roots

    @property
    def ambient_dim(self) -> int:
        return len(self.simple_roots[0])

    def inner(self, x, y) -> Fraction:
        return _dot(x, y)

    def to_ambient(self, coeffs, basis) -> tuple:
        n = self.ambient_dim
        return tuple(sum((c * b[j] for c, b in zip(coeffs, basis)), Fraction(0)) for j in range(n))

    @cached_property
    def rho(self) -> tuple:
        """Sum of the fundamental weights (equal to half the sum of positive roots)."""
        return self.to_ambient([1] * self.rank, self.fundamental_weights)

    @cached_property
    def positive_roots_ambient(self) -> tuple:
        return tuple(self.to_ambient(c, self.simple_roots) for c in self.positive_roots)

    @cached_property
    def positive_roots_weight_basis(self) -> tuple:
        """Positive roots as Dynkin-label vectors."""
        return tuple(
            tuple(sum(c * self.cartan[i][j] for i, c in enumerate(beta)) for j in range(self.rank))
            for beta in self.positive_roots
        )

    @cached_property
    def roots_weight_basis(self) -> tuple:
        pos = self.positive_roots_weight_basis
        return pos + tuple(tuple(-x for x in a) for a in pos)

    def weight_gram(self) -> tuple:
        """``(varpi_i | varpi_j)``."""
        return self._gram

    def weight_inner(self, x, y) -> Fraction:
        g = self._gram
        return sum((x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    @cached_property
    def _dim_tables(self):
        # integer-scaled (varpi_i | alpha) and (rho | alpha) per positive root
        vals = [[_dot(w, a) for w in self.fundamental_weights] for a in self.positive_roots_ambient]
        den = reduce(math.lcm, (v.denominator for row in vals for v in row), 1)
        M = [[int(v * den) for v in row] for row in vals]
        R = [sum(row) for row in M]
        return M, R, math.prod(R)


def _root_closure(cartan, r):
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                pairing = sum(beta[j] * cartan[j][i] for j in range(r))
                gamma = tuple(b - pairing * (j == i) for j, b in enumerate(beta))
                if gamma not in roots:
                    roots.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return roots


def _parse_name(name: str) -> tuple[str, int]:
    name = name.strip()
    if name.lower().startswith("lie:"):
        name = name[4:]
    if len(name) < 2 or not name[1:].isdigit():
        raise ValueError(f"bad root system name {name!r}; expected e.g. 'A2', 'G2'")
    return name[0].upper(), int(name[1:])


def build_root_system(kind: str, rank: int | None = None) -> RootSystem:
    """Root system of type ``kind`` and ``rank``; ``build_root_system("B2")`` also works."""
    if rank is None:
        kind, rank = _parse_name(kind)
    kind = kind.upper()
    if kind == "G":
        if rank != 2:
            raise ValueError("type G requires rank 2")
    elif kind not in _MIN_RANK:
        raise ValueError(f"unsupported root system type {kind!r}")
    elif rank < _MIN_RANK[kind]:
        raise ValueError(f"type {kind} requires rank >= {_MIN_RANK[kind]}, got {rank}")
    simple = _simple_roots(kind, rank)
    r = rank
    cartan = tuple(
        tuple(int(2 * _dot(simple[i], simple[j]) / _dot(simple[j], simple[j])) for j in range(r)) for i in range(r)
    )
    roots = _root_closure(cartan, r)
    positive = tuple(sorted((b for b in roots if all(x >= 0 for x in b)), key=lambda b: (sum(b), b)))
    inv = _invert([list(row) for row in cartan])
    # alpha = A varpi  =>  varpi = A^{-1} alpha
    fund = tuple(
        tuple(sum((inv[i][j] * simple[j][k] for j in range(r)), Fraction(0)) for k in range(len(simple[0])))
        for i in range(r)
    )
    gram = tuple(tuple(_dot(fund[i], fund[j]) for j in range(r)) for i in range(r))
    return RootSystem(
        kind=kind,
        rank=r,
        simple_roots=tuple(tuple(s) for s in simple),
        positive_roots=positive,
        fundamental_weights=fund,
        cartan=cartan,
        weyl_order=_WEYL_ORDER[kind](r),
        _gram=gram,
    )


def weyl_dim(rs: RootSystem, lam) -> int:
    """Dimension of the irreducible with highest weight ``lam`` (Dynkin labels)."""
    if len(lam) != rs.rank:
        raise ValueError(f"weight needs {rs.rank} Dynkin labels, got {len(lam)}")
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {tuple(lam)} is not dominant")
    M, R, den = rs._dim_tables
    num = 1
    for row, rho_a in zip(M, R):
        num *= rho_a + sum(l * m for l, m in zip(lam, row))
    q, rem = divmod(num, den)
    if rem or q <= 0:
        raise ArithmeticError(f"Weyl product for {tuple(lam)} is not a positive integer: {Fraction(num, den)}")
    return q


def sphere_weights(rs: RootSystem, k: int) -> list[tuple[int, ...]]:
    """Dominant weights of length ``k``: all compositions of ``k`` into ``rank`` parts."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    r = rs.rank
    out = []
    for bars in itertools.combinations(range(k + r - 1), r - 1):
        prev, parts = -1, []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(k + r - 2 - prev)
        out.append(tuple(parts))
    return out


def lie_volumes(rs: RootSystem, K: int) -> tuple[list[int], list[int]]:
    """Ball and sphere volumes ``(b, s)`` of the dual of the simply connected group."""
    s = [sum(weyl_dim(rs, lam) ** 2 for lam in sphere_weights(rs, k)) for k in range(K + 1)]
    return list(itertools.accumulate(s)), s


def _reflect(rs: RootSystem, mu, i):
    c = mu[i]
    row = rs.cartan[i]
    return tuple(m - c * a for m, a in zip(mu, row))


def weyl_orbit(rs: RootSystem, mu) -> set:
    """Weyl-group orbit of a weight given in Dynkin labels."""
    mu = tuple(mu)
    orbit = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(rs.rank):
                y = _reflect(rs, x, i)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return orbit


def dominant_conjugate(rs: RootSystem, mu) -> tuple:
    mu = tuple(mu)
    while True:
        i = next((j for j, x in enumerate(mu) if x < 0), None)
        if i is None:
            return mu
        mu = _reflect(rs, mu, i)


def _dominant_below(rs: RootSystem, lam) -> dict:
    """Dominant weights ``mu <= lam``, mapped to the height of ``lam - mu``."""
    pos = list(zip(rs.positive_roots_weight_basis, (sum(b) for b in rs.positive_roots)))
    depth = {tuple(lam): 0}
    frontier = [tuple(lam)]
    while frontier:
        nxt = []
        for mu in frontier:
            for a, h in pos:
                nu = tuple(x - y for x, y in zip(mu, a))
                if all(x >= 0 for x in nu) and nu not in depth:
                    depth[nu] = depth[mu] + h
                    nxt.append(nu)
        frontier = nxt
    return depth


def _freudenthal(rs: RootSystem, lam) -> dict:
    lam = tuple(lam)
    depth = _dominant_below(rs, lam)
    rho = (1,) * rs.rank
    shifted = lambda x: tuple(a + b for a, b in zip(x, rho))  # noqa: E731
    norm_top = rs.weight_inner(shifted(lam), shifted(lam))
    pos = rs.positive_roots_weight_basis
    mult = {lam: 1}
    for mu in sorted(depth, key=depth.get)[1:]:
        acc = Fraction(0)
        for a in pos:
            j = 1
            while True:
                nu = tuple(x + j * y for x, y in zip(mu, a))
                m = mult.get(dominant_conjugate(rs, nu))
                if not m:
                    break
                acc += m * rs.weight_inner(nu, a)
                j += 1
        m = 2 * acc / (norm_top - rs.weight_inner(shifted(mu), shifted(mu)))
        if m.denominator != 1:
            raise ArithmeticError(f"non-integral weight multiplicity {m} at {mu}")
        mult[mu] = int(m)
    return {mu: m for mu, m in mult.items() if m}


def fundamental_weight_system(rs: RootSystem, i: int) -> Counter:
    """Weights (Dynkin labels, with multiplicity) of the irreducible with highest weight ``varpi_i``.

    Dominant multiplicities come from Freudenthal's recursion; the rest by
    Weyl-orbit closure.  ``i`` is 0-based.
    """
    if not 0 <= i < rs.rank:
        raise ValueError(f"fundamental index must be in [0, {rs.rank})")
    lam = tuple(int(j == i) for j in range(rs.rank))
    out: Counter = Counter()
    for mu, m in _freudenthal(rs, lam).items():
        for nu in weyl_orbit(rs, mu):
            out[nu] += m
    return out


def generator_weights(rs: RootSystem) -> Counter:
    """Weights of ``u``, the direct sum of all fundamental representations."""
    out: Counter = Counter()
    for i in range(rs.rank):
        out.update(fundamental_weight_system(rs, i))
    return out


def delta_hat(rs: RootSystem, max_roots: int = MAX_DELTA_ROOTS) -> dict:
    """Fourier coefficients of the Weyl density ``prod_{alpha in R} (e^alpha - 1)``.

    A signed integer measure on the weight lattice with mass ``|W|`` at 0 and
    total mass 0.
    """
    roots = rs.roots_weight_basis
    if len(roots) > max_roots:
        raise ValueError(f"delta expansion guard: {len(roots)} roots exceeds the limit {max_roots}")
    zero = (0,) * rs.rank
    poly = {zero: 1}
    for a in roots:
        nxt: dict = {}
        for x, c in poly.items():
            y = tuple(p + q for p, q in zip(x, a))
            nxt[y] = nxt.get(y, 0) + c
            nxt[x] = nxt.get(x, 0) - c
        poly = {x: c for x, c in nxt.items() if c}
    return poly


def _convolve_counts(dist: dict, steps: Counter) -> dict:
    out: dict = {}
    for x, c in dist.items():
        for s, m in steps.items():
            y = tuple(p + q for p, q in zip(x, s))
            out[y] = out.get(y, 0) + c * m
    return out


def _walk_counts(steps: Counter, n_steps: int) -> dict:
    zero = (0,) * len(next(iter(steps)))
    dist = {zero: 1}
    for _ in range(n_steps):
        dist = _convolve_counts(dist, steps)
    return dist


def lattice_walk(steps: Counter, n_steps: int) -> dict:
    """Exact law of ``S_{n_steps}`` for i.i.d. uniform steps drawn from the multiset ``steps``."""
    if not steps:
        raise ValueError("steps must be nonempty")
    if n_steps < 0:
        raise ValueError("number of steps must be nonnegative")
    total = sum(steps.values()) ** n_steps
    return {x: Fraction(c, total) for x, c in _walk_counts(Counter(steps), n_steps).items()}


def _pair_expectation(counts: dict, dhat: dict) -> int:
    # sum_a dhat(a) sum_b c(b) c(b + a)
    acc = 0
    for a, d in dhat.items():
        s = 0
        for b, c in counts.items():
            c2 = counts.get(tuple(x + y for x, y in zip(b, a)))
            if c2:
                s += c * c2
        acc += d * s
    return acc


def lie_return_probability(rs: RootSystem, k: int, method: str = "half") -> Fraction:
    """Exact ``p_k`` for the dual of the simply connected group of ``rs``.

    ``method="half"`` walks ``k`` steps and pairs the law with itself (the
    step multiset is symmetric); ``method="direct"`` walks all ``2k`` steps.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    steps = generator_weights(rs)
    n = sum(steps.values())
    dhat = delta_hat(rs, max_roots=max(MAX_DELTA_ROOTS, rs.num_roots))
    if method == "half":
        num = _pair_expectation(_walk_counts(steps, k), dhat)
    elif method == "direct":
        counts = _walk_counts(steps, 2 * k)
        num = sum(d * counts.get(tuple(-x for x in a), 0) for a, d in dhat.items())
    else:
        raise ValueError(f"unknown method {method!r}")
    return Fraction(num, rs.weyl_order * n ** (2 * k))


def lie_exact_return_probabilities(rs: RootSystem, ks) -> dict[int, Fraction]:
    """Exact ``p_k`` for every ``k`` in ``ks``, walking ``max(ks)`` steps once."""
    wanted = sorted(set(ks))
    if not wanted or wanted[0] < 0:
        raise ValueError("ks must be a nonempty set of nonnegative integers")
    steps = generator_weights(rs)
    n = sum(steps.values())
    dhat = delta_hat(rs, max_roots=max(MAX_DELTA_ROOTS, rs.num_roots))
    counts = {(0,) * rs.rank: 1}
    out: dict[int, Fraction] = {}
    for k in range(wanted[-1] + 1):
        if k == wanted[len(out)]:
            out[k] = Fraction(_pair_expectation(counts, dhat), rs.weyl_order * n ** (2 * k))
            if len(out) == len(wanted):
                break
        counts = _convolve_counts(counts, steps)
    return out


def _dense_pair_expectation(arr: np.ndarray, dhat: dict) -> float:
    acc = 0.0
    shape = arr.shape
    for a, d in dhat.items():
        src, dst = [], []
        if any(abs(off) >= n for off, n in zip(a, shape)):
            continue
        for ax, off in enumerate(a):
            n = shape[ax]
            if off >= 0:
                src.append(slice(0, n - off))
                dst.append(slice(off, n))
            else:
                src.append(slice(-off, n))
                dst.append(slice(0, n + off))
        acc += d * float(np.sum(arr[tuple(src)] * arr[tuple(dst)]))
    return acc


def lie_return_probabilities(rs: RootSystem, ks, mode: str = "logfloat") -> dict[int, float]:
    """``p_k`` for every ``k`` in ``ks`` from one walk of ``max(ks)`` steps.

    ``mode="logfloat"`` propagates the law as a dense float array (feasible to
    ``k ~ 10^3`` in rank <= 2); ``mode="exact"`` returns exact values as floats.
    """
    wanted = sorted(set(ks))
    if not wanted or wanted[0] < 0:
        raise ValueError("ks must be a nonempty set of nonnegative integers")
    if mode == "exact":
        return {k: float(lie_return_probability(rs, k)) for k in wanted}
    if mode != "logfloat":
        raise ValueError(f"mode must be 'exact' or 'logfloat', got {mode!r}")
    steps = generator_weights(rs)
    n = sum(steps.values())
    dhat = delta_hat(rs, max_roots=max(MAX_DELTA_ROOTS, rs.num_roots))
    c = max(abs(x) for s in steps for x in s)
    r = rs.rank
    arr = np.ones((1,) * r)
    out: dict[int, float] = {}
    step_list = [(np.array(s), m / n) for s, m in steps.items()]
    for k in range(wanted[-1] + 1):
        if k == wanted[len(out)]:
            out[k] = _dense_pair_expectation(arr, dhat) / rs.weyl_order
            if len(out) == len(wanted):
                break
        new = np.zeros(tuple(x + 2 * c for x in arr.shape))
        for s, p in step_list:
            idx = tuple(slice(c + o, c + o + m) for o, m in zip(s, arr.shape))
            new[idx] += p * arr
        arr = new
    return out


def covariance_form(rs: RootSystem) -> tuple:
    """Gram matrix ``G`` with ``q1(xi) = 4 pi^2 xi^T G xi``, in coordinates dual to Dynkin labels.

    ``G = (1/n) sum_{alpha in R_u} alpha alpha^T``; the factor ``4 pi^2`` is
    left to the caller.
    """
    steps = generator_weights(rs)
    n = sum(steps.values())
    r = rs.rank
    return tuple(
        tuple(Fraction(sum(m * s[i] * s[j] for s, m in steps.items()), n) for j in range(r)) for i in range(r)
    )


def _det(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] / m[col][col]
            m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return int(det)


def _lattice_index(gens, r: int) -> int:
    g = 0
    for rows in itertools.combinations(gens, r):
        g = math.gcd(g, abs(_det(rows)))
        if g == 1:
            break
    return g


def walk_lattice_index(rs: RootSystem) -> int:
    """Index in X of the lattice spanned by differences of step weights.

    This is the number of points of the torus where the step characteristic
    function has modulus 1; each contributes the same Gaussian peak to
    ``p_k``.
    """
    steps = sorted(generator_weights(rs))
    base = steps[0]
    diffs = sorted({tuple(a - b for a, b in zip(s, base)) for s in steps[1:]})
    idx = _lattice_index(diffs, rs.rank)
    if idx == 0:
        raise ValueError("step differences do not span the weight lattice")
    if idx > 1:
        for a in rs.positive_roots_weight_basis:
            if _lattice_index(diffs + [a], rs.rank) != idx:
                raise NotImplementedError("a root lies outside the step-difference lattice")
    return idx


def gaussian_limit_constant(rs: RootSystem, epsabs: float = 0.0, epsrel: float = 1e-10) -> float:
    """``lim (2k)^{d/2} p_k`` as a Gaussian integral over the dual of the Cartan algebra.

    Evaluates ``|W|^{-1} int q2(xi) exp(-q1(xi)/2) dxi`` by adaptive quadrature
    and multiplies by :func:`walk_lattice_index` to account for periodicity
    of the walk (factor 2 for A1, 1 in higher rank).
    """
    if rs.rank > 2:
        raise ValueError("quadrature implemented for rank <= 2")
    G = np.array([[float(x) for x in row] for row in covariance_form(rs)])
    q1_mat = 4 * math.pi**2 * G
    pos = np.array(rs.positive_roots_weight_basis, dtype=float)

    def integrand(*xi):
        v = np.array(xi)
        q1 = v @ q1_mat @ v
        q2 = float(np.prod(2 * math.pi * (pos @ v))) ** 2
        return q2 * math.exp(-q1 / 2)

    lam_min = float(np.linalg.eigvalsh(q1_mat).min())
    # exp(-q1/2) < e^{-60} outside the box, polynomial factor included
    L = math.sqrt(2 * (60 + rs.num_roots * 4) / lam_min)
    opts = {"epsabs": epsabs, "epsrel": epsrel, "limit": 200}
    if rs.rank == 1:
        val, err = integrate.quad(integrand, -L, L, **opts)
    else:
        val, err = integrate.nquad(integrand, [(-L, L)] * rs.rank, opts=opts)
    if not math.isfinite(val) or err > 1e-6 * abs(val) + epsabs:
        raise ArithmeticError(f"quadrature did not converge (value {val}, error {err})")
    return walk_lattice_index(rs) * val / rs.weyl_order


def _torus_mean(rs: RootSystem, k: int, N: int, steps: Counter) -> float:
    r = rs.rank
    grid = np.meshgrid(*([np.arange(N) / N] * r), indexing="ij")
    xi = np.stack([g.ravel() for g in grid], axis=1)
    chi = np.zeros(len(xi))
    for s, m in steps.items():
        chi += m * np.cos(2 * np.pi * (xi @ np.array(s, dtype=float)))
    dens = np.ones(len(xi))
    for a in rs.positive_roots_weight_basis:
        dens *= 4 * np.sin(np.pi * (xi @ np.array(a, dtype=float))) ** 2
    n = sum(steps.values())
    return float(np.mean((chi / n) ** (2 * k) * dens)) / rs.weyl_order


def torus_quadrature_pk(rs: RootSystem, k: int, grid: int | None = None, rtol: float = 1e-9) -> float:
    """``p_k`` by Weyl integration over the maximal torus on a uniform periodic grid.

    The integrand is a trigonometric polynomial; the default grid exceeds its
    degree so the rule is exact up to rounding.  The result on ``grid`` and
    ``2 * grid`` points per axis must agree to ``rtol``.
    """
    if rs.rank > 2:
        raise ValueError("torus quadrature implemented for rank <= 2")
    if k < 0:
        raise ValueError("k must be nonnegative")
    steps = generator_weights(rs)
    if grid is None:
        deg = [
            2 * k * max(abs(s[d]) for s in steps) + sum(abs(a[d]) for a in rs.positive_roots_weight_basis)
            for d in range(rs.rank)
        ]
        grid = max(deg) + 1
    coarse = _torus_mean(rs, k, grid, steps)
    fine = _torus_mean(rs, k, 2 * grid, steps)
    if abs(coarse - fine) > rtol * abs(fine):
        raise GridTooCoarse(f"grid {grid} too coarse: {coarse} vs {fine} on {2 * grid} points")
    return fine
