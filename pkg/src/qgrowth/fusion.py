"""Generic fusion-ring engine.

A :class:`FusionRing` only has to know how to tensor an irreducible with one
summand ("letter") of the generating corepresentation ``u``.  From that the
engine derives balls and lengths (breadth-first search), sphere and ball
volumes, the exact decomposition of ``u^{⊗k}``, return probabilities and the
amenability-flavoured quantities built from them.

Irreducibles are plain hashable labels; each ring supplies ``dim`` and
``conjugate`` for its labels.
"""

from __future__ import annotations

import math
import threading
from itertools import accumulate
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator

import numpy as np

from .series import PowerSeries

__all__ = [
    "FusionRing",
    "LogMultiplicities",
    "VolumesOnlyError",
    "BallLimitExceeded",
    "ball",
    "volumes",
    "series_from_ring",
    "multiplicities",
    "iter_multiplicities",
    "trivial_multiplicity",
    "return_probability",
    "return_probabilities",
    "log_return_probabilities",
    "kesten_sequence",
    "cauchy_schwarz_gap",
    "distance",
    "MODES",
]

Label = Hashable
MODES = ("exact", "logfloat")


class BallLimitExceeded(RuntimeError):
    """A breadth-first search grew past its irreducible-count limit."""


class VolumesOnlyError(TypeError):
    """The ring transports lengths and dimensions only, not fusion multiplicities."""


class FusionRing(ABC):
    """Fusion data of a finitely generated discrete quantum group ``(A, u)``.

    Subclasses implement :meth:`trivial`, :meth:`generator`, :meth:`tensor`,
    :meth:`dim` and :meth:`conjugate`.  ``generator()`` maps each irreducible
    summand ("letter") of ``u`` to its multiplicity; ``tensor(v, g)`` decomposes
    ``v ⊗ g`` for a letter ``g``.
    """

    #: False for rings that model only the metric space and dimensions.
    exact_fusion = True

    def __init__(self) -> None:
        self._cache: dict[Label, dict[Label, int]] = {}
        self._lock = threading.Lock()

    @abstractmethod
    def trivial(self) -> Label: ...

    @abstractmethod
    def generator(self) -> dict[Label, int]: ...

    @abstractmethod
    def tensor(self, v: Label, g: Label) -> dict[Label, int]: ...

    @abstractmethod
    def dim(self, v: Label) -> int: ...

    @abstractmethod
    def conjugate(self, v: Label) -> Label: ...

    def generator_dim(self) -> int:
        return sum(m * self.dim(g) for g, m in self.generator().items())

    def tensor_with_generator(self, v: Label) -> dict[Label, int]:
        """Decomposition of ``v ⊗ u`` (cached per irreducible)."""
        out = self._cache.get(v)
        if out is not None:
            return out
        out = {}
        for g, m in self.generator().items():
            for w, c in self.tensor(v, g).items():
                out[w] = out.get(w, 0) + m * c
        with self._lock:
            self._cache[v] = out
        return out

    def dense_step(self, vec: np.ndarray) -> np.ndarray:
        """Vectorized ``vec ⊗ u`` for rings labelled ``0..N``; overridden by chain rings."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def _require_fusion(ring: FusionRing) -> None:
    if not ring.exact_fusion:
        raise VolumesOnlyError(
            f"{ring!r} carries lengths and dimensions only; fusion multiplicities are not available"
        )


def ball(ring: FusionRing, k: int, limit: int | None = None) -> dict[Label, int]:
    """All irreducibles of length ``<= k`` mapped to their length.

    Raises :class:`BallLimitExceeded` once more than ``limit`` irreducibles
    have been found.
    """
    if k < 0:
        raise ValueError("radius must be nonnegative")
    t = ring.trivial()
    lengths = {t: 0}
    frontier = [t]
    for j in range(1, k + 1):
        nxt = []
        for v in frontier:
            for w in ring.tensor_with_generator(v):
                if w not in lengths:
                    lengths[w] = j
                    nxt.append(w)
        if limit is not None and len(lengths) > limit:
            raise BallLimitExceeded(f"ball-size: more than {limit} irreducibles within radius {j}")
        frontier = nxt
        if not frontier:
            break
    return lengths


def volumes(ring: FusionRing, K: int, limit: int | None = None) -> tuple[list[int], list[int]]:
    """Ball volumes ``b_0..b_K`` and sphere volumes ``s_0..s_K`` (sums of ``dim^2``)."""
    s = [0] * (K + 1)
    for v, l in ball(ring, K, limit).items():
        s[l] += ring.dim(v) ** 2
    return list(accumulate(s)), s


def series_from_ring(ring: FusionRing, K: int) -> PowerSeries:
    """Truncated S series ``s_0 + s_1 z + ... + s_K z^K``."""
    return PowerSeries(volumes(ring, K)[1])


def _step_exact(ring: FusionRing, vec: dict[Label, int]) -> dict[Label, int]:
    out: dict[Label, int] = {}
    for v, m in vec.items():
        for w, c in ring.tensor_with_generator(v).items():
            out[w] = out.get(w, 0) + m * c
    return out


@dataclass
class LogMultiplicities:
    """Multiplicity vector stored as ``exp(log_scale) * values``.

    ``values`` is a dict keyed by label, or for chain rings a dense array
    indexed by the integer label.
    """

    values: dict | np.ndarray
    log_scale: float

    def log(self, label: Label) -> float:
        if isinstance(self.values, np.ndarray):
            x = self.values[label] if 0 <= label < len(self.values) else 0.0
        else:
            x = self.values.get(label, 0.0)
        return self.log_scale + math.log(x) if x > 0 else -math.inf

    def log_square_sum(self) -> float:
        """``log Σ m(r)^2``."""
        if isinstance(self.values, np.ndarray):
            sq = float(np.dot(self.values, self.values))
        else:
            sq = sum(x * x for x in self.values.values())
        return 2 * self.log_scale + math.log(sq)


def iter_multiplicities(ring: FusionRing, mode: str = "exact") -> Iterator[dict[Label, int] | LogMultiplicities]:
    """Yield the decompositions of ``u^{⊗0}, u^{⊗1}, ...`` in the requested mode.

    ``"exact"`` yields ``{label: int}``; ``"logfloat"`` yields
    :class:`LogMultiplicities` renormalized to max entry 1 at every step.
    """
    _require_fusion(ring)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    t = ring.trivial()
    if mode == "exact":
        vec: dict[Label, int] = {t: 1}
        while True:
            yield vec
            vec = _step_exact(ring, vec)
    dense = type(ring).dense_step is not FusionRing.dense_step and t == 0
    log_scale = 0.0
    if dense:
        arr = np.array([1.0])
        while True:
            yield LogMultiplicities(arr, log_scale)
            arr = ring.dense_step(arr)
            mx = arr.max()
            arr /= mx
            log_scale += math.log(mx)
    fvec: dict[Label, float] = {t: 1.0}
    while True:
        yield LogMultiplicities(dict(fvec), log_scale)
        nxt: dict[Label, float] = {}
        for v, m in fvec.items():
            for w, c in ring.tensor_with_generator(v).items():
                nxt[w] = nxt.get(w, 0.0) + m * c
        mx = max(nxt.values())
        fvec = {w: x / mx for w, x in nxt.items()}
        log_scale += math.log(mx)


def _nth(it: Iterable, k: int):
    for i, x in enumerate(it):
        if i == k:
            return x
    raise AssertionError("unreachable")


def multiplicities(ring: FusionRing, k: int, mode: str = "exact"):
    """Decomposition ``u^{⊗k} = Σ m_k(r) r``."""
    if k < 0:
        raise ValueError("tensor power must be nonnegative")
    return _nth(iter_multiplicities(ring, mode), k)


def trivial_multiplicity(ring: FusionRing, k: int, method: str = "square_sum") -> int:
    """Multiplicity of the trivial irreducible in ``u^{⊗2k}``.

    ``method="square_sum"`` uses ``Σ_r m_k(r)^2`` (k tensor steps);
    ``method="direct"`` reads the entry of ``u^{⊗2k}`` (2k steps).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if method == "square_sum":
        return sum(m * m for m in multiplicities(ring, k).values())
    if method == "direct":
        return multiplicities(ring, 2 * k).get(ring.trivial(), 0)
    raise ValueError(f"unknown method {method!r}")


def return_probability(ring: FusionRing, k: int) -> Fraction:
    """Probability ``p_k`` of returning to the trivial irreducible after ``2k`` steps, exactly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = ring.generator_dim()
    return Fraction(trivial_multiplicity(ring, k), n ** (2 * k))


def return_probabilities(ring: FusionRing, ks: Iterable[int]) -> dict[int, Fraction]:
    """Exact ``p_k`` for every requested ``k`` from one pass of ``max(ks)`` tensor steps."""
    wanted = sorted(set(ks))
    if not wanted or wanted[0] < 1:
        raise ValueError("ks must be a nonempty set of integers >= 1")
    n = ring.generator_dim()
    out: dict[int, Fraction] = {}
    for k, vec in enumerate(iter_multiplicities(ring)):
        if k == wanted[len(out)]:
            out[k] = Fraction(sum(m * m for m in vec.values()), n ** (2 * k))
            if len(out) == len(wanted):
                return out
    raise AssertionError("unreachable")


def log_return_probabilities(ring: FusionRing, ks: Iterable[int], mode: str = "logfloat") -> dict[int, float]:
    """``log p_k`` for every requested ``k`` in one pass of ``max(ks)`` tensor steps.

    Uses ``m_{2k}(1) = Σ m_k(r)^2``.  In ``"logfloat"`` mode the multiplicities
    are renormalized floats, which reaches ``k ~ 10^4`` for chain rings.
    """
    wanted = sorted(set(ks))
    if not wanted or wanted[0] < 1:
        raise ValueError("ks must be a nonempty set of integers >= 1")
    logn = math.log(ring.generator_dim())
    out: dict[int, float] = {}
    for k, vec in enumerate(iter_multiplicities(ring, mode)):
        if k == wanted[len(out)]:
            if mode == "exact":
                log_m = math.log(sum(m * m for m in vec.values()))
            else:
                log_m = vec.log_square_sum()
            out[k] = log_m - 2 * k * logn
            if len(out) == len(wanted):
                return out
    raise AssertionError("unreachable")


def kesten_sequence(ring: FusionRing, K: int) -> list[float]:
    """``m_{2k}(1)^{1/2k}`` for ``k = 1..K``; tends to ``dim(u)`` exactly in the amenable case."""
    if K < 1:
        raise ValueError("K must be >= 1")
    out = []
    for k, vec in enumerate(iter_multiplicities(ring)):
        if k == 0:
            continue
        out.append(math.exp(math.log(sum(m * m for m in vec.values())) / (2 * k)))
        if k == K:
            return out
    raise AssertionError("unreachable")


def cauchy_schwarz_gap(ring: FusionRing, k: int) -> tuple[int, int]:
    """``(m_{2k}(1) * b_k, n^{2k})``; the first entry always dominates."""
    if k < 1:
        raise ValueError("k must be >= 1")
    b, _ = volumes(ring, k)
    return trivial_multiplicity(ring, k) * b[k], ring.generator_dim() ** (2 * k)


def distance(ring: FusionRing, v: Label, w: Label, cutoff: int) -> int | None:
    """Least ``k`` with ``w ⊂ v ⊗ u^{⊗k}``, or ``None`` if it exceeds ``cutoff``."""
    if v == w:
        return 0
    seen = {v}
    frontier = [v]
    for j in range(1, cutoff + 1):
        nxt = []
        for x in frontier:
            for y in ring.tensor_with_generator(x):
                if y == w:
                    return j
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return None
