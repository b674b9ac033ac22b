"""Concrete fusion rings and ring combinators.

Catalog:

* :func:`ao_ring` -- the free orthogonal quantum group ``A_o(n)`` (``n = 2`` is
  the SU(2) chain),
* :func:`as_ring` -- the quantum permutation group ``A_s(n)``,
* :func:`group_ring` -- duals of ``Z^r`` and of the free group ``F_m``,
* :func:`direct_product`, :func:`free_product`, :func:`free_version_ring`.

:func:`parse_ring` turns strings such as ``"free(ao:3,prod(zr:1,as:5))"`` into
rings.
"""

from __future__ import annotations

import math
import re
from typing import Hashable

import numpy as np

from . import fusion
from .fusion import FusionRing

__all__ = [
    "ChainRing",
    "TrivialRing",
    "FreeAbelianRing",
    "FreeGroupRing",
    "ProductRing",
    "WordRing",
    "DegenerateFreeVersion",
    "ao_ring",
    "as_ring",
    "group_ring",
    "direct_product",
    "free_product",
    "free_version_ring",
    "free_version_growth",
    "is_degenerate",
    "parse_ring",
    "RingSpecError",
]


class DegenerateFreeVersion(ValueError):
    """The trivial corepresentation occurs in an odd tensor power of ``u``."""


class RingSpecError(ValueError):
    """A ring specification string does not match the grammar."""


class TrivialRing(FusionRing):
    """The trivial group, generated by its one-dimensional trivial corepresentation."""

    def trivial(self):
        return 0

    def generator(self):
        return {0: 1}

    def tensor(self, v, g):
        return {0: 1}

    def dim(self, v):
        return 1

    def conjugate(self, v):
        return v

    def __repr__(self):
        return "TrivialRing()"


class ChainRing(FusionRing):
    """Irreducibles ``0, 1, 2, ...`` with tridiagonal fusion rules.

    ``kind="ao"``: ``u_k ⊗ u_1 = u_{k-1} + u_{k+1}``, generator ``u_1``.
    ``kind="as"``: ``v_k ⊗ v_1 = v_{k-1} + v_k + v_{k+1}`` (``k >= 1``),
    generator ``v_0 + v_1``.  Every irreducible is self-conjugate.
    """

    def __init__(self, kind: str, n: int):
        super().__init__()
        if kind not in ("ao", "as"):
            raise ValueError(f"unknown chain kind {kind!r}")
        self.kind = kind
        self.n = n
        # dims by integer recursion; c is the coefficient in dim_{k+1} = c dim_k - dim_{k-1}
        self._c = n if kind == "ao" else n - 2
        self._dims = [1, n if kind == "ao" else n - 1]

    def trivial(self):
        return 0

    def generator(self):
        return {1: 1} if self.kind == "ao" else {0: 1, 1: 1}

    def tensor(self, v, g):
        if g == 0:
            return {v: 1}
        if v == 0:
            return {1: 1}
        if self.kind == "ao":
            return {v - 1: 1, v + 1: 1}
        return {v - 1: 1, v: 1, v + 1: 1}

    def dim(self, v):
        d = self._dims
        while len(d) <= v:
            d.append(self._c * d[-1] - d[-2])
        return d[v]

    def conjugate(self, v):
        return v

    def dense_step(self, vec):
        out = np.zeros(len(vec) + 1)
        out[1:] += vec
        out[:-2] += vec[1:]
        if self.kind == "as":
            out[1:-1] += vec[1:]
            out[:-1] += vec
        return out

    def __repr__(self):
        return f"ChainRing({self.kind!r}, {self.n})"


def ao_ring(n: int) -> ChainRing:
    """Fusion ring of ``A_o(n)``; ``n = 2`` gives the dual of SU(2)."""
    if n < 2:
        raise ValueError(f"ao_ring requires n >= 2, got {n}")
    return ChainRing("ao", n)


def as_ring(n: int) -> ChainRing:
    """Fusion ring of ``A_s(n)``; the generator contains the trivial summand ``v_0``."""
    if n < 4:
        raise ValueError(f"as_ring requires n >= 4, got {n}")
    return ChainRing("as", n)


class FreeAbelianRing(FusionRing):
    """Dual of ``Z^r`` with generators ``±e_i``; labels are integer tuples."""

    def __init__(self, r: int):
        super().__init__()
        self.r = r
        gens = {}
        for i in range(r):
            for s in (1, -1):
                e = [0] * r
                e[i] = s
                gens[tuple(e)] = 1
        self._gens = gens

    def trivial(self):
        return (0,) * self.r

    def generator(self):
        return self._gens

    def tensor(self, v, g):
        return {tuple(a + b for a, b in zip(v, g)): 1}

    def dim(self, v):
        return 1

    def conjugate(self, v):
        return tuple(-a for a in v)

    def __repr__(self):
        return f"FreeAbelianRing({self.r})"


class FreeGroupRing(FusionRing):
    """Dual of the free group ``F_m``; labels are reduced words of nonzero ints ``±(i+1)``."""

    def __init__(self, m: int):
        super().__init__()
        self.m = m
        self._gens = {(s * (i + 1),): 1 for i in range(m) for s in (1, -1)}

    def trivial(self):
        return ()

    def generator(self):
        return self._gens

    def tensor(self, v, g):
        (x,) = g
        if v and v[-1] == -x:
            return {v[:-1]: 1}
        return {v + (x,): 1}

    def dim(self, v):
        return 1

    def conjugate(self, v):
        return tuple(-x for x in reversed(v))

    def __repr__(self):
        return f"FreeGroupRing({self.m})"


def group_ring(presentation: str, rank: int) -> FusionRing:
    """Dual of a discrete group: ``("zr", r)`` for ``Z^r`` or ``("free", m)`` for ``F_m``."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if presentation == "zr":
        return FreeAbelianRing(rank)
    if presentation == "free":
        return FreeGroupRing(rank)
    raise ValueError(f"unknown presentation {presentation!r}")


class ProductRing(FusionRing):
    """Direct product ``(A1 ⊗ A2, u1 + u2)``; irreducibles are pairs."""

    def __init__(self, r1: FusionRing, r2: FusionRing):
        super().__init__()
        self.r1, self.r2 = r1, r2
        t1, t2 = r1.trivial(), r2.trivial()
        gens: dict = {}
        for g, m in r1.generator().items():
            gens[(g, t2)] = gens.get((g, t2), 0) + m
        for h, m in r2.generator().items():
            gens[(t1, h)] = gens.get((t1, h), 0) + m
        self._gens = gens
        self.exact_fusion = r1.exact_fusion and r2.exact_fusion

    def trivial(self):
        return (self.r1.trivial(), self.r2.trivial())

    def generator(self):
        return self._gens

    def tensor(self, v, g):
        # letters are (g, 1) or (1, h); (1, 1) comes from a trivial summand of u1 or u2
        if g == self.trivial():
            return {v: 1}
        a, b = v
        if g[1] == self.r2.trivial():
            return {(c, b): m for c, m in self.r1.tensor(a, g[0]).items()}
        return {(a, c): m for c, m in self.r2.tensor(b, g[1]).items()}

    def dim(self, v):
        return self.r1.dim(v[0]) * self.r2.dim(v[1])

    def conjugate(self, v):
        return (self.r1.conjugate(v[0]), self.r2.conjugate(v[1]))

    def __repr__(self):
        return f"ProductRing({self.r1!r}, {self.r2!r})"


class WordRing(FusionRing):
    """Free product ``(A1 * A2, u1 + u2)``.

    Irreducibles are alternating words ``((i1, v1), (i2, v2), ...)`` of
    nontrivial letters with ``i_j`` the factor index (0 or 1) and adjacent
    letters from different factors; the empty word is trivial.
    """

    def __init__(self, r1: FusionRing, r2: FusionRing):
        super().__init__()
        self.factors = (r1, r2)
        gens: dict = {}
        for i, r in enumerate(self.factors):
            t = r.trivial()
            for g, m in r.generator().items():
                key = () if g == t else ((i, g),)
                gens[key] = gens.get(key, 0) + m
        self._gens = gens
        self.exact_fusion = r1.exact_fusion and r2.exact_fusion

    def trivial(self):
        return ()

    def generator(self):
        return self._gens

    def tensor(self, v, g):
        if not g:
            return {v: 1}
        ((i, x),) = g
        if not v or v[-1][0] != i:
            return {v + g: 1}
        r = self.factors[i]
        t = r.trivial()
        head, (_, last) = v[:-1], v[-1]
        out: dict = {}
        for y, c in r.tensor(last, x).items():
            w = head if y == t else head + ((i, y),)
            out[w] = out.get(w, 0) + c
        return out

    def dim(self, v):
        return math.prod(self.factors[i].dim(x) for i, x in v)

    def conjugate(self, v):
        return tuple((i, self.factors[i].conjugate(x)) for i, x in reversed(v))

    def word_length(self, v) -> int:
        """Sum of the letters' lengths in their own factors."""
        total = 0
        for i, x in v:
            total += _length_of(self.factors[i], x)
        return total

    def __repr__(self):
        return f"WordRing({self.factors[0]!r}, {self.factors[1]!r})"


def _length_of(ring: FusionRing, v: Hashable, cutoff: int = 64) -> int:
    d = fusion.distance(ring, ring.trivial(), v, cutoff)
    if d is None:
        raise ValueError(f"length of {v!r} exceeds {cutoff}")
    return d


def direct_product(r1: FusionRing, r2: FusionRing) -> ProductRing:
    return ProductRing(r1, r2)


def free_product(r1: FusionRing, r2: FusionRing) -> WordRing:
    return WordRing(r1, r2)


def is_degenerate(ring: FusionRing, max_odd: int = 9) -> bool:
    """Whether the trivial irreducible occurs in ``u^{⊗j}`` for some odd ``j <= max_odd``.

    This is a finite check; a ring passing it could still be degenerate at a
    higher odd power.
    """
    t = ring.trivial()
    for j, vec in enumerate(fusion.iter_multiplicities(ring)):
        if j > max_odd:
            return False
        if j % 2 and vec.get(t, 0):
            return True
    return False


def free_version_ring(ring: FusionRing, assume_nondegenerate: bool = False) -> WordRing:
    """Metric space with dimensions of the free version ``(A+, u+)``.

    This is the free product of the ring with itself, which has the same
    lengths and dimensions as the free version but not the same fusion
    rules; the returned ring therefore refuses multiplicity computations.
    """
    if not assume_nondegenerate and is_degenerate(ring):
        raise DegenerateFreeVersion(
            "degenerate free version: the trivial corepresentation is contained in an odd tensor power of u"
        )
    w = WordRing(ring, ring)
    w.exact_fusion = False
    return w


def free_version_growth(
    ring: FusionRing, K: int, assume_nondegenerate: bool = False, limit: int | None = None
) -> tuple[list[int], list[int]]:
    """Ball and sphere volumes ``(b, s)`` of the free version, up to radius ``K``."""
    return fusion.volumes(free_version_ring(ring, assume_nondegenerate), K, limit)


_TOKEN = re.compile(r"\s*(?:(?P<atom>[a-z]+:\d+|trivial)|(?P<fn>prod|free|freeversion)\s*\(|(?P<comma>,)|(?P<close>\)))")


def parse_ring(spec: str) -> FusionRing:
    """Build a ring from its string form.

    Grammar::

        ring  := atom | "prod(" ring "," ring ")" | "free(" ring "," ring ")"
                 | "freeversion(" ring ")"
        atom  := "ao:" n | "as:" n | "zr:" r | "free:" m | "trivial"
    """
    tokens = []
    pos = 0
    s = spec.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise RingSpecError(f"ring: unexpected input at position {pos} in {spec!r}")
        tokens.append(m)
        pos = m.end()
    ring, i = _parse(tokens, 0, spec)
    if i != len(tokens):
        raise RingSpecError(f"ring: trailing input in {spec!r}")
    return ring


def _atom(text: str, spec: str) -> FusionRing:
    if text == "trivial":
        return TrivialRing()
    name, _, num = text.partition(":")
    n = int(num)
    builders = {"ao": ao_ring, "as": as_ring, "zr": lambda k: group_ring("zr", k), "free": lambda k: group_ring("free", k)}
    if name not in builders:
        raise RingSpecError(f"atom: unknown family {name!r} in {spec!r}; expected ao, as, zr, free")
    try:
        return builders[name](n)
    except ValueError as e:
        raise RingSpecError(f"atom: {e}") from None


def _expect(tokens, i, kind, spec):
    if i >= len(tokens) or tokens[i].group(kind) is None:
        raise RingSpecError(f"ring: expected {kind!r} at token {i} in {spec!r}")
    return i + 1


def _parse(tokens, i, spec):
    if i >= len(tokens):
        raise RingSpecError(f"ring: unexpected end of {spec!r}")
    tok = tokens[i]
    if tok.group("atom"):
        return _atom(tok.group("atom"), spec), i + 1
    fn = tok.group("fn")
    if fn is None:
        raise RingSpecError(f"ring: expected an atom or combinator at token {i} in {spec!r}")
    a, i = _parse(tokens, i + 1, spec)
    if fn == "freeversion":
        i = _expect(tokens, i, "close", spec)
        try:
            return free_version_ring(a), i
        except DegenerateFreeVersion as e:
            raise RingSpecError(f"freeversion: {e}") from None
    i = _expect(tokens, i, "comma", spec)
    b, i = _parse(tokens, i, spec)
    i = _expect(tokens, i, "close", spec)
    return (direct_product(a, b) if fn == "prod" else free_product(a, b)), i
