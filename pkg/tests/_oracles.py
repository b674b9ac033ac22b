"""Brute-force oracles shared by the test modules.

Nothing here imports the package: these are independent recomputations.
"""

from __future__ import annotations

from math import comb


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def set_partitions(m: int):
    """All set partitions of ``{0..m-1}`` as restricted growth strings."""
    if m == 0:
        yield ()
        return
    a = [0] * m

    def rec(i, top):
        if i == m:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def is_noncrossing(rgs) -> bool:
    """No ``p < q < r < s`` with ``p, r`` in one block and ``q, s`` in another."""
    last = {}
    for i, v in enumerate(rgs):
        last[v] = i
    stack: list = []
    opened = set()
    for i, v in enumerate(rgs):
        if v in opened:
            if stack[-1] != v:
                return False
        else:
            opened.add(v)
            stack.append(v)
        if last[v] == i:
            stack.pop()
    return True


def is_pairing(rgs) -> bool:
    sizes: dict = {}
    for v in rgs:
        sizes[v] = sizes.get(v, 0) + 1
    return all(c == 2 for c in sizes.values())


def count_noncrossing(m: int) -> tuple[int, int]:
    """Noncrossing partitions and noncrossing pairings of ``m`` points, by exhaustive enumeration."""
    parts = pairs = 0
    for p in set_partitions(m):
        if is_noncrossing(p):
            parts += 1
            pairs += is_pairing(p)
    return parts, pairs


def chain_dims(c: int, d1: int, K: int) -> list[int]:
    """``d_0 = 1, d_1 = d1, d_{k+1} = c d_k - d_{k-1}``."""
    d = [1, d1]
    while len(d) <= K:
        d.append(c * d[-1] - d[-2])
    return d[: K + 1]


def walk_return_count(steps, n_steps: int) -> int:
    """Number of closed lattice walks of ``n_steps`` steps by direct convolution."""
    dist = {(0,) * len(steps[0]): 1}
    for _ in range(n_steps):
        nxt: dict = {}
        for x, c in dist.items():
            for s in steps:
                y = tuple(a + b for a, b in zip(x, s))
                nxt[y] = nxt.get(y, 0) + c
        dist = nxt
    return dist.get((0,) * len(steps[0]), 0)
