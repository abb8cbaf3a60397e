"""Partition combinatorics and the automaton size bounds.

All logarithms are evaluated with integer arithmetic.  ``floor_log`` and
``ceil_log`` return ``NEG_INF`` at 0, and ``NEG_INF`` survives ``+ 1``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .polyalg import NEG_INF, Factorization

__all__ = [
    "partitions",
    "landau",
    "lcm_values",
    "script_l",
    "floor_log",
    "ceil_log",
    "BoundReport",
    "theorem1_bound",
    "univariate_bound",
]


def floor_log(q: int, x: int):
    """Largest k with q^k <= x; ``NEG_INF`` for x = 0."""
    if q < 2:
        raise ValueError("base must be at least 2")
    if x < 0:
        raise ValueError("logarithm of a negative number")
    if x == 0:
        return NEG_INF
    k, p = 0, q
    while p <= x:
        p *= q
        k += 1
    return k


def ceil_log(q: int, x: int):
    """Smallest k with q^k >= x; ``NEG_INF`` for x = 0."""
    if q < 2:
        raise ValueError("base must be at least 2")
    if x < 0:
        raise ValueError("logarithm of a negative number")
    if x == 0:
        return NEG_INF
    k, p = 0, 1
    while p < x:
        p *= q
        k += 1
    return k


def partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n as non-increasing tuples, largest first part first."""
    if n < 1:
        raise ValueError("n must be positive")
    out: list[tuple[int, ...]] = []

    def rec(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def _lcm(values) -> int:
    return functools.reduce(math.lcm, values, 1)


def landau(n: int) -> int:
    """Maximum lcm of the parts of a partition of n."""
    return max(_lcm(p) for p in partitions(n))


@functools.lru_cache(maxsize=None)
def lcm_values(n: int) -> frozenset:
    """All values lcm(sigma) for sigma a partition of some k with 1 <= k <= n.

    Padding with parts equal to 1 does not change the lcm, so this is the set
    of lcms of multisets of positive integers with sum at most n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    # reachable[s] = set of lcms of multisets with sum exactly s (parts >= 2)
    reachable: list[set[int]] = [set() for _ in range(n + 1)]
    reachable[0].add(1)
    for part in range(2, n + 1):
        for s in range(part, n + 1):
            for v in list(reachable[s - part]):
                reachable[s].add(math.lcm(v, part))
    return frozenset().union(*reachable)


@functools.lru_cache(maxsize=None)
def script_l(l: int, m: int, n: int) -> int:
    """max lcm(lcm sigma1, lcm sigma2, lcm sigma3) over partitions of i <= l, j <= m, k <= n."""
    if min(l, m, n) < 1:
        raise ValueError("arguments must be positive")
    best = 1
    A, B, C = lcm_values(l), lcm_values(m), lcm_values(n)
    for a in A:
        for b in B:
            ab = math.lcm(a, b)
            for c in C:
                best = max(best, math.lcm(ab, c))
    return best


@dataclass(frozen=True)
class BoundReport:
    q: int
    h: int
    d: int
    main: int
    orbit_term: int
    log_terms: int
    total: int
    trivial: bool = False

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.total, self.main)

    @property
    def without_main(self) -> int:
        """total - q^(hd); the quantity that bounds the lambda_{0,0} orbit of S0."""
        return self.total - self.main


def theorem1_bound(q: int, h: int, d: int) -> BoundReport:
    """q^(hd) + q^((h-1)(d-1)) L(h,d,d) + floor(log_q h) + ceil(log_q max(h, d-1)) + 3."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if d < 1 or h < 0:
        raise ValueError("need h >= 0 and d >= 1")
    if h == 0:
        return BoundReport(q, h, d, 1, 0, 0, 1, trivial=True)
    main = q ** (h * d)
    orbit_term = q ** ((h - 1) * (d - 1)) * script_l(h, d, d)
    logs = floor_log(q, h) + ceil_log(q, max(h, d - 1)) + 3
    return BoundReport(q, h, d, main, orbit_term, logs, main + orbit_term + logs)


def univariate_bound(fact: Factorization) -> tuple[int, int]:
    """(t, l) with every lambda_0 orbit of S, deg S <= deg R, of size <= t + l."""
    q = fact.field.q
    e0 = fact.e0
    exps = fact.exponents
    t = max(floor_log(q, max(e0, 0)) + 1, ceil_log(q, max(exps, default=0)), 0)
    ell = _lcm(fact.degrees)
    return int(t), ell
