"""Exact number kernel: rationals, Bernoulli numbers and factorial combinatorics.

All scalars are :class:`fractions.Fraction`; nothing here ever rounds.

The double factorial used throughout the package is the *odd* product

    odd_double_factorial(l) = (2l)! / (2^l l!) = (2l-1)(2l-3)...3*1,

which is what the series ``phi(x) = 1 + x + 3x^2 + 15x^3 + ...`` is built
from.  It is not the usual even double factorial ``(2l)(2l-2)...2``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Sequence

__all__ = [
    "Q",
    "bernoulli",
    "odd_double_factorial",
    "multinomial",
    "stirling2",
    "format_rational",
    "parse_rational",
]

Q = Fraction

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Return B_m with the convention B_1 = -1/2.

    Uses the defining recurrence sum_{k=0}^{m} C(m+1, k) B_k = 0, memoized.
    """
    if m < 0:
        raise ValueError("bernoulli index must be >= 0")
    with _bernoulli_lock:
        cache = _bernoulli_cache
        while len(cache) <= m:
            n = len(cache)
            acc = sum((comb(n + 1, k) * cache[k] for k in range(n)), Fraction(0))
            cache.append(-acc / (n + 1))
        return cache[m]


def odd_double_factorial(l: int) -> int:
    """(2l)! / (2^l l!), i.e. the product of the odd numbers below 2l."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return prod(range(1, 2 * l, 2))


def multinomial(top: int, parts: Sequence[int]) -> int:
    """top! / (prod parts_i! * (top - sum parts)!)."""
    rest = top - sum(parts)
    if rest < 0 or any(p < 0 for p in parts):
        raise ValueError(f"invalid multinomial ({top}; {list(parts)})")
    den = factorial(rest)
    for p in parts:
        den *= factorial(p)
    return factorial(top) // den


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Number of set partitions of an n-set into k blocks."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be >= 0")
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def format_rational(x: Fraction | int) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    from math import lcm

    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out
