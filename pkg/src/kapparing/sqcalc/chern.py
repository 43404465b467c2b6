"""Expansion of c(A_d^* - B_d) = prod_i (1 + Delta_i) / (1 - psihat_i + Delta_i).

Each factor is expanded with (1 + x)/(1 - y + x) = 1 + sum_{r>=0} y (y - x)^r,
where Delta_i = D_{1i} + ... + D_{i-1,i} is substituted before reduction.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from .diagclass import DiagClass, DiagMonomial

__all__ = ["expand_chern_class", "chern_graded", "substitution_count", "connected_count_direct"]


def _times_psi_minus_delta(x: DiagClass, i: int, max_degree: int) -> DiagClass:
    out: dict[DiagMonomial, Fraction] = {}

    def put(m, v):
        w = out.get(m, 0) + v
        if w:
            out[m] = w
        else:
            out.pop(m, None)

    for m, c in x.terms.items():
        if m.degree >= max_degree:
            continue
        put(m.times_psi(i), c)
        for j in range(1, i):
            sign, m2 = m.times_diagonal(j, i)
            # -D_ji contributes -sign
            put(m2, -c if sign > 0 else c)
    return DiagClass(x.d, out)


_cache: dict[int, tuple[int, DiagClass]] = {}
_lock = threading.Lock()


def _expand(d: int, r_max: int) -> DiagClass:
    """Memoized per d; a deeper expansion serves every shallower request."""
    with _lock:
        hit = _cache.get(d)
    if hit is None or hit[0] < r_max:
        depth = max(r_max, 12) if d <= 4 else r_max
        full = _expand_uncached(d, depth)
        with _lock:
            hit = _cache.get(d)
            if hit is None or hit[0] < depth:
                hit = _cache[d] = (depth, full)
    return hit[1] if hit[0] == r_max else hit[1].truncated(r_max)


def _expand_uncached(d: int, r_max: int) -> DiagClass:
    cur = DiagClass.unit(d)
    for i in range(1, d + 1):
        acc = cur.copy()
        y = cur.truncated(r_max - 1).times_psi(i)
        while y.terms:
            acc.add_to(y)
            y = _times_psi_minus_delta(y, i, r_max)
        cur = acc
    return cur


def expand_chern_class(d: int, r_max: int) -> DiagClass:
    """Total Chern class of A_d^* - B_d through degree r_max, in normal form."""
    if d < 1 or r_max < 0:
        raise ValueError("need d >= 1 and r_max >= 0")
    return _expand(d, r_max).copy()


@lru_cache(maxsize=128)
def _graded(d: int, r: int) -> DiagClass:
    return _expand(d, r).graded(r)


def chern_graded(d: int, r: int) -> DiagClass:
    """c_r(A_d^* - B_d) in normal form."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    return _graded(d, r).copy()


def substitution_count(d: int, r: int) -> int:
    """Degree-r part evaluated at psihat = 1, D = -1 (the number of expansion terms)."""
    v = _graded(d, r).substitute_counts()
    assert v.denominator == 1
    return int(v)


def connected_count_direct(r: int, d: int) -> int:
    """The part of :func:`substitution_count` coming from one-block monomials."""
    c = _graded(d, r)
    v = sum(
        (coeff * (-1) ** m.diagonal_codim for m, coeff in c.terms.items() if len(m.exps) == 1),
        Fraction(0),
    )
    assert v.denominator == 1
    return int(v)
