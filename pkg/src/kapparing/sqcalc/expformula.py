"""Push-forwards of c_r(A_d^* - B_d) times a small class, without expanding c.

In normal form the coefficient of a monomial of c(A_d^* - B_d) factors over
its blocks: a block of k marks with exponent e carries

    w(k, e) = (-1)^(k-1) C^k_{e+k-1}.

Multiply c by a class m supported on the first sigma marks.  Only the blocks
of c meeting the support interact with m; the blocks avoiding it form a copy
of c on the remaining marks, whose push-forward is the series relation.  By
symmetry, which u extra marks the touching blocks pick up only contributes a
binomial factor.  Cost therefore depends on sigma, not on d.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from ..exactnum import stirling2
from ..partitions import Partition, set_partitions
from ..powerseries import connected_coeff
from .diagclass import DiagClass, DiagMonomial
from .kappapoly import KappaPoly, kappa_monomial

__all__ = ["block_weight", "untouched_pushforward", "pushforward_with_chern", "factor_product_on_support"]


def block_weight(k: int, e: int) -> Fraction:
    """Coefficient of D_B psihat_B^e (|B| = k) in c(A_d^* - B_d)."""
    return (-1) ** (k - 1) * connected_coeff(e + k - 1, k)[0]


def untouched_pushforward(s: int, r: int, d: int) -> KappaPoly:
    """epsilon_*(c_r(A_d^* - B_d)), with d = 0 meaning the unit in degree 0."""
    if d == 0:
        return KappaPoly.one() if r == 0 else KappaPoly()
    from .relations import relation_series

    return relation_series(s, r, d).scale(factorial(d))


@lru_cache(maxsize=None)
def _block_series(i: int, x_max: int, y_max: int) -> dict[tuple[int, int], Fraction]:
    # a block meeting the support in i marks and picking up y further marks;
    # x is its degree e + (i + y) - 1, and 1/y! makes the y-sum exponential
    out = {}
    for y in range(y_max + 1):
        k = i + y
        for x in range(k - 1, x_max + 1):
            w = block_weight(k, x - k + 1)
            if w:
                out[x, y] = Fraction(w, factorial(y))
    return out


@lru_cache(maxsize=None)
def _component_series(sizes: tuple[int, ...], x_max: int, y_max: int) -> dict[tuple[int, int], Fraction]:
    acc = {(0, 0): Fraction(1)}
    for i in sizes:
        nxt: dict[tuple[int, int], Fraction] = {}
        for (x1, y1), a in acc.items():
            for (x2, y2), b in _block_series(i, x_max, y_max).items():
                x, y = x1 + x2, y1 + y2
                if x <= x_max and y <= y_max:
                    nxt[x, y] = nxt.get((x, y), 0) + a * b
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def _components(sigma: int, pi: Sequence[Sequence[int]], seeds: Sequence[Sequence[int]]):
    parent = list(range(sigma + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for block in list(pi) + list(seeds):
        for m in block[1:]:
            ra, rb = find(block[0]), find(m)
            if ra != rb:
                parent[rb] = ra
    comps: dict[int, tuple[list, list]] = {}
    for b in pi:
        comps.setdefault(find(b[0]), ([], []))[0].append(b)
    for k, b in enumerate(seeds):
        comps[find(b[0])][1].append(k)
    return list(comps.values())


@lru_cache(maxsize=4096)
def _touched_table(m: DiagMonomial, s: int, x_max: int, y_max: int, kdeg_max: int):
    """(x, y) -> {kappa partition: coeff} for the blocks of c meeting supp(m).

    x is the total degree of those blocks and y the number of marks they take
    from outside the support; the y! of the exponential sum is restored here.
    """
    sigma = m.d
    seeds = m.blocks
    table: dict[tuple[int, int], dict[Partition, Fraction]] = {}
    for pi in set_partitions(sigma):
        combined: dict[tuple[int, int, Partition], Fraction] = {(0, 0, ()): Fraction(1)}
        for pi_blocks, seed_ids in _components(sigma, pi, seeds):
            sizes = tuple(sorted(len(b) for b in pi_blocks))
            excess = 1 - len(pi_blocks) + sum(len(seeds[k]) - 1 for k in seed_ids)
            base = sum(m.exps[k] for k in seed_ids) + excess - 1 - sum(i - 1 for i in sizes)
            sign = -1 if excess % 2 else 1
            comp = []
            for (x, y), v in _component_series(sizes, x_max, y_max).items():
                j = x - y + base  # kappa index of the merged block
                if j < 0 and j != -1:
                    raise ArithmeticError("negative kappa index")
                if j == -1 or j > kdeg_max:
                    continue
                comp.append((x, y, j, sign * v * (s if j == 0 else 1)))
            nxt: dict[tuple[int, int, Partition], Fraction] = {}
            for (x1, y1, p1), a in combined.items():
                w1 = sum(p1)
                for x2, y2, j, b in comp:
                    x, y = x1 + x2, y1 + y2
                    if x > x_max or y > y_max or w1 + j > kdeg_max:
                        continue
                    p = p1 if j == 0 else tuple(sorted(p1 + (j,), reverse=True))
                    key = (x, y, p)
                    nxt[key] = nxt.get(key, 0) + a * b
            combined = {k: v for k, v in nxt.items() if v}
            if not combined:
                break
        for (x, y, p), v in combined.items():
            cell = table.setdefault((x, y), {})
            cell[p] = cell.get(p, 0) + v * factorial(y)
    return {k: KappaPoly(v) for k, v in table.items()}


def pushforward_with_chern(
    m: DiagMonomial, s: int, r: int, d: int, x_max: int | None = None, y_max: int | None = None, kdeg_max: int | None = None
) -> KappaPoly:
    """epsilon_*(c_r(A_d^* - B_d) * m) for m living on marks 1..sigma of d.

    ``m`` is given on exactly sigma = m.d marks (every one of them counts as
    support); the bounds only affect caching and default to the tightest ones.
    """
    sigma = m.d
    if sigma > d:
        raise ValueError("support larger than the number of marks")
    x_max = r if x_max is None else x_max
    y_max = d - sigma if y_max is None else y_max
    if kdeg_max is None:
        kdeg_max = max(0, r - d + sum(m.exps) + sigma - len(m.exps))
    table = _touched_table(m._replace(kappa=()), s, x_max, y_max, kdeg_max)
    acc = KappaPoly()
    for (x, y), poly in table.items():
        if x > r or y > d - sigma:
            continue
        rest = untouched_pushforward(s, r - x, d - sigma - y)
        if rest.is_zero():
            continue
        acc = acc + (poly * rest).scale(comb(d - sigma, y))
    if m.kappa:
        acc = acc * kappa_monomial(m.kappa, s)
    return acc


def _curve_weight(a: int, j: int) -> int:
    # sequences of a section indices with image exactly a given j-set,
    # times the sign from the a - j self-intersections
    return (-1) ** (a - j) * factorial(j) * stirling2(a, j)


@lru_cache(maxsize=None)
def factor_product_on_support(factors: tuple[tuple[int, int], ...], sigma: int) -> DiagClass:
    """The part of prod_i pi_*(s^a_i omega^b_i) whose sections cover exactly marks 1..sigma.

    Every factor needs a >= 1.  pi_*(s^a omega^b) = sum_J w(a,|J|) D_J psihat_J^(a+b-|J|).
    """
    if any(a < 1 for a, _ in factors):
        raise ValueError("factor_product_on_support needs a >= 1 in every factor")
    marks = range(1, sigma + 1)
    choices = [
        [J for j in range(1, min(a, sigma) + 1) for J in itertools.combinations(marks, j)] for a, _ in factors
    ]
    out = DiagClass(sigma)
    for combo in itertools.product(*choices):
        if len(set().union(*combo)) != sigma:
            continue
        coeff = 1
        cls = DiagClass.unit(sigma)
        for (a, b), J in zip(factors, combo):
            coeff *= _curve_weight(a, len(J))
            cls = cls.times_monomial(DiagMonomial.from_blocks(sigma, [J], [a + b - len(J)]))
        out.add_to(cls, coeff)
    return out
