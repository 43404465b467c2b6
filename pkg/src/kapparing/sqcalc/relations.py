"""Kappa relations on M^c_{g,n}, as functions of s = 2g - 2 + n only.

Two routes produce the same relations:

* direct: expand c_r(A_d^* - B_d) in normal form and push forward to kappa
  classes (cost grows like d^r, so it is budgeted);
* series: read the t^r z^d coefficient of

      R(t, z) = exp( sum_{d>=1} sum_{r>=d} (-1)^(d-1) (C_r^d / d!) kappa_{r-d} t^r z^d ),

  which equals the direct push-forward divided by d!.

A coefficient is a valid relation (it vanishes in the kappa ring) when r > s.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

from ..powerseries import connected_coeff
from .chern import chern_graded
from .diagclass import DiagClass, DiagMonomial, diag_multiply, pushforward_to_kappa
from .expformula import factor_product_on_support, pushforward_with_chern, untouched_pushforward
from .kappapoly import KappaPoly, kappa_monomial

__all__ = [
    "DirectBudget",
    "RicherBudget",
    "Relation",
    "RelationSet",
    "relation_direct",
    "relation_series",
    "relation_set",
    "pushforward_curve_class",
    "richer_relation",
    "richer_relations",
    "BudgetExceeded",
]


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DirectBudget:
    d_max: int = 5
    r_max: int = 14


@dataclass(frozen=True)
class RicherBudget:
    """Search space for the curve-class factors pi_*(s^a omega^b)."""

    a_values: tuple[int, ...] = (1, 2, 3)
    b_max: Optional[int] = None  # None: up to the target degree
    max_factors: int = 2
    d_max: Optional[int] = None  # None: up to the target degree

    def to_json(self) -> dict:
        return {
            "a_values": list(self.a_values),
            "b_max": self.b_max,
            "max_factors": self.max_factors,
            "d_max": self.d_max,
        }


DEFAULT_DIRECT_BUDGET = DirectBudget()
DEFAULT_RICHER_BUDGET = RicherBudget()


@dataclass(frozen=True)
class Relation:
    s: int
    r: int
    d: int
    poly: KappaPoly
    factors: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return self.r - self.d + sum(a + b - 1 for a, b in self.factors)

    @property
    def valid(self) -> bool:
        return self.r > self.s

    def to_json(self) -> dict:
        out = {"r": self.r, "d": self.d, "terms": self.poly.to_json()}
        if self.factors:
            out["factors"] = [list(f) for f in self.factors]
        return out


@dataclass
class RelationSet:
    s: int
    degree: int
    relations: list[Relation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def polys(self) -> list[KappaPoly]:
        return [rel.poly for rel in self.relations]

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "degree": self.degree,
            "relations": [rel.to_json() for rel in self.relations],
        }


# --- direct route ---------------------------------------------------------


def relation_direct(s: int, r: int, d: int, budget: DirectBudget = DEFAULT_DIRECT_BUDGET) -> KappaPoly:
    """epsilon_*( c_r(A_d^* - B_d) ) with kappa_0 = s."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    if d > budget.d_max or r > budget.r_max:
        raise BudgetExceeded(
            f"direct expansion at (r={r}, d={d}) exceeds budget (r<={budget.r_max}, d<={budget.d_max})"
        )
    return pushforward_to_kappa(chern_graded(d, r), s)


# --- series route ---------------------------------------------------------


@lru_cache(maxsize=None)
def _exponent_term(s: int, r: int, d: int) -> KappaPoly:
    if r < d:
        return KappaPoly()
    _, c_hat = connected_coeff(r, d)
    return kappa_monomial([r - d], s, (-1) ** (d - 1) * c_hat)


@lru_cache(maxsize=None)
def _series_term(s: int, r: int, d: int) -> KappaPoly:
    # z d/dz R = R * z d/dz(exponent), solved degree by degree in z
    if d == 0:
        return KappaPoly.one() if r == 0 else KappaPoly()
    acc = KappaPoly()
    for d1 in range(1, d + 1):
        for r1 in range(d1, r + 1):
            g = _exponent_term(s, r1, d1)
            if g.is_zero():
                continue
            h = _series_term(s, r - r1, d - d1)
            if not h.is_zero():
                acc = acc + (g * h).scale(d1)
    return acc.scale(Fraction(1, d))


def relation_series(s: int, r: int, d: int) -> KappaPoly:
    """[t^r z^d] R(t, z) with kappa_0 = s; equals relation_direct(s, r, d) / d!."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    return _series_term(s, r, d)


def relation_set(s: int, degree: int, d_max: int) -> RelationSet:
    """All valid series relations of the given degree with 1 <= d <= d_max."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    out = RelationSet(s, degree)
    for d in range(1, d_max + 1):
        r = degree + d
        if r > s:
            out.relations.append(Relation(s, r, d, relation_series(s, r, d)))
    return out


# --- richer relations -----------------------------------------------------


def pushforward_curve_class(a: int, b: int, d: int, n: int) -> DiagClass:
    """pi_*(s^a omega^b) from the universal curve over M^c_{g,n|d}.

    s is the class of the union of the d sections.  Products of sections
    reduce by  sigma_j sigma_k = D_jk sigma_k (j < k)  and
    sigma_j^2 = -psihat_j sigma_j; then omega sigma_j = psihat_j sigma_j and
    pi_*(base * sigma_j) = base.  Without any section, pi_*(omega^b) is a
    kappa class of the base, which is kappa-pure only when n = 0.
    """
    if d < 1 or a < 0 or b < 0:
        raise ValueError("need d >= 1 and a, b >= 0")
    if a == 0:
        if b == 0:
            return DiagClass(d)
        if n > 0:
            raise ValueError(
                "pi_*(omega^b) with n > 0 differs from a pure kappa class by "
                "standard psi corrections; only a >= 1 or n = 0 is supported"
            )
        unit = DiagMonomial.unit(d)
        return DiagClass(d, {unit._replace(kappa=(b - 1,)): Fraction(1)})

    # state: (base monomial, index of surviving section) -> coefficient
    unit = DiagMonomial.unit(d)
    state: dict[tuple[DiagMonomial, int], Fraction] = {(unit, j): Fraction(1) for j in range(1, d + 1)}
    for _ in range(a - 1):
        nxt: dict[tuple[DiagMonomial, int], Fraction] = {}
        for (base, j), c in state.items():
            for k in range(1, d + 1):
                if k == j:
                    key, coeff = (base.times_psi(j), j), -c
                else:
                    lo, hi = min(j, k), max(j, k)
                    sign, m2 = base.times_diagonal(lo, hi)
                    key, coeff = (m2, hi), sign * c
                v = nxt.get(key, 0) + coeff
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)
        state = nxt
    out = DiagClass(d)
    for (base, j), c in state.items():
        m = base
        for _ in range(b):
            m = m.times_psi(j)
        out.add_to(DiagClass(d, {m: c}))
    return out


def _check_sn(s: int, n: int):
    if n < 0 or (s - n) % 2 or s - n < -2:
        raise ValueError(f"s={s}, n={n} is not 2g-2+n for any genus g >= 0")


def _richer_direct(s: int, r: int, factors: Sequence[tuple[int, int]], d: int, n: int) -> KappaPoly:
    """Reference route: expand c_r and multiply in normal form (small d only)."""
    prod = None
    for a, b in factors:
        cls = pushforward_curve_class(a, b, d, n)
        prod = cls if prod is None else diag_multiply(prod, cls)
    chern = chern_graded(d, r)
    if prod is None:
        return pushforward_to_kappa(chern, s)
    return pushforward_to_kappa(diag_multiply(chern, prod), s)


def _richer_at_r(
    s: int, r: int, factors: Sequence[tuple[int, int]], d: int, n: int, x_max=None, y_max=None
) -> KappaPoly:
    scalar = KappaPoly.one()
    sectional = []
    for a, b in factors:
        if a == 0:
            if b == 0:
                return KappaPoly()
            if n > 0:
                pushforward_curve_class(a, b, d, n)  # raises
            scalar = scalar * kappa_monomial([b - 1], s)
        else:
            sectional.append((a, b))
    target = r - d + sum(a + b - 1 for a, b in factors)
    if not sectional:
        return untouched_pushforward(s, r, d) * scalar
    sectional = tuple(sorted(sectional))
    x_max = r if x_max is None else x_max
    y_max = d if y_max is None else y_max
    acc = KappaPoly()
    for sigma in range(1, min(d, sum(a for a, _ in sectional)) + 1):
        for m, c in factor_product_on_support(sectional, sigma).terms.items():
            part = pushforward_with_chern(m, s, r, d, x_max, y_max, max(target, 0))
            acc = acc + part.scale(c * comb(d, sigma))
    out = acc * scalar
    if not out.is_homogeneous(target):
        raise ArithmeticError(f"richer relation at (r={r}, d={d}) is not homogeneous of degree {target}")
    return out


def richer_relation(s: int, n: int, k: int, factors: Sequence[tuple[int, int]], d: int) -> KappaPoly:
    """epsilon_*( prod_i pi_*(s^a_i omega^b_i) * c_{2g-2+k}(A_d^* - B_d) ), for k > n."""
    _check_sn(s, n)
    if k <= n:
        raise ValueError("need k > n")
    r = s - n + k
    return _richer_at_r(s, r, tuple(factors), d, n)


def _factor_multisets(total: int, budget: RicherBudget, b_cap: int) -> Iterable[tuple[tuple[int, int], ...]]:
    """Multisets of factors (a, b) whose degrees a + b - 1 sum to `total`."""
    # degree-0 factors (a, b) = (1, 0) only rescale by d and are skipped
    pool = sorted((a, b) for a in budget.a_values for b in range(b_cap + 1) if a + b - 1 >= 1)
    for m in range(0, budget.max_factors + 1):
        for combo in itertools.combinations_with_replacement(pool, m):
            if sum(a + b - 1 for a, b in combo) == total:
                yield combo


def richer_relations(s: int, degree: int, budget: RicherBudget = DEFAULT_RICHER_BUDGET, n: int = 0) -> RelationSet:
    """All valid richer relations of the given degree within the budget.

    The factor-free members coincide with the direct relations.
    """
    _check_sn(s, n)
    d_max = budget.d_max if budget.d_max is not None else degree
    b_cap = budget.b_max if budget.b_max is not None else degree
    out = RelationSet(s, degree)
    for d in range(1, d_max + 1):
        for r in range(s + 1, degree + d + 1):
            extra = degree + d - r
            for combo in _factor_multisets(extra, budget, b_cap):
                if any(a == 0 for a, _ in combo) and n > 0:
                    continue
                poly = _richer_at_r(s, r, combo, d, n, degree + d_max, d_max)
                out.relations.append(Relation(s, r, d, poly, combo))
    return out
