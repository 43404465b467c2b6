"""Ring-level analyses: relation ranks, genus-0 Betti numbers and bases,
generator elimination, independence certificates and universality reports.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from ..exactnum import format_rational
from ..partitions import Partition, partition_count, partitions
from ..sqcalc.kappapoly import KappaPoly
from ..sqcalc.relations import (
    DEFAULT_RICHER_BUDGET,
    Relation,
    RicherBudget,
    relation_series,
    relation_set,
    richer_relations,
)
from .linalg import MatrixQ, rank

__all__ = [
    "THREADS_ENV",
    "relation_rank",
    "genus0_betti",
    "BasisResult",
    "basis",
    "GeneratorRefused",
    "find_generator_relation",
    "minimal_generator_relation",
    "Certificate",
    "independence_certificate",
    "genus0_divisor_matrix",
    "UniversalityRow",
    "universality_report",
    "KNOWN_RANKS",
    "betti_polynomial",
    "format_polynomial",
    "genus0_pairing",
    "relations_for",
    "socle_top",
]

THREADS_ENV = "KAPPARING_THREADS"

# Ranks known from outside the kappa calculus: R^6(M_5^c) has rank 3 (via
# Getzler's relation), so kappa^6(M_5^c) has dimension at most 3.
KNOWN_RANKS = {(5, 0, 6): 3}


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1


def _map(fn: Callable, items: Sequence) -> list:
    """Order-preserving map, spread over processes when allowed and worthwhile."""
    workers = min(_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --- relation ranks ---------------------------------------------------------


def relations_for(
    s: int,
    degree: int,
    d_max: Optional[int] = None,
    use_richer: bool = False,
    richer_budget: RicherBudget = DEFAULT_RICHER_BUDGET,
    n: int = 0,
) -> list[Relation]:
    """All generated valid relations of one degree (series family, plus richer on request)."""
    d_max = degree if d_max is None else d_max
    rels = list(relation_set(s, degree, d_max))
    if use_richer:
        budget = richer_budget if richer_budget.d_max is not None else _with_d_max(richer_budget, d_max)
        rels += list(richer_relations(s, degree, budget, n=n))
    return rels


def _with_d_max(b: RicherBudget, d_max: int) -> RicherBudget:
    return RicherBudget(b.a_values, b.b_max, b.max_factors, d_max)


def relation_rank(
    s: int,
    degree: int,
    d_max: Optional[int] = None,
    use_richer: bool = False,
    richer_budget: RicherBudget = DEFAULT_RICHER_BUDGET,
    n: int = 0,
) -> int:
    """Rank of the generated degree-`degree` relations in the |P(degree)|-dimensional space.

    ``d_max`` bounds the number of light marks for both families (default: the
    degree); a ``d_max`` set inside ``richer_budget`` takes precedence there.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    rels = relations_for(s, degree, d_max, use_richer, richer_budget, n)
    return rank([r.poly.vector(degree) for r in rels])


# --- genus 0 ----------------------------------------------------------------

BETTI_METHODS = ("formula", "pairing", "relations")


def _check_genus0(n: int, d: int):
    if n < 3:
        raise ValueError("need n >= 3")
    if not 0 <= d <= n - 3:
        raise ValueError(f"degree d must satisfy 0 <= d <= n-3 = {n - 3}")


def _v_columns(n: int, d: int):
    from ..hodgeeval import stratum_class

    return [stratum_class("V", q, 0, n) for q in partitions(d, n - 2 - d)]


def genus0_pairing(n: int, d: int) -> MatrixQ:
    """All P(d) kappa monomials against the V strata of M_{0,n}."""
    from ..hodgeeval import pair_against

    _check_genus0(n, d)
    rows = partitions(d)
    cols = partitions(d, n - 2 - d)
    return MatrixQ(pair_against(rows, _v_columns(n, d)), rows, cols)


def genus0_betti(n: int, d: int, method: str = "formula") -> int:
    """dim kappa^d(M^c_{0,n}) by the formula, a pairing lower bound, or a relation upper bound."""
    _check_genus0(n, d)
    if method == "formula":
        return partition_count(d, n - 2 - d)
    if method == "pairing":
        return genus0_pairing(n, d).rank()
    if method == "relations":
        if d == 0:
            return 1
        return len(partitions(d)) - relation_rank(n - 2, d, use_richer=True, n=n)
    raise ValueError(f"method must be one of {', '.join(BETTI_METHODS)}")


def _betti_job(args):
    n, d, method = args
    return genus0_betti(n, d, method)


def betti_polynomial(n: int, method: str = "formula") -> list[int]:
    """Coefficients of B_n(t) = sum_d dim kappa^d(M^c_{0,n}) t^d."""
    if n < 3:
        raise ValueError("need n >= 3")
    if method not in BETTI_METHODS:
        raise ValueError(f"method must be one of {', '.join(BETTI_METHODS)}")
    jobs = [(n, d, method) for d in range(n - 2)]
    if method == "relations":
        # the largest degrees dominate; start them first
        order = sorted(range(len(jobs)), key=lambda i: -jobs[i][1])
        vals = _map(_betti_job, [jobs[i] for i in order])
        out = [0] * len(jobs)
        for i, v in zip(order, vals):
            out[i] = v
        return out
    return [_betti_job(j) for j in jobs]


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    """Render e.g. 1 + t + 2t^2."""
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


@dataclass
class BasisResult:
    n: int
    d: int
    monomials: list[Partition]
    certificate: MatrixQ
    nonsingular: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "basis": [list(p) for p in self.monomials],
            "certificate": self.certificate.to_json(),
            "nonsingular": self.nonsingular,
        }


def basis(n: int, d: int) -> BasisResult:
    """The basis {kappa_p : p in P(d, n-2-d)} of kappa^d(M^c_{0,n}), certified by its V-pairing."""
    from ..hodgeeval import pairing_matrix

    _check_genus0(n, d)
    m = pairing_matrix("genus0_V", 0, n, d)
    return BasisResult(n, d, list(m.row_labels), m, m.determinant() != 0)


def genus0_divisor_matrix(n: int, d: int) -> MatrixQ:
    """kappa_p, p in P(d, 2), against the boundary divisors of M_{0,n} with socle split (p1, p2).

    The divisor with k + (n - k) markings has vertex socle dimensions k - 2 and n - k - 2.
    """
    from ..hodgeeval import DualGraph, stratum_pairing

    if d != n - 4:
        raise ValueError("divisors pair with kappa^{n-4}")
    rows = partitions(d, 2)
    cols, graphs = [], []
    for q in rows:
        k = q[0] + 2
        graphs.append(
            DualGraph(((0, tuple(range(1, k + 1))), (0, tuple(range(k + 1, n + 1)))), ((0, 1),))
        )
        cols.append(f"{k}+{n - k}")
    entries = [[stratum_pairing(p, gr) for gr in graphs] for p in rows]
    return MatrixQ(entries, rows, cols)


# --- generators -------------------------------------------------------------


class GeneratorRefused(ValueError):
    """kappa_l cannot be eliminated this way (s - 2l >= 0)."""


def find_generator_relation(s: int, l: int, d_cap: int = 12) -> Relation:
    """The first valid series relation (r = d + l > s) with a nonzero kappa_l coefficient."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if s - 2 * l >= 0:
        raise GeneratorRefused(
            f"s - 2l = {s - 2 * l} >= 0: kappa_{l} is not eliminated by a singleton relation"
        )
    for d in range(max(1, s - l + 1), d_cap + 1):
        poly = relation_series(s, d + l, d)
        if poly.coefficient((l,)):
            return Relation(s, d + l, d, poly)
    raise RuntimeError(f"no relation with nonzero kappa_{l} coefficient for d <= {d_cap}")


def minimal_generator_relation(s: int, l: int, d_cap: int = 12) -> KappaPoly:
    """A relation expressing kappa_l through lower kappa classes (needs s - 2l < 0)."""
    return find_generator_relation(s, l, d_cap).poly


# --- independence certificates ---------------------------------------------


@dataclass
class Certificate:
    space: str
    g: int
    n: int
    d: int
    family: str
    matrix: MatrixQ
    nonsingular: bool
    certified: list[Partition]
    note: str = ""

    @property
    def verdict(self) -> str:
        return "independent" if self.nonsingular else "not certified"

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "g": self.g,
            "n": self.n,
            "d": self.d,
            "family": self.family,
            "matrix": self.matrix.to_json(),
            "determinant": format_rational(self.matrix.determinant()),
            "nonsingular": self.nonsingular,
            "certified": [list(p) for p in self.certified],
            "verdict": self.verdict,
            "note": self.note,
        }


def independence_certificate(space: str, g: int, n: int = 0, d: Optional[int] = None) -> Certificate:
    """Pairing matrix certifying independence of kappa monomials.

    ``pointed``: M^c_{g,n} with n >= 1.  At the top degree g-1+floor(n/2) the S/T
    strata (with genus traded for markings when n >= 3) are used; in other
    degrees the W strata over P(d, 2g-2+n-d).
    ``unpointed``: M^c_g.  Degree g-1 uses U strata over P*(g-1); degrees
    <= g-2 use U' strata in degree g-2, which also covers the lower degrees
    because kappa_q -> kappa_q * kappa_1^(g-2-d) is injective on monomials.
    """
    from ..hodgeeval import pairing_matrix

    if space == "pointed":
        if n < 1:
            raise ValueError("pointed spaces need n >= 1")
        top = g - 1 + n // 2
        d = top if d is None else d
        if d == top:
            family = "mu" if n % 2 else "nu"
            m = pairing_matrix(family, g, n)
            note = ""
        else:
            family = "w" if n % 2 else "w_tilde"
            m = pairing_matrix(family, g, n, d)
            note = f"monomials P({d}, {2 * g - 2 + n - d})"
        ok = m.determinant() != 0
        return Certificate(space, g, n, d, family, m, ok, list(m.row_labels), note)
    if space == "unpointed":
        if n:
            raise ValueError("unpointed spaces have n = 0")
        if g < 2:
            raise ValueError("unpointed spaces need g >= 2")
        d = g - 1 if d is None else d
        if d == g - 1:
            m = pairing_matrix("omega", g)
            ok = m.determinant() != 0
            return Certificate(
                space, g, 0, d, "omega", m, ok, list(m.row_labels),
                "P*(g-1): the longest partition (1,...,1) is excluded",
            )
        if 0 <= d <= g - 2:
            m = pairing_matrix("omega_prime", g)
            ok = m.determinant() != 0
            note = "" if d == g - 2 else f"degree {g - 2} certificate, lowered by multiplying with kappa_1^{g - 2 - d}"
            return Certificate(space, g, 0, d, "omega_prime", m, ok, partitions(d), note)
        raise ValueError(f"unpointed certificates cover degrees 0..{g - 1}")
    raise ValueError("space must be 'pointed' or 'unpointed'")


# --- universality -----------------------------------------------------------


@dataclass
class UniversalityRow:
    g: int
    n: int
    d: int
    predicted: int
    upper_bound: int
    lower_bound: int
    budget: dict
    expected: Optional[int] = None

    @property
    def verdict(self) -> str:
        if self.lower_bound == self.upper_bound == self.predicted:
            return "isomorphism verified"
        if self.lower_bound == self.upper_bound:
            return f"dimension {self.lower_bound} determined, differs from predicted {self.predicted}"
        msg = f"gap: lower bound {self.lower_bound}, upper bound {self.upper_bound}"
        if self.expected is not None and self.expected < self.upper_bound:
            msg += (
                f"; the known rank {self.expected} means at least "
                f"{self.upper_bound - self.expected} relation(s) are not generated"
            )
        return msg

    def to_json(self) -> dict:
        out = {
            "g": self.g,
            "n": self.n,
            "d": self.d,
            "predicted": self.predicted,
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
            "verdict": self.verdict,
            "budget": self.budget,
        }
        if self.expected is not None:
            out["expected"] = self.expected
        return out


def _lower_bound_pointed(g: int, n: int, d: int) -> int:
    from ..hodgeeval import family_index_set, pair_against, stratum_class

    fam = "W" if n % 2 else "W_tilde"
    cols = [stratum_class(fam, q, g, n) for q in family_index_set(fam, g, n, d)]
    return rank(pair_against(partitions(d), cols))


def _decorations(k: int, total: int) -> Iterable[tuple[Partition, ...]]:
    """Ways to place kappa monomials of total degree `total` on k vertices."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for here in range(total + 1):
        for p in partitions(here):
            for rest in _decorations(k - 1, total - here):
                yield (p,) + rest


def _lower_bound_unpointed(g: int, d: int) -> int:
    """Rank of kappa^d against kappa-decorated stable trees of complementary degree.

    Stops as soon as the rank reaches |P(d)|.
    """
    from ..hodgeeval import socle_dimension, stable_trees, stratum_pairing

    rows = partitions(d)
    c = socle_dimension(g, 0) - d
    if c < 0:
        return 0
    cols: list[list[Fraction]] = []
    best = 0
    for e in range(c + 1):
        for tree in stable_trees(g, e):
            k = len(tree.vertices)
            for deco in _decorations(k, c - e):
                # a decoration only pairs if every vertex can still be filled
                if any(sum(p) > dim for p, dim in zip(deco, tree.socle_dims())):
                    continue
                col = [stratum_pairing(p, tree, None, dict(enumerate(deco))) for p in rows]
                if not any(col):
                    continue
                cols.append(col)
                r = rank([list(x) for x in zip(*cols)])
                if r > best:
                    best = r
                else:
                    cols.pop()
                if best == len(rows):
                    return best
    return best


def _universality_row(args) -> UniversalityRow:
    g, n, d, budget = args
    s = 2 * g - 2 + n
    predicted = partition_count(d, s - d) if s - d >= 0 else 0
    if d == 0:
        upper = 1
    else:
        upper = len(partitions(d)) - relation_rank(s, d, use_richer=True, richer_budget=budget, n=n)
    lower = _lower_bound_pointed(g, n, d) if n > 0 else _lower_bound_unpointed(g, d)
    bjson = budget.to_json()
    bjson["d_max"] = budget.d_max if budget.d_max is not None else d
    bjson["b_max"] = budget.b_max if budget.b_max is not None else d
    return UniversalityRow(g, n, d, predicted, upper, lower, bjson, KNOWN_RANKS.get((g, n, d)))


def universality_report(
    g: int, n: int, d_range: Optional[Iterable[int]] = None, budget: RicherBudget = DEFAULT_RICHER_BUDGET
) -> list[UniversalityRow]:
    """Predicted dimension |P(d, s-d)| against relation upper and pairing lower bounds."""
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"M_{{{g},{n}}} is not stable")
    top = socle_top(g, n)
    ds = list(range(0, top + 1)) if d_range is None else list(d_range)
    for d in ds:
        if not 0 <= d <= top:
            raise ValueError(f"degree {d} outside 0..{top}")
    return _map(_universality_row, [(g, n, d, budget) for d in ds])


def socle_top(g: int, n: int) -> int:
    return n - 3 if g == 0 else 2 * g - 3 + n
