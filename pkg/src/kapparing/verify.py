"""Fixture checks replayed by `kapparing verify` and the acceptance tests.

Each check returns (ok, detail).  Expected values are hard-coded here and
never derived from the engine under test.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .exactnum import odd_double_factorial
from .partitions import partitions
from .powerseries import alpha, beta, chain_polynomial
from .sqcalc import (
    KappaPoly,
    relation_direct,
    relation_series,
    relation_set,
    richer_relations,
    substitution_count,
)

__all__ = ["Check", "CHECKS", "BETTI_TABLE", "run_suite"]

# Betti polynomials of kappa^*(M^c_{0,n}), lowest degree first
BETTI_TABLE = {
    3: [1],
    4: [1, 1],
    5: [1, 1, 1],
    6: [1, 1, 2, 1],
    7: [1, 1, 2, 2, 1],
    8: [1, 1, 2, 3, 3, 1],
    9: [1, 1, 2, 3, 4, 3, 1],
    10: [1, 1, 2, 3, 5, 5, 4, 1],
    11: [1, 1, 2, 3, 5, 6, 7, 4, 1],
    12: [1, 1, 2, 3, 5, 7, 9, 8, 5, 1],
}

# p_r(z) with F(t, z) = e^z sum_r t^r p_r(z), coefficients by increasing power
CHAIN_POLYNOMIALS = {
    0: [1],
    1: [0, 1],
    2: [0, 1, 1],
    3: [0, 1, 3, 1],
    4: [0, 1, 7, 6, 1],
}


@dataclass(frozen=True)
class Check:
    number: int
    title: str
    run: Callable[[bool], tuple[bool, str]]
    slow_part: bool = False


def _genus3_relation(slow: bool):
    got = relation_direct(4, 5, 2)
    want = KappaPoly({(3,): Fraction(-18), (2, 1): Fraction(2)})
    return got == want, got.to_text()


def _series_fixtures(slow: bool):
    a = [alpha(l) for l in range(1, 5)]
    b = [beta(l) for l in range(1, 5)]
    ok = a == [1, Fraction(5, 2), Fraction(37, 3), Fraction(353, 4)] and b == [-1, -2, -10, -74]
    bad_id = [l for l in range(1, 31) if beta(l + 1) != -2 * l * alpha(l)]
    bad_bound = [l for l in range(1, 51) if not (beta(l) < 0 and -beta(l) <= odd_double_factorial(l))]
    ok = ok and not bad_id and not bad_bound
    return ok, f"alpha_1..4={[str(x) for x in a]} beta_1..4={[str(x) for x in b]} identity failures={bad_id} bound failures={bad_bound}"


def _chain_polynomials(slow: bool):
    bad = [r for r, want in CHAIN_POLYNOMIALS.items() if list(chain_polynomial(r)) != want]
    return not bad, f"mismatched r: {bad}" if bad else "p_0..p_4 match"


def _oracle_equivalence(slow: bool):
    cells = bad = 0
    for s in range(1, 9):
        for d in range(1, 5):
            for r in range(0, 13):
                cells += 1
                if relation_series(s, r, d).scale(factorial(d)) != relation_direct(s, r, d):
                    bad += 1
    return bad == 0, f"{cells} cells, {bad} mismatches"


def _term_count(slow: bool):
    bad = [(d, r) for d in range(1, 6) for r in range(0, 11) if substitution_count(d, r) != d**r]
    return not bad, f"mismatches: {bad}" if bad else "d <= 5, r <= 10 all equal d^r"


def _betti_table(slow: bool):
    from .ringan import betti_polynomial

    top = 12 if slow else 10
    bad = []
    for n in range(3, top + 1):
        for method in ("formula", "pairing", "relations"):
            if betti_polynomial(n, method) != BETTI_TABLE[n]:
                bad.append((n, method))
    return not bad, f"n = 3..{top}, mismatches: {bad}"


def _genus5_count(slow: bool):
    from .ringan import genus0_divisor_matrix, relation_rank

    r = relation_rank(8, 6, use_richer=True)
    det = genus0_divisor_matrix(10, 6).determinant()
    ok = r == 7 and len(partitions(6)) == 11 and det != 0
    return ok, f"rank {r} of 11, divisor matrix det {det}"


def _hodge_fixtures(slow: bool):
    from .hodgeeval import SocleIntegrand, lambda_g_base, socle_integral

    ok = lambda_g_base(1) == Fraction(1, 24) and lambda_g_base(2) == Fraction(7, 5760)
    kp = [socle_integral(SocleIntegrand(1, p + 1, (0,) * (p + 1), (p,))) for p in range(7)]
    ok = ok and all(v == Fraction(1, 24) for v in kp)
    bad = []
    for h in range(1, 4):
        for k in range(0, 2 * h - 1):
            lhs = socle_integral(SocleIntegrand(h, 1, (k,), (2 * h - 2 - k,)))
            if lhs != comb(2 * h - 1, k) * lambda_g_base(h):
                bad.append((h, k))
    return ok and not bad, f"kappa_p lambda_1 values {sorted(set(map(str, kp)))}, identity failures {bad}"


def _pairing_matrices(slow: bool):
    from .hodgeeval import is_length_triangular, pairing_matrix

    cases = [("mu", g, None, None) for g in range(1, 7)]
    cases += [("nu", g, None, None) for g in range(1, 7)]
    cases += [("omega", g, None, None) for g in range(2, 7)]
    cases += [("omega_prime", g, None, None) for g in range(2, 7)]
    cases += [("genus0_V", 0, n, d) for n in range(3, 11) for d in range(0, n - 2)]
    bad = []
    for fam, g, n, d in cases:
        m = pairing_matrix(fam, g, n, d)
        if not (is_length_triangular(m) and all(m.diagonal()) and m.determinant() != 0):
            bad.append((fam, g, n, d))
    return not bad, f"{len(cases)} matrices, failures {bad}"


def _vanishing(slow: bool):
    bad = []
    for s in range(1, 11):
        for m in range(1, s + 8):
            rels = relation_set(s, m, 1).relations
            if m >= s:
                if len(rels) != 1 or set(rels[0].poly.terms) != {(m,)}:
                    bad.append((s, m))
            elif rels:
                bad.append((s, m))
    return not bad, f"failures {bad}" if bad else "d = 1 gives exactly kappa_m = 0 for m >= s, s <= 10"


def _generators(slow: bool):
    from .ringan import find_generator_relation

    bad = []
    count = 0
    for s in range(1, 11):
        for l in range(1, 9):
            if s - 2 * l >= 0:
                continue
            count += 1
            try:
                rel = find_generator_relation(s, l, 12)
            except RuntimeError:
                bad.append((s, l))
                continue
            if not (rel.valid and rel.poly.coefficient((l,)) and rel.poly.is_homogeneous(l)):
                bad.append((s, l))
    return not bad, f"{count} pairs, failures {bad}"


def _universality(slow: bool):
    from .ringan import universality_report

    bad = []
    for g, n in [(1, 1), (2, 1), (1, 2), (2, 3), (3, 2)]:
        s, n0 = 2 * g - 2 + n, 2 * g + n
        s0 = -2 + n0
        for degree in range(1, 5):
            a = relation_set(s, degree, degree).to_json(), richer_relations(s, degree, n=n).to_json()
            b = relation_set(s0, degree, degree).to_json(), richer_relations(s0, degree, n=n0).to_json()
            if a != b:
                bad.append((g, n, degree))
    row = universality_report(5, 0, [6])[0]
    ok = not bad and row.upper_bound == 4 and row.verdict.startswith("gap") and row.expected == 3
    return ok, f"identity failures {bad}; (5,0,6): upper {row.upper_bound}, lower {row.lower_bound}, {row.verdict}"


CHECKS = [
    Check(1, "genus-3 relation", _genus3_relation),
    Check(2, "series fixtures", _series_fixtures),
    Check(3, "chain polynomials", _chain_polynomials),
    Check(4, "series vs direct oracle", _oracle_equivalence),
    Check(5, "term count d^r", _term_count),
    Check(6, "genus-0 Betti table", _betti_table, slow_part=True),
    Check(7, "genus-5 degree-6 count", _genus5_count),
    Check(8, "Hodge fixtures", _hodge_fixtures),
    Check(9, "pairing matrices", _pairing_matrices),
    Check(10, "d = 1 vanishing", _vanishing),
    Check(11, "generator elimination", _generators),
    Check(12, "universality", _universality),
]


def run_suite(slow: bool = False, only=None, report: Callable[[str], None] | None = None):
    """Run the checks; returns a list of (check, ok, detail, seconds)."""
    results = []
    for chk in CHECKS:
        if only and chk.number not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = chk.run(slow)
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        results.append((chk, ok, detail, dt))
        if report:
            report(f"[{'PASS' if ok else 'FAIL'}] {chk.number:2d} {chk.title}: {detail} ({dt:.1f}s)")
    return results
