from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from kapparing.partitions import partitions
from kapparing.ringan import (
    GeneratorRefused,
    MatrixQ,
    basis,
    betti_polynomial,
    determinant,
    find_generator_relation,
    format_polynomial,
    genus0_betti,
    genus0_divisor_matrix,
    independence_certificate,
    minimal_generator_relation,
    rank,
    relation_rank,
    universality_report,
)
from kapparing.sqcalc import KappaPoly, RicherBudget


def _rank_oracle(rows):
    # plain Gauss-Jordan over Fractions
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col] / m[rk][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


def _det_leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inv)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(fracs | st.just(Fraction(0)), min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_rank_matches_oracle(rows):
    assert rank(rows) == _rank_oracle(rows)


@given(matrices, st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_scaling(rows, rnd):
    r0 = rank(rows)
    rows2 = [list(r) for r in rows]
    rnd.shuffle(rows2)
    perm = list(range(len(rows2[0])))
    rnd.shuffle(perm)
    rows2 = [[r[j] for j in perm] for r in rows2]
    scales = [Fraction(rnd.randint(1, 9), rnd.randint(1, 9)) * rnd.choice((-1, 1)) for _ in rows2]
    rows2 = [[c * x for x in r] for c, r in zip(scales, rows2)]
    assert rank(rows2) == r0


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(rows):
    assert determinant(rows) == _det_leibniz(rows)


def test_rank_examples():
    assert rank([[1 if i == j else 0 for j in range(5)] for i in range(5)]) == 5
    assert MatrixQ([[Fraction(1, 576)]]).rank() == 1
    assert rank([]) == 0


def test_matrix_json():
    m = MatrixQ([[Fraction(1, 2), 0]], [(1,)], ["a", "b"])
    assert m.to_json() == {"rows": [[1]], "cols": ["a", "b"], "entries": [["1/2", "0"]]}
    with pytest.raises(ValueError):
        MatrixQ([[1, 2], [3]])


# --- relation ranks ------------------------------------------------------------


def test_genus5_degree6_rank():
    assert relation_rank(8, 6, use_richer=True) == 7
    assert relation_rank(8, 6) == 4  # the series family alone falls short


def test_rank_s4_degree3():
    # kappa^3(M^c_{0,6}) is one-dimensional, so the relations span a plane in
    # the three-dimensional space of degree-3 monomials
    assert relation_rank(4, 3, 3) == 2
    assert len(partitions(3)) - relation_rank(4, 3, 3) == betti_polynomial(6)[3]


@pytest.mark.parametrize("g", range(1, 6))
@pytest.mark.parametrize("n", [1, 2])
def test_no_relations_below_pointed_bound(g, n):
    top = g - 1 + n // 2
    s = 2 * g - 2 + n
    for d in range(1, top + 1):
        assert relation_rank(s, d, use_richer=True, n=n) == 0
    cert = independence_certificate("pointed", g, n)
    assert cert.nonsingular and cert.d == top


def test_richer_budget_is_a_knob():
    small = RicherBudget(a_values=(1,), max_factors=1)
    assert relation_rank(8, 6, use_richer=True, richer_budget=small) <= 7


# --- genus 0 ---------------------------------------------------------------------


def test_betti_examples():
    assert genus0_betti(10, 4) == 5
    assert genus0_betti(7, 4) == 1
    assert all(genus0_betti(n, 0) == 1 for n in range(3, 9))
    with pytest.raises(ValueError):
        genus0_betti(7, 5)


@pytest.mark.parametrize("n", range(3, 9))
def test_three_methods_agree(n):
    f = betti_polynomial(n, "formula")
    assert betti_polynomial(n, "pairing") == f
    assert betti_polynomial(n, "relations") == f


def test_format_polynomial():
    assert format_polynomial([1, 1, 2, 3, 3, 1]) == "1 + t + 2t^2 + 3t^3 + 3t^4 + t^5"


def test_basis_examples():
    b = basis(10, 6)
    assert b.monomials == [(6,), (5, 1), (4, 2), (3, 3)] and b.nonsingular
    assert basis(4, 1).monomials == [(1,)]
    assert basis(9, 2).monomials == partitions(2)


def test_divisor_matrix_n10():
    m = genus0_divisor_matrix(10, 6)
    assert m.col_labels == ["8+2", "7+3", "6+4", "5+5"]
    assert m.determinant() != 0


# --- generators -------------------------------------------------------------------


def test_generator_examples():
    rel = find_generator_relation(4, 3, 6)
    assert rel.d == 2 and rel.poly == KappaPoly({(3,): -9, (2, 1): 1})
    poly = minimal_generator_relation(2, 2, 4)
    assert poly.coefficient((2,)) != 0 and poly.is_homogeneous(2)


@pytest.mark.parametrize("g", range(2, 7))
def test_last_generator_refused(g):
    with pytest.raises(GeneratorRefused):
        minimal_generator_relation(2 * g - 2, g - 1, 12)


def test_generator_search_exhausts():
    with pytest.raises(RuntimeError):
        find_generator_relation(9, 5, 1)


# --- certificates and universality ------------------------------------------------


def test_certificates():
    c = independence_certificate("pointed", 2, 1, 1)
    assert c.matrix.rows == [[Fraction(1, 576)]] and c.nonsingular
    c = independence_certificate("unpointed", 5)
    assert (1, 1, 1, 1) not in c.certified and c.family == "omega"
    c = independence_certificate("unpointed", 5, 0, 2)
    assert c.family == "omega_prime" and c.certified == partitions(2) and c.nonsingular
    c = independence_certificate("pointed", 3, 2, 1)
    assert c.family == "w_tilde" and c.nonsingular
    with pytest.raises(ValueError):
        independence_certificate("closed", 2)


def test_universality_small():
    (row,) = universality_report(1, 2, [1])
    assert (row.predicted, row.upper_bound, row.lower_bound) == (1, 1, 1)
    assert row.verdict == "isomorphism verified"
    js = row.to_json()
    assert {"predicted", "upper_bound", "lower_bound", "verdict", "budget"} <= set(js)


@pytest.mark.parametrize("g,n", [(1, 1), (2, 1), (1, 3), (2, 2), (3, 1)])
def test_universality_pointed_bounds_meet(g, n):
    for row in universality_report(g, n):
        assert row.verdict == "isomorphism verified"


def test_universality_genus5_gap():
    (row,) = universality_report(5, 0, [6])
    assert row.upper_bound == 4 and row.predicted == 4
    assert row.lower_bound == 3 and row.expected == 3
    assert row.verdict.startswith("gap")


def test_worker_env(monkeypatch):
    from kapparing.ringan.analysis import THREADS_ENV, _workers

    monkeypatch.setenv(THREADS_ENV, "1")
    assert _workers() == 1
    assert betti_polynomial(6, "relations") == [1, 1, 2, 1]
    monkeypatch.setenv(THREADS_ENV, "zero")
    with pytest.raises(ValueError):
        _workers()
