from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from kapparing.partitions import set_partitions
from kapparing.powerseries import connected_coeff
from kapparing.sqcalc import (
    BudgetExceeded,
    DiagClass,
    DiagMonomial,
    DirectBudget,
    KappaPoly,
    RicherBudget,
    block_weight,
    chern_graded,
    connected_count_direct,
    diag_multiply,
    kappa_monomial,
    pushforward_curve_class,
    pushforward_to_kappa,
    relation_direct,
    relation_series,
    relation_set,
    richer_relation,
    richer_relations,
    substitution_count,
)
from kapparing.sqcalc.relations import _richer_at_r, _richer_direct

K = lambda *terms: KappaPoly({p: Fraction(c) for p, c in terms})  # noqa: E731

polys = st.dictionaries(
    st.lists(st.integers(1, 4), max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True))),
    st.fractions(max_denominator=5),
    max_size=4,
).map(KappaPoly)


# --- KappaPoly ---------------------------------------------------------------


@given(polys, polys, polys)
def test_kappa_poly_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


def test_kappa_monomial_substitutes_low_indices():
    assert kappa_monomial([0, 2], 5) == K(((2,), 5))
    assert kappa_monomial([-1, 3], 5).is_zero()
    assert kappa_monomial([], 5) == KappaPoly.one()


def test_text_rendering():
    assert K(((3,), -18), ((2, 1), 2)).to_text() == "-18*k3 + 2*k1*k2"
    assert KappaPoly().to_text() == "0"


def test_rejects_non_partitions():
    with pytest.raises(ValueError):
        KappaPoly({(1, 2): 1})
    with pytest.raises(ValueError):
        KappaPoly({(0,): 1})


# --- Chern expansion ----------------------------------------------------------


def _all_monomials(d, r):
    # every (set partition, exponents) of degree sum(e) + d - #blocks = r
    for sp in set_partitions(d):
        room = r - (d - len(sp))
        if room < 0:
            continue
        for exps in product(range(room + 1), repeat=len(sp)):
            if sum(exps) == room:
                yield DiagMonomial.from_blocks(d, sp, exps), [len(b) for b in sp]


@pytest.mark.parametrize("d", range(1, 5))
@pytest.mark.parametrize("r", range(0, 8))
def test_chern_class_factors_over_blocks(d, r):
    expect = {}
    for m, sizes in _all_monomials(d, r):
        w = prod(block_weight(k, e) for k, e in zip(sizes, m.exps))
        if w:
            expect[m] = Fraction(w)
    assert chern_graded(d, r).terms == expect


def test_block_weight_values():
    # a lone mark: coefficient of psihat^e is C_e^1 = 1; a pair with e = 0: -C_1^2 = 0
    assert [block_weight(1, e) for e in range(5)] == [1] * 5
    assert block_weight(2, 0) == 0
    assert block_weight(2, 1) == -connected_coeff(2, 2)[0]


@pytest.mark.parametrize("d", range(1, 6))
def test_term_count_and_connected_part(d):
    for r in range(0, 9):
        assert substitution_count(d, r) == d**r
        assert connected_count_direct(r, d) == connected_coeff(r, d)[0]


def test_direct_budget():
    with pytest.raises(BudgetExceeded):
        relation_direct(4, 15, 2)
    with pytest.raises(BudgetExceeded):
        relation_direct(4, 5, 3, DirectBudget(d_max=2, r_max=14))


# --- relations ---------------------------------------------------------------


def test_genus3_worked_relation():
    assert relation_direct(4, 5, 2) == K(((3,), -18), ((2, 1), 2))
    assert relation_series(4, 5, 2) == K(((3,), -9), ((2, 1), 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 14), st.integers(0, 10), st.integers(1, 4))
def test_series_equals_direct_over_factorial(s, r, d):
    assert relation_series(s, r, d).scale(factorial(d)) == relation_direct(s, r, d)


@given(st.integers(-1, 12), st.integers(0, 14), st.integers(1, 8))
def test_series_relations_homogeneous(s, r, d):
    assert relation_series(s, r, d).is_homogeneous(r - d)


def test_relation_set_validity_and_json():
    rs = relation_set(4, 3, 3)
    assert [(rel.r, rel.d) for rel in rs] == [(5, 2), (6, 3)]
    assert all(rel.valid for rel in rs)
    js = rs.to_json()
    assert js["s"] == 4 and js["degree"] == 3
    assert js["relations"][0]["terms"] == [{"partition": [3], "coeff": "-9"}, {"partition": [2, 1], "coeff": "1"}]


@pytest.mark.parametrize("s", range(1, 11))
def test_single_mark_relations_are_kappa_vanishing(s):
    for m in range(1, s + 6):
        rels = relation_set(s, m, 1).relations
        if m < s:
            assert rels == []
        else:
            (rel,) = rels
            assert set(rel.poly.terms) == {(m,)}


# --- curve classes and richer relations -------------------------------------


@pytest.mark.parametrize("d", range(1, 5))
def test_section_square_pushforward(d):
    # s^2 = sum_j sigma_j^2 + 2 sum_{j<k} sigma_j sigma_k
    expect = DiagClass(d)
    for j in range(1, d + 1):
        expect.add_to(DiagClass.psi(d, j), -1)
        for k in range(j + 1, d + 1):
            expect.add_to(DiagClass.diagonal(d, j, k), 2)
    assert pushforward_curve_class(2, 0, d, 0) == expect
    assert pushforward_curve_class(1, 0, d, 0) == DiagClass.unit(d).scale(d)


@pytest.mark.parametrize("d", range(1, 4))
@pytest.mark.parametrize("b", range(0, 4))
def test_single_section_pushforward(d, b):
    expect = DiagClass(d)
    for j in range(1, d + 1):
        mono = DiagMonomial.unit(d)
        for _ in range(b):
            mono = mono.times_psi(j)
        expect.add_to(DiagClass(d, {mono: Fraction(1)}))
    assert pushforward_curve_class(1, b, d, 2) == expect
    assert pushforward_curve_class(0, 0, d, 2) == DiagClass(d)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 6), st.permutations(range(1, 5)))
def test_chern_expansion_symmetric_in_marks(d, r, perm):
    perm = [x for x in perm if x <= d]
    mapping = dict(zip(range(1, d + 1), perm))
    c = chern_graded(d, r)
    relabeled = {m.relabeled(mapping): v for m, v in c.terms.items()}
    assert relabeled == c.terms


def test_omega_only_factor_needs_n_zero():
    with pytest.raises(ValueError):
        pushforward_curve_class(0, 2, 2, 1)
    # pi_*(omega^2) = kappa_1, pulled back to the light-mark space
    unit = DiagMonomial.unit(2)
    assert pushforward_curve_class(0, 2, 2, 0) == DiagClass(2, {unit._replace(kappa=(1,)): Fraction(1)})
    # without psihat on the light marks the push-forward drops for dimension reasons
    assert pushforward_to_kappa(pushforward_curve_class(0, 2, 2, 0), 6).is_zero()


factors = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2)), max_size=2).map(
    lambda fs: tuple(sorted(f for f in fs if f != (0, 0)))
)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(0, 6), factors, st.integers(1, 3))
def test_fast_richer_route_matches_expansion(s, r, fs, d):
    assert _richer_at_r(s, r, fs, d, 0) == _richer_direct(s, r, fs, d, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 6), factors.map(lambda fs: tuple(f for f in fs if f[0] >= 1)), st.integers(1, 3))
def test_fast_richer_route_with_markings(n, r, fs, d):
    s = n  # genus 1
    assert _richer_at_r(s, r, fs, d, n) == _richer_direct(s, r, fs, d, n)


def test_factor_free_richer_relation_is_the_series_one():
    for d in range(1, 4):
        assert richer_relation(4, 0, 2, (), d) == relation_direct(4, 6, d)


def test_richer_relation_needs_k_above_n():
    with pytest.raises(ValueError):
        richer_relation(3, 1, 1, ((1, 1),), 2)


def test_richer_relations_homogeneous_and_recorded():
    rs = richer_relations(8, 6, RicherBudget(d_max=3))
    assert len(rs) > 0
    for rel in rs:
        assert rel.valid and rel.degree == 6
        assert rel.poly.is_homogeneous(6)


def test_diag_multiply_commutes():
    a = pushforward_curve_class(2, 1, 3, 0)
    b = pushforward_curve_class(3, 0, 3, 0)
    assert diag_multiply(a, b) == diag_multiply(b, a)
