from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from kapparing.exactnum import (
    bernoulli,
    format_rational,
    multinomial,
    odd_double_factorial,
    parse_rational,
    stirling2,
)


def _bernoulli_akiyama_tanigawa(m):
    # independent algorithm; it yields B_1 = +1/2, so flip that one
    a = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        a[k] = Fraction(1, k + 1)
        for j in range(k, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return -a[0] if m == 1 else a[0]


@pytest.mark.parametrize("m", range(0, 31))
def test_bernoulli_matches_second_algorithm(m):
    assert bernoulli(m) == _bernoulli_akiyama_tanigawa(m)


def test_bernoulli_known_values():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert all(bernoulli(m) == 0 for m in range(3, 40, 2))


def test_odd_double_factorial():
    assert [odd_double_factorial(l) for l in range(6)] == [1, 1, 3, 15, 105, 945]


@given(st.integers(0, 40))
def test_odd_double_factorial_closed_form(l):
    assert odd_double_factorial(l) == factorial(2 * l) // (2**l * factorial(l))


@given(st.lists(st.integers(0, 6), max_size=4), st.integers(0, 4))
def test_multinomial_as_product_of_binomials(parts, extra):
    top = sum(parts) + extra
    expect, left = 1, top
    for p in parts:
        expect *= comb(left, p)
        left -= p
    assert multinomial(top, parts) == expect


def test_multinomial_rejects_overflowing_parts():
    with pytest.raises(ValueError):
        multinomial(3, [2, 2])


@pytest.mark.parametrize("n", range(0, 8))
def test_stirling_by_brute_force(n):
    # count surjections onto k labels, divide by k!
    for k in range(0, n + 1):
        surj = sum(1 for f in product(range(k), repeat=n) if len(set(f)) == k) if k else int(n == 0)
        assert stirling2(n, k) == surj // factorial(k)


@given(st.fractions(max_denominator=10**6))
def test_rational_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


def test_format_rational():
    assert format_rational(Fraction(-7, 5760)) == "-7/5760"
    assert format_rational(Fraction(4, 2)) == "2"
