from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from kapparing.hodgeeval import (
    FAMILIES,
    DualGraph,
    SocleIntegrand,
    build_stratum,
    descendent_lambda_integral,
    family_index_set,
    genus0_psi_integral,
    is_length_triangular,
    lambda_g_base,
    pairing_matrix,
    socle_dimension,
    socle_integral,
    stable_trees,
    stratum_class,
    stratum_pairing,
    trade_genus_for_markings,
    w_genus,
)
from kapparing.partitions import partitions

# --- integrals ----------------------------------------------------------------


def test_lambda_g_base_values():
    assert lambda_g_base(1) == Fraction(1, 24)
    assert lambda_g_base(2) == Fraction(7, 5760)
    assert lambda_g_base(3) == Fraction(31, 967680)


def test_descendent_examples():
    # on M-bar_{1,1} the lambda_1 socle sits in degree 0, so b_1 is the a = [0] value
    assert descendent_lambda_integral(1, 1, [0]) == Fraction(1, 24)
    assert descendent_lambda_integral(1, 1, [1]) == 0
    assert descendent_lambda_integral(2, 2, [2, 1]) == Fraction(7, 1920)
    assert descendent_lambda_integral(2, 2, [1, 1]) == 0


@lru_cache(maxsize=None)
def _genus0_by_string(a):
    # <tau_a1 ... tau_an>_0 via the string equation; <tau_0^3> = 1
    a = tuple(sorted(a))
    n = len(a)
    if sum(a) != n - 3:
        return 0
    if n == 3:
        return 1
    assert a[0] == 0
    rest = a[1:]
    return sum(_genus0_by_string(rest[:i] + (rest[i] - 1,) + rest[i + 1 :]) for i in range(len(rest)) if rest[i] > 0)


@settings(max_examples=80)
@given(st.integers(3, 9).flatmap(lambda n: st.lists(st.integers(0, n - 3), min_size=n, max_size=n)))
def test_genus0_multinomial_matches_string_equation(a):
    assert genus0_psi_integral(len(a), a) == _genus0_by_string(tuple(a))


@pytest.mark.parametrize("p", range(0, 7))
def test_kappa_lambda1(p):
    assert socle_integral(SocleIntegrand(1, p + 1, (0,) * (p + 1), (p,))) == Fraction(1, 24)


def test_socle_examples():
    assert socle_integral(SocleIntegrand(2, 0, (), (1,))) == Fraction(7, 5760)
    assert socle_integral(SocleIntegrand(0, 5, (0,) * 5, (1, 1))) == 5
    assert socle_integral(SocleIntegrand(2, 0, (), (2,))) == 0  # off degree


@pytest.mark.parametrize("h", [1, 2, 3])
def test_psi_kappa_identity(h):
    for k in range(0, 2 * h - 1):
        lhs = socle_integral(SocleIntegrand(h, 1, (k,), (2 * h - 2 - k,)))
        assert lhs == comb(2 * h - 1, k) * lambda_g_base(h)


def _cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = perm[j]
        out.append(c)
    return out


def _forward_oracle(g, psi, bs):
    # int psi^a prod_j psi_{n+j}^{b_j+1} lambda_g on M_{g,n+m}
    #   = sum over sigma in S_m of int psi^a prod_cycles kappa_{b(c)} lambda_g on M_{g,n}
    n, m = len(psi), len(bs)
    lhs_psi = list(psi) + [b + 1 for b in bs]
    if g == 0:
        lhs = genus0_psi_integral(n + m, lhs_psi)
    else:
        lhs = descendent_lambda_integral(g, n + m, lhs_psi)
    rhs = Fraction(0)
    for perm in permutations(range(m)):
        kap = tuple(sum(bs[i] for i in c) for c in _cycles(perm))
        rhs += socle_integral(SocleIntegrand(g, n, tuple(psi), kap))
    return lhs, rhs


@settings(max_examples=80, deadline=None)
@given(
    st.integers(0, 3),
    st.lists(st.integers(0, 3), min_size=0, max_size=3),
    st.lists(st.integers(0, 3), min_size=1, max_size=3),
)
def test_kappa_to_psi_against_permutation_formula(g, psi, bs):
    n = len(psi)
    if 2 * g - 2 + n <= 0:
        return
    top = socle_dimension(g, n)
    if sum(psi) + sum(bs) != top:
        return
    lhs, rhs = _forward_oracle(g, psi, bs)
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_kappa_order_does_not_matter(g, parts):
    top_n = sum(parts) - (2 * g - 3)
    if top_n < 1:
        return
    a = SocleIntegrand(g, top_n, (0,) * top_n, tuple(parts))
    b = SocleIntegrand(g, top_n, (0,) * top_n, tuple(reversed(parts)))
    assert socle_integral(a) == socle_integral(b)


def test_kappa0_is_the_euler_scalar():
    base = socle_integral(SocleIntegrand(1, 2, (0, 0), (1,)))
    assert socle_integral(SocleIntegrand(1, 2, (0, 0), (1, 0))) == 2 * base


def test_unstable_rejected():
    with pytest.raises(ValueError):
        SocleIntegrand(0, 2, (0, 0))
    with pytest.raises(ValueError):
        SocleIntegrand(1, 1, (0, 0))


# --- graphs -------------------------------------------------------------------


def test_S1_genus2():
    gr = build_stratum("S", (1,), 2, 1)
    assert gr.vertices == ((1, (1,)), (1, ()))
    assert gr.codim == 1 and gr.genus == 2


def test_V6_at_n10():
    gr = build_stratum("V", (6,), 0, 10)
    assert [len(m) for _, m in gr.vertices] == [8, 2]
    assert gr.codim == 1


def test_dual_graph_validation():
    with pytest.raises(ValueError):
        DualGraph(((0, (1, 2)),), ())  # unstable
    with pytest.raises(ValueError):
        DualGraph(((1, ()), (1, ()), (1, ())), ((0, 1), (1, 2), (0, 2)))  # cycle
    with pytest.raises(ValueError):
        DualGraph(((1, (1,)), (1, (1,))), ((0, 1),))  # repeated label


def _family_cases():
    for g in range(1, 6):
        yield "S", g, 1, None
        yield "T", g, 2, None
    for g in range(2, 6):
        yield "U", g, 0, None
        yield "U_prime", g, 0, None
    for n in range(3, 10):
        for d in range(0, n - 2):
            yield "V", 0, n, d
    for g in range(1, 5):
        for d in range(0, 2 * g):
            yield "W", g, 1, d
        for d in range(0, 2 * g + 1):
            yield "W_tilde", g, 2, d
    for g, n in [(1, 3), (2, 3), (0, 5), (1, 4), (2, 4)]:
        yield "S" if n % 2 else "T", g, n, None
        for d in range(0, socle_dimension(g, n) + 1):
            if g + (n - 1) // 2 >= 1:
                yield "W" if n % 2 else "W_tilde", g, n, d


@pytest.mark.parametrize("family,g,n,d", list(_family_cases()))
def test_strata_bookkeeping(family, g, n, d):
    # every stratum lives on M_{g,n} and has the complementary degree to its row
    for q in family_index_set(family, g, n, d):
        st_ = stratum_class(family, q, g, n)
        assert st_.graph.genus == g and st_.graph.n == n
        assert st_.degree + sum(q) == socle_dimension(g, n)


@pytest.mark.parametrize("family", ["S", "T", "U", "U_prime"])
def test_edge_counts(family):
    for g in range(2, 7):
        for q in family_index_set(family, g):
            gr = stratum_class(family, q, g).graph
            expected = {"S": g - 1, "T": g - 1, "U": g - 2, "U_prime": g - 1}[family]
            # codimension = socle dimension minus the row degree
            assert gr.codim == expected


@pytest.mark.parametrize("two", [False, True])
def test_w_genus_equations(two):
    for d in range(0, 9):
        for p in partitions(d):
            gw = w_genus(p, two)
            s = d + len(p)
            if not two:
                assert 2 * gw - 1 == (s if s % 2 else s + 1)
            elif d:
                assert 2 * gw == (s if s % 2 == 0 else s + 1)


def test_trade_keeps_socle_dimensions():
    gr = build_stratum("S", (2, 1), 4, 1)
    traded = trade_genus_for_markings(gr, 2)
    assert traded.socle_dims() == gr.socle_dims()
    assert traded.genus == gr.genus - 2 and traded.n == gr.n + 4


def test_stable_trees_small():
    assert len(stable_trees(2, 0)) == 1
    assert len(stable_trees(2, 1)) == 1  # two elliptic curves
    assert len(stable_trees(3, 2)) == 1  # chain E - E - E


def test_unknown_family():
    with pytest.raises(ValueError):
        stratum_class("Q", (1,), 2)
    assert set(FAMILIES) >= {"S", "T", "U", "U_prime", "V", "W", "W_tilde"}


# --- pairings -----------------------------------------------------------------


def test_mu2():
    m = pairing_matrix("mu", 2)
    assert m.rows == [[Fraction(1, 576)]]


@pytest.mark.parametrize(
    "family,g,n,d",
    [("mu", g, None, None) for g in range(1, 7)]
    + [("nu", g, None, None) for g in range(1, 7)]
    + [("omega", g, None, None) for g in range(2, 7)]
    + [("omega_prime", g, None, None) for g in range(2, 7)]
    + [("w", g, None, d) for g in range(1, 5) for d in range(0, 2 * g)]
    + [("w_tilde", g, None, d) for g in range(1, 5) for d in range(0, 2 * g + 1)]
    + [("mu", 2, 3, None), ("nu", 2, 4, None), ("mu", 1, 5, None), ("w", 1, 3, 2), ("w_tilde", 1, 4, 3)],
)
def test_triangular_nonsingular(family, g, n, d):
    m = pairing_matrix(family, g, n, d)
    assert is_length_triangular(m)
    assert all(m.diagonal())
    assert m.determinant() != 0


def test_divisor_pairing_n10():
    rows = partitions(6, 2)
    graphs = [
        DualGraph(((0, tuple(range(1, k + 1))), (0, tuple(range(k + 1, 11)))), ((0, 1),)) for k in (8, 7, 6, 5)
    ]
    det_rows = [[stratum_pairing(p, gr) for gr in graphs] for p in rows]
    from kapparing.ringan import determinant

    assert determinant(det_rows) != 0


@st.composite
def genus0_trees(draw):
    k = draw(st.integers(1, 4))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, k)]
    edges = [(p, i) for i, p in zip(range(1, k), parents)]
    deg = [0] * k
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    counts = [max(0, 3 - deg[v]) + draw(st.integers(0, 2)) for v in range(k)]
    label, verts = 1, []
    for v in range(k):
        verts.append((0, tuple(range(label, label + counts[v]))))
        label += counts[v]
    return DualGraph(tuple(verts), tuple(edges))


@settings(max_examples=60, deadline=None)
@given(genus0_trees())
def test_genus0_pairing_depends_only_on_vertex_profile(gr):
    # pairing with S_Gamma equals pairing with V_q, q_i = valence_i - 3
    n = gr.n
    if n < 3:
        return
    q = tuple(sorted((gr.valence(v) - 3 for v in range(len(gr.vertices))), reverse=True))
    q = tuple(x for x in q if x)
    d = sum(q)
    v = stratum_class("V", q, 0, n).graph
    for p in partitions(d):
        assert stratum_pairing(p, gr) == stratum_pairing(p, v)
