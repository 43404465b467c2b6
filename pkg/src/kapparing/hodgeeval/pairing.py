"""lambda_g pairings of kappa monomials against strata classes.

kappa_p restricted to a stratum is obtained by distributing the factors
kappa_{p_i} over the vertices in all possible ways; lambda_g restricts to the
product of the vertex lambda classes (lambda_0 = 1), and psi insertions stay
on the vertex carrying their marking.  Strata classes carry no automorphism
factor.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence

from ..partitions import Partition, normalize
from ..ringan.linalg import MatrixQ
from .graphs import DualGraph, Stratum, family_index_set, stratum_class
from .integrals import SocleIntegrand, socle_dimension, socle_integral

__all__ = ["stratum_pairing", "pairing_matrix", "PAIRING_FAMILIES", "pair_against", "is_length_triangular"]

PAIRING_FAMILIES = ("mu", "nu", "omega", "omega_prime", "genus0_V", "w", "w_tilde")

_FAMILY_OF = {
    "mu": "S",
    "nu": "T",
    "omega": "U",
    "omega_prime": "U_prime",
    "genus0_V": "V",
    "w": "W",
    "w_tilde": "W_tilde",
}


def stratum_pairing(
    p: Sequence[int],
    graph: DualGraph,
    psi_insertions: Optional[Mapping[int, int]] = None,
    vertex_kappa: Optional[Mapping[int, Sequence[int]]] = None,
) -> Fraction:
    """int kappa_p * prod psi^k * [graph] * lambda_g.

    ``vertex_kappa`` optionally decorates vertices with extra kappa factors of
    their own moduli space (used for the decorated strata of M_g).
    """
    p = normalize(p)
    psi_insertions = dict(psi_insertions or {})
    vertex_kappa = {v: normalize(k) for v, k in (vertex_kappa or {}).items()}
    k = len(graph.vertices)
    psi_at: list[list[int]] = []
    need: list[int] = []
    for v, (g, marks) in enumerate(graph.vertices):
        exps = [psi_insertions.get(m, 0) for m in marks] + [0] * graph.degree(v)
        psi_at.append(exps)
        need.append(socle_dimension(g, graph.valence(v)) - sum(exps) - sum(vertex_kappa.get(v, ())))
    for m in psi_insertions:
        graph.marking_vertex(m)  # raises on unknown labels
    if sum(need) != sum(p) or any(x < 0 for x in need):
        return Fraction(0)

    total = Fraction(0)
    assigned: list[list[int]] = [[] for _ in range(k)]
    left = list(need)

    def rec(i: int):
        nonlocal total
        if i == len(p):
            if any(left):
                return
            val = Fraction(1)
            for v, (g, _) in enumerate(graph.vertices):
                kap = tuple(assigned[v]) + vertex_kappa.get(v, ())
                val *= socle_integral(SocleIntegrand(g, graph.valence(v), tuple(psi_at[v]), kap))
                if not val:
                    return
            total += val
            return
        for v in range(k):
            if left[v] >= p[i]:
                left[v] -= p[i]
                assigned[v].append(p[i])
                rec(i + 1)
                assigned[v].pop()
                left[v] += p[i]

    rec(0)
    return total


def pair_against(rows: Sequence[Partition], columns: Sequence[Stratum]) -> list[list[Fraction]]:
    return [[stratum_pairing(p, st.graph, dict(st.psi)) for st in columns] for p in rows]


def pairing_matrix(family: str, g: int = 0, n: Optional[int] = None, d: Optional[int] = None) -> MatrixQ:
    """Square pairing matrix of a family; rows kappa_p, columns the strata classes.

    mu (S strata, M_{g,1}), nu (T, M_{g,2}), omega (U, M_g), omega_prime (U', M_g),
    genus0_V (V, M_{0,n}; needs n and d), w (W, M_{g,1}; needs d), w_tilde
    (W~, M_{g,2}; needs d).  mu, nu, w, w_tilde accept larger n of the same
    parity, realized by trading genus for markings.
    """
    if family not in PAIRING_FAMILIES:
        raise ValueError(f"unknown pairing family {family!r}; choose from {', '.join(PAIRING_FAMILIES)}")
    strata_family = _FAMILY_OF[family]
    index = family_index_set(strata_family, g, n, d)
    if family == "genus0_V":
        cols = [stratum_class("V", q, 0, n) for q in index]
    else:
        cols = [stratum_class(strata_family, q, g, n) for q in index]
    return MatrixQ(pair_against(index, cols), list(index), list(index))


def is_length_triangular(m: MatrixQ) -> bool:
    """entry(p, q) = 0 when len(p) < len(q), or len(p) = len(q) and p != q."""
    for i, p in enumerate(m.row_labels):
        for j, q in enumerate(m.col_labels):
            if (len(p) < len(q) or (len(p) == len(q) and p != q)) and m[i, j] != 0:
                return False
    return True
