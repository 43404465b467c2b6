"""lambda_g socle evaluation, dual graphs and pairing matrices."""
from .graphs import (
    FAMILIES,
    DualGraph,
    Stratum,
    build_stratum,
    family_index_set,
    stable_trees,
    stratum_class,
    trade_genus_for_markings,
    w_genus,
)
from .integrals import (
    SocleIntegrand,
    descendent_lambda_integral,
    genus0_psi_integral,
    lambda_g_base,
    socle_dimension,
    socle_integral,
)
from .pairing import PAIRING_FAMILIES, is_length_triangular, pair_against, pairing_matrix, stratum_pairing

__all__ = [
    "FAMILIES",
    "PAIRING_FAMILIES",
    "DualGraph",
    "Stratum",
    "SocleIntegrand",
    "build_stratum",
    "descendent_lambda_integral",
    "family_index_set",
    "genus0_psi_integral",
    "is_length_triangular",
    "lambda_g_base",
    "pair_against",
    "pairing_matrix",
    "socle_dimension",
    "socle_integral",
    "stable_trees",
    "stratum_class",
    "stratum_pairing",
    "trade_genus_for_markings",
    "w_genus",
]
