"""Kappa relations from the Chern classes of A_d^* - B_d on M^c_{g,n|d}."""
from .kappapoly import KappaPoly, kappa_monomial
from .diagclass import DiagClass, DiagMonomial, diag_multiply, pushforward_to_kappa
from .chern import chern_graded, connected_count_direct, expand_chern_class, substitution_count
from .expformula import block_weight, factor_product_on_support, pushforward_with_chern, untouched_pushforward
from .relations import (
    DEFAULT_DIRECT_BUDGET,
    DEFAULT_RICHER_BUDGET,
    BudgetExceeded,
    DirectBudget,
    Relation,
    RelationSet,
    RicherBudget,
    pushforward_curve_class,
    relation_direct,
    relation_series,
    relation_set,
    richer_relation,
    richer_relations,
)

__all__ = [
    "KappaPoly",
    "kappa_monomial",
    "DiagClass",
    "DiagMonomial",
    "diag_multiply",
    "pushforward_to_kappa",
    "chern_graded",
    "connected_count_direct",
    "expand_chern_class",
    "substitution_count",
    "block_weight",
    "factor_product_on_support",
    "pushforward_with_chern",
    "untouched_pushforward",
    "DEFAULT_DIRECT_BUDGET",
    "DEFAULT_RICHER_BUDGET",
    "BudgetExceeded",
    "DirectBudget",
    "Relation",
    "RelationSet",
    "RicherBudget",
    "pushforward_curve_class",
    "relation_direct",
    "relation_series",
    "relation_set",
    "richer_relation",
    "richer_relations",
]
