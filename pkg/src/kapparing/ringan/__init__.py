"""Exact linear algebra and ring-level analyses of kappa rings."""
from .analysis import (
    KNOWN_RANKS,
    THREADS_ENV,
    BasisResult,
    Certificate,
    GeneratorRefused,
    UniversalityRow,
    basis,
    betti_polynomial,
    find_generator_relation,
    format_polynomial,
    genus0_betti,
    genus0_divisor_matrix,
    genus0_pairing,
    independence_certificate,
    minimal_generator_relation,
    relation_rank,
    relations_for,
    socle_top,
    universality_report,
)
from .linalg import MatrixQ, determinant, integer_rows, rank

__all__ = [
    "KNOWN_RANKS",
    "THREADS_ENV",
    "BasisResult",
    "Certificate",
    "GeneratorRefused",
    "MatrixQ",
    "UniversalityRow",
    "basis",
    "betti_polynomial",
    "determinant",
    "find_generator_relation",
    "format_polynomial",
    "genus0_betti",
    "genus0_divisor_matrix",
    "genus0_pairing",
    "independence_certificate",
    "integer_rows",
    "minimal_generator_relation",
    "rank",
    "relation_rank",
    "relations_for",
    "socle_top",
    "universality_report",
]
