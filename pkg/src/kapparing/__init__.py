"""Exact computations in kappa rings of moduli of curves of compact type."""
__version__ = "0.1.0"
