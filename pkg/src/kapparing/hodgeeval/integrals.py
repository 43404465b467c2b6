"""lambda_g-weighted integrals of psi and kappa classes on M-bar_{g,n}.

With lambda_g inserted, descendent integrals collapse to a multinomial times
a genus-only constant:

    int psi_1^a_1 ... psi_n^a_n lambda_g = binom(2g-3+n; a) * b_g,

    b_g = int_{M-bar_{g,1}} psi^(2g-2) lambda_g
        = (2^(2g-1) - 1) / 2^(2g-1) * |B_2g| / (2g)!.

In genus 0 lambda_0 = 1 and the psi integrals are (n-3)! / prod a_i!.
Kappa classes are traded for extra markings via kappa_b = pi_*(psi^(b+1)).
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..exactnum import bernoulli, multinomial
from ..partitions import Partition, normalize

__all__ = [
    "SocleIntegrand",
    "lambda_g_base",
    "descendent_lambda_integral",
    "genus0_psi_integral",
    "socle_integral",
    "socle_dimension",
]


def lambda_g_base(g: int) -> Fraction:
    """b_g = int_{M-bar_{g,1}} psi^(2g-2) lambda_g."""
    if g < 1:
        raise ValueError("lambda_g_base needs g >= 1")
    two = Fraction(2) ** (2 * g - 1)
    return (two - 1) / two * abs(bernoulli(2 * g)) / factorial(2 * g)


def socle_dimension(g: int, n: int) -> int:
    """Degree of the lambda_g socle evaluation on M^c_{g,n}: 2g-3+n, or n-3 in genus 0."""
    return n - 3 if g == 0 else 2 * g - 3 + n


def _check_stable(g: int, n: int):
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"M-bar_{{{g},{n}}} is not stable")


def descendent_lambda_integral(g: int, n: int, a: Sequence[int]) -> Fraction:
    """int_{M-bar_{g,n}} prod psi_i^a_i lambda_g for g >= 1."""
    if g < 1:
        raise ValueError("the lambda_g formula needs g >= 1")
    if len(a) != n:
        raise ValueError("need one psi exponent per marking")
    _check_stable(g, n)
    if any(x < 0 for x in a):
        raise ValueError("psi exponents must be >= 0")
    top = 2 * g - 3 + n
    if sum(a) != top:
        return Fraction(0)
    return multinomial(top, list(a)) * lambda_g_base(g)


def genus0_psi_integral(n: int, a: Sequence[int]) -> Fraction:
    """int_{M-bar_{0,n}} prod psi_i^a_i = (n-3)! / prod a_i!."""
    if len(a) != n:
        raise ValueError("need one psi exponent per marking")
    _check_stable(0, n)
    if any(x < 0 for x in a):
        raise ValueError("psi exponents must be >= 0")
    if sum(a) != n - 3:
        return Fraction(0)
    return Fraction(multinomial(n - 3, list(a)))


@dataclass(frozen=True)
class SocleIntegrand:
    """prod psi_i^a_i * kappa_partition * lambda_g on M-bar_{g,n}.

    Zeros in ``kappa`` are kappa_0 factors; they are moved to ``kappa0`` and
    evaluate to the scalar 2g-2+n.
    """

    g: int
    n: int
    psi: tuple[int, ...]
    kappa: Partition = ()
    kappa0: int = 0

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(self.psi))
        raw = tuple(self.kappa)
        if any(k < 0 for k in raw):
            raise ValueError("kappa indices must be >= 0 (kappa_{-1} = 0 is not an integrand)")
        object.__setattr__(self, "kappa0", self.kappa0 + sum(1 for k in raw if k == 0))
        object.__setattr__(self, "kappa", normalize(raw))
        if len(self.psi) != self.n:
            raise ValueError("need one psi exponent per marking")
        _check_stable(self.g, self.n)

    @property
    def degree(self) -> int:
        return sum(self.psi) + sum(self.kappa)


_memo: dict[tuple, Fraction] = {}
_memo_lock = threading.Lock()


def _integral(g: int, psi: tuple[int, ...], kappa: tuple[int, ...]) -> Fraction:
    # psi sorted descending, kappa sorted descending; both only matter up to order
    key = (g, psi, kappa)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    n = len(psi)
    if not kappa:
        val = genus0_psi_integral(n, psi) if g == 0 else descendent_lambda_integral(g, n, psi)
    else:
        # kappa_b = pi_*(psi_{n+1}^{b+1}); the other kappa_c pull back to
        # kappa_c - psi_{n+1}^c, and psi_i pulls back to itself against psi_{n+1}
        b, rest = kappa[0], kappa[1:]
        val = Fraction(0)
        for k in range(len(rest) + 1):
            for chosen in itertools.combinations(range(len(rest)), k):
                extra = b + 1 + sum(rest[i] for i in chosen)
                left = tuple(rest[i] for i in range(len(rest)) if i not in chosen)
                new_psi = tuple(sorted(psi + (extra,), reverse=True))
                val += (-1) ** k * _integral(g, new_psi, left)
    with _memo_lock:
        _memo[key] = val
    return val


def socle_integral(itg: SocleIntegrand) -> Fraction:
    """int_{M-bar_{g,n}} prod psi^a * kappa_p * lambda_g (lambda_0 = 1); 0 off degree."""
    if itg.degree != socle_dimension(itg.g, itg.n):
        return Fraction(0)
    scalar = (2 * itg.g - 2 + itg.n) ** itg.kappa0
    return scalar * _integral(itg.g, tuple(sorted(itg.psi, reverse=True)), itg.kappa)
