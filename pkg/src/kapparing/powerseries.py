"""Truncated exact power series in one and two variables.

The two-variable series live in t (degree r) and z (degree d).  The central
object is the term-count series

    F(t, z) = 1 + sum_{d>=1} sum_{r>=0} d^r t^r z^d / d!  =  exp(t z d/dz) e^z,

whose logarithm carries the connected counts C_r^d:

    log F = sum C_r^d t^r z^d / d!.

The one-variable series are phi(x) = 1 + sum_l (2l-1)!! x^l, its logarithm
(coefficients alpha_l) and its inverse (coefficients beta_l).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping

from .exactnum import odd_double_factorial

__all__ = [
    "BiSeries",
    "UniSeries",
    "series_exp_log",
    "term_count_series",
    "disconnected_coeff",
    "connected_coeff",
    "chain_polynomial",
    "chain_coefficient",
    "phi_series",
    "alpha",
    "beta",
    "DEFAULT_R_MAX",
    "DEFAULT_D_MAX",
]

DEFAULT_R_MAX = 24
DEFAULT_D_MAX = 12

ZERO = Fraction(0)


@dataclass(frozen=True)
class BiSeries:
    """Coefficients of t^r z^d for 0 <= r <= r_max, 0 <= d <= d_max.

    Coefficients outside the box are not represented; every coefficient inside
    the box is exact.
    """

    coeffs: Mapping[tuple[int, int], Fraction]
    r_max: int
    d_max: int

    def __post_init__(self):
        clean = {
            (r, d): Fraction(c)
            for (r, d), c in self.coeffs.items()
            if c and 0 <= r <= self.r_max and 0 <= d <= self.d_max
        }
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_function(cls, f: Callable[[int, int], Fraction], r_max: int, d_max: int) -> "BiSeries":
        return cls(
            {(r, d): f(r, d) for r in range(r_max + 1) for d in range(d_max + 1)},
            r_max,
            d_max,
        )

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        r, d = key
        if not (0 <= r <= self.r_max and 0 <= d <= self.d_max):
            raise KeyError(f"({r}, {d}) outside truncation box ({self.r_max}, {self.d_max})")
        return self.coeffs.get(key, ZERO)

    def constant(self) -> Fraction:
        return self.coeffs.get((0, 0), ZERO)

    def _box(self, other: "BiSeries") -> tuple[int, int]:
        return min(self.r_max, other.r_max), min(self.d_max, other.d_max)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        rm, dm = self._box(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return BiSeries(out, rm, dm)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "BiSeries":
        c = Fraction(c)
        return BiSeries({k: c * v for k, v in self.coeffs.items()}, self.r_max, self.d_max)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        rm, dm = self._box(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (r1, d1), a in self.coeffs.items():
            for (r2, d2), b in other.coeffs.items():
                r, d = r1 + r2, d1 + d2
                if r <= rm and d <= dm:
                    out[r, d] = out.get((r, d), ZERO) + a * b
        return BiSeries(out, rm, dm)

    def _grid(self) -> list[tuple[int, int]]:
        cells = [(r, d) for r in range(self.r_max + 1) for d in range(self.d_max + 1)]
        cells.sort(key=lambda c: (c[0] + c[1], c))
        return cells

    def exp(self) -> "BiSeries":
        """exp of a series with zero constant term.

        With E the Euler operator (t d/dt + z d/dz), E exp(G) = exp(G) E G, so
        coefficients follow by recursion on total degree.
        """
        if self.constant() != 0:
            raise ValueError("exp requires a zero constant term")
        g = self.coeffs
        h: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
        support = sorted(g)
        for r, d in self._grid()[1:]:
            acc = ZERO
            for r1, d1 in support:
                if r1 <= r and d1 <= d:
                    rest = h.get((r - r1, d - d1))
                    if rest:
                        acc += (r1 + d1) * g[r1, d1] * rest
            if acc:
                h[r, d] = acc / (r + d)
        return BiSeries(h, self.r_max, self.d_max)

    def log(self) -> "BiSeries":
        """log of a series with constant term 1 (E F = F E log F)."""
        if self.constant() != 1:
            raise ValueError("log requires constant term 1")
        f = self.coeffs
        lg: dict[tuple[int, int], Fraction] = {}
        for r, d in self._grid()[1:]:
            n = r + d
            acc = n * f.get((r, d), ZERO)
            for (r1, d1), l1 in lg.items():
                if r1 <= r and d1 <= d:
                    rest = f.get((r - r1, d - d1))
                    if rest:
                        acc -= (r1 + d1) * l1 * rest
            if acc:
                lg[r, d] = acc / n
        return BiSeries(lg, self.r_max, self.d_max)


@dataclass(frozen=True)
class UniSeries:
    """Exact coefficients a_0..a_N of a one-variable series."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise KeyError(f"coefficient {n} beyond truncation {self.order}")
        return self.coeffs[n]

    def __mul__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return UniSeries(tuple(sum((a[i] * b[k - i] for i in range(k + 1)), ZERO) for k in range(n + 1)))

    def inverse(self) -> "UniSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        b = [1 / a[0]]
        for m in range(1, len(a)):
            b.append(-sum((a[k] * b[m - k] for k in range(1, m + 1)), ZERO) / a[0])
        return UniSeries(tuple(b))

    def log(self) -> "UniSeries":
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log requires constant term 1")
        lg = [ZERO]
        for m in range(1, len(a)):
            acc = m * a[m] - sum((k * lg[k] * a[m - k] for k in range(1, m)), ZERO)
            lg.append(acc / m)
        return UniSeries(tuple(lg))

    def exp(self) -> "UniSeries":
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exp requires zero constant term")
        h = [Fraction(1)]
        for m in range(1, len(a)):
            h.append(sum((k * a[k] * h[m - k] for k in range(1, m + 1)), ZERO) / m)
        return UniSeries(tuple(h))


def series_exp_log(s: BiSeries, direction: str) -> BiSeries:
    if direction == "exp":
        return s.exp()
    if direction == "log":
        return s.log()
    raise ValueError(f"direction must be 'exp' or 'log', not {direction!r}")


def disconnected_coeff(r: int, d: int) -> Fraction:
    """[t^r z^d] F(t, z) = d^r / d!  (with 0^0 = 1)."""
    if r < 0 or d < 0:
        raise ValueError("r and d must be >= 0")
    return Fraction(d**r, factorial(d))


def term_count_series(r_max: int = DEFAULT_R_MAX, d_max: int = DEFAULT_D_MAX) -> BiSeries:
    return BiSeries.from_function(disconnected_coeff, r_max, d_max)


@lru_cache(maxsize=8)
def _log_term_count(r_max: int, d_max: int) -> BiSeries:
    return term_count_series(r_max, d_max).log()


def _log_table_for(r: int, d: int) -> BiSeries:
    rm = max(DEFAULT_R_MAX, r)
    dm = max(DEFAULT_D_MAX, d)
    # round up so repeated slightly-larger requests share one table
    rm = -(-rm // 8) * 8
    dm = -(-dm // 4) * 4
    return _log_term_count(rm, dm)


def connected_coeff(r: int, d: int) -> tuple[Fraction, Fraction]:
    """(C_r^d, C_r^d / d!): the connected count and the coefficient of t^r z^d in log F."""
    if r < 0 or d < 1:
        raise ValueError("need r >= 0 and d >= 1")
    c_hat = _log_table_for(r, d)[r, d]
    return c_hat * factorial(d), c_hat


@lru_cache(maxsize=None)
def chain_polynomial(r: int) -> tuple[Fraction, ...]:
    """Coefficients of p_r(z) (index = power of z), where F = e^z sum_r t^r p_r(z).

    p_r(z) = e^{-z} sum_d d^r z^d / d!, read off by exact series
    multiplication; the product is checked to terminate at degree r.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    n = r + 2
    emz = [Fraction((-1) ** k, factorial(k)) for k in range(n + 1)]
    row = [disconnected_coeff(r, d) for d in range(n + 1)]
    prod = [sum((emz[k - j] * row[j] for j in range(k + 1)), ZERO) for k in range(n + 1)]
    if any(prod[k] for k in range(r + 1, n + 1)):
        raise ArithmeticError(f"p_{r} is not a polynomial of degree {r}")
    return tuple(prod[: r + 1])


def chain_coefficient(r: int, s: int) -> Fraction:
    """c_{r,s}: the coefficient of z^{r-s} in p_r(z)."""
    if not 0 <= s <= r:
        raise ValueError("need 0 <= s <= r")
    return chain_polynomial(r)[r - s]


@lru_cache(maxsize=4)
def _phi_tables(order: int) -> tuple[UniSeries, UniSeries, UniSeries]:
    phi = phi_series(order)
    return phi, phi.log(), phi.inverse()


def phi_series(order: int) -> UniSeries:
    return UniSeries(tuple(Fraction(odd_double_factorial(l)) for l in range(order + 1)))


def _tables_for(l: int) -> tuple[UniSeries, UniSeries, UniSeries]:
    return _phi_tables(max(64, -(-(l + 1) // 32) * 32))


def alpha(l: int) -> Fraction:
    """[x^l] log phi(x)."""
    if l < 1:
        raise ValueError("alpha is defined for l >= 1")
    return _tables_for(l)[1][l]


def beta(l: int) -> Fraction:
    """[x^l] 1/phi(x)."""
    if l < 1:
        raise ValueError("beta is defined for l >= 1")
    return _tables_for(l)[2][l]
