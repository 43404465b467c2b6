"""Sparse polynomials in kappa_1, kappa_2, ... with exact coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from ..exactnum import format_rational
from ..partitions import Partition, canonical_key, normalize, partitions

__all__ = ["KappaPoly", "kappa_monomial"]


class KappaPoly:
    """A Q-linear combination of kappa monomials, keyed by partition.

    kappa_0 and kappa_{-1} never appear: they are replaced by the integer s
    and by 0 when a monomial is created (see :func:`kappa_monomial`).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Partition, Fraction] | None = None):
        clean: dict[Partition, Fraction] = {}
        for p, c in (terms or {}).items():
            if c:
                key = tuple(p)
                if any(x <= 0 for x in key) or list(key) != sorted(key, reverse=True):
                    raise ValueError(f"not a kappa partition: {p!r}")
                clean[key] = clean.get(key, Fraction(0)) + Fraction(c)
        self._terms = {p: c for p, c in clean.items() if c}

    @classmethod
    def zero(cls) -> "KappaPoly":
        return cls()

    @classmethod
    def one(cls) -> "KappaPoly":
        return cls({(): Fraction(1)})

    @property
    def terms(self) -> dict[Partition, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Partition, Fraction]]:
        for p in sorted(self._terms, key=lambda q: (sum(q), canonical_key(q))):
            yield p, self._terms[p]

    def coefficient(self, p: Iterable[int]) -> Fraction:
        return self._terms.get(normalize(p), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {sum(p) for p in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or ds == {degree})

    def homogeneous_part(self, degree: int) -> "KappaPoly":
        return KappaPoly({p: c for p, c in self._terms.items() if sum(p) == degree})

    def vector(self, degree: int) -> list[Fraction]:
        """Coefficients against P(degree) in canonical order."""
        return [self._terms.get(p, Fraction(0)) for p in partitions(degree)]

    def __add__(self, other: "KappaPoly") -> "KappaPoly":
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return KappaPoly(out)

    def __neg__(self) -> "KappaPoly":
        return self.scale(-1)

    def __sub__(self, other: "KappaPoly") -> "KappaPoly":
        return self + (-other)

    def scale(self, c) -> "KappaPoly":
        c = Fraction(c)
        return KappaPoly({p: c * v for p, v in self._terms.items()})

    def __mul__(self, other) -> "KappaPoly":
        if not isinstance(other, KappaPoly):
            return self.scale(other)
        out: dict[Partition, Fraction] = {}
        for p, a in self._terms.items():
            for q, b in other._terms.items():
                key = tuple(sorted(p + q, reverse=True))
                out[key] = out.get(key, Fraction(0)) + a * b
        return KappaPoly(out)

    __rmul__ = scale

    def __truediv__(self, c) -> "KappaPoly":
        return self.scale(Fraction(1) / Fraction(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, KappaPoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"KappaPoly({self.to_text()!r})"

    def to_text(self) -> str:
        """Render e.g. ``-18*k3 + 2*k1*k2``."""
        if not self._terms:
            return "0"
        pieces = []
        for p, c in self.items():
            factors = "*".join(f"k{i}" for i in sorted(p))
            mag = abs(c)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{format_rational(mag)}*{factors}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> list[dict]:
        return [{"partition": list(p), "coeff": format_rational(c)} for p, c in self.items()]


def kappa_monomial(indices: Iterable[int], s: int, coeff=1) -> KappaPoly:
    """coeff * prod kappa_i, evaluating kappa_{-1} = 0 and kappa_0 = s."""
    c = Fraction(coeff)
    kept = []
    for i in indices:
        if i < -1:
            raise ValueError(f"kappa index {i} < -1")
        if i == -1:
            return KappaPoly()
        if i == 0:
            c *= s
        else:
            kept.append(i)
    return KappaPoly({normalize(kept): c})
