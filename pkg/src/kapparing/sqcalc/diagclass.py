"""Normal-form calculus for psi-hat and diagonal classes on M^c_{g,n|d}.

Every product of psi-hat_i and D_ij classes reduces to a sum of monomials

    prod_B  D_B * psihat_*(B)^{e_B}

over the blocks B of a set partition of the d light marks, where D_B is the
small diagonal where all points of B coincide and psihat_*(B) is the
cotangent class of the merged point.  The reduction rules are

    psihat_i * D_B  = D_B psihat_*(B)       (i in B)
    D_ij * D_B D_B' = D_{B u B'}            (i in B, j in B', B != B')
    D_ij * D_B      = -psihat_*(B) D_B      (i, j in B; self-intersection)

A monomial is stored as (rgs, exps, kappa): rgs is the restricted growth
string assigning each mark its block, exps the exponent per block, kappa an
optional product of base kappa classes (pulled back from M^c_{g,n}) carried
along for the richer relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from ..partitions import SetPartition
from .kappapoly import KappaPoly, kappa_monomial

__all__ = ["DiagMonomial", "DiagClass", "diag_multiply", "pushforward_to_kappa"]


class DiagMonomial(NamedTuple):
    rgs: tuple[int, ...]
    exps: tuple[int, ...]
    kappa: tuple[int, ...] = ()

    @classmethod
    def unit(cls, d: int) -> "DiagMonomial":
        return cls(tuple(range(d)), (0,) * d)

    @classmethod
    def from_blocks(cls, d: int, blocks: Iterable[Iterable[int]], exps: Iterable[int], kappa=()) -> "DiagMonomial":
        """Build from explicit 1-based blocks; unnamed marks become singletons with exponent 0."""
        blocks = [sorted(b) for b in blocks]
        exps = list(exps)
        if len(blocks) != len(exps):
            raise ValueError("one exponent per block")
        owner = {}
        for k, b in enumerate(blocks):
            for m in b:
                if not 1 <= m <= d or m in owner:
                    raise ValueError(f"bad mark {m}")
                owner[m] = k
        exp_of = {k: e for k, e in enumerate(exps)}
        for m in range(1, d + 1):
            if m not in owner:
                owner[m] = len(exp_of)
                exp_of[owner[m]] = 0
        relabel: dict[int, int] = {}
        rgs = []
        for m in range(1, d + 1):
            relabel.setdefault(owner[m], len(relabel))
            rgs.append(relabel[owner[m]])
        new_exps = [0] * len(relabel)
        for old, new in relabel.items():
            new_exps[new] = exp_of[old]
        return cls(tuple(rgs), tuple(new_exps), tuple(sorted(kappa, reverse=True)))

    @property
    def d(self) -> int:
        return len(self.rgs)

    @property
    def blocks(self) -> SetPartition:
        out: list[list[int]] = [[] for _ in self.exps]
        for m, b in enumerate(self.rgs, start=1):
            out[b].append(m)
        return tuple(tuple(b) for b in out)

    @property
    def degree(self) -> int:
        return sum(self.exps) + len(self.rgs) - len(self.exps) + sum(self.kappa)

    @property
    def diagonal_codim(self) -> int:
        return len(self.rgs) - len(self.exps)

    def times_psi(self, i: int) -> "DiagMonomial":
        b = self.rgs[i - 1]
        exps = list(self.exps)
        exps[b] += 1
        return DiagMonomial(self.rgs, tuple(exps), self.kappa)

    def times_diagonal(self, i: int, j: int) -> tuple[int, "DiagMonomial"]:
        """Multiply by D_ij; returns (sign, monomial)."""
        bi, bj = self.rgs[i - 1], self.rgs[j - 1]
        if bi == bj:
            exps = list(self.exps)
            exps[bi] += 1
            return -1, DiagMonomial(self.rgs, tuple(exps), self.kappa)
        lo, hi = (bi, bj) if bi < bj else (bj, bi)
        rgs = tuple(lo if b == hi else (b - 1 if b > hi else b) for b in self.rgs)
        exps = list(self.exps)
        exps[lo] += exps[hi]
        del exps[hi]
        return 1, DiagMonomial(rgs, tuple(exps), self.kappa)

    def relabeled(self, perm: Mapping[int, int]) -> "DiagMonomial":
        """Apply a permutation of the marks (1-based, old -> new)."""
        blocks = [[perm[m] for m in b] for b in self.blocks]
        return DiagMonomial.from_blocks(self.d, blocks, self.exps, self.kappa)


@dataclass
class DiagClass:
    """Sparse Q-combination of DiagMonomials on d light marks."""

    d: int
    terms: dict[DiagMonomial, Fraction] = field(default_factory=dict)

    @classmethod
    def unit(cls, d: int) -> "DiagClass":
        return cls(d, {DiagMonomial.unit(d): Fraction(1)})

    @classmethod
    def psi(cls, d: int, i: int) -> "DiagClass":
        return cls(d, {DiagMonomial.unit(d).times_psi(i): Fraction(1)})

    @classmethod
    def diagonal(cls, d: int, i: int, j: int) -> "DiagClass":
        sign, m = DiagMonomial.unit(d).times_diagonal(i, j)
        return cls(d, {m: Fraction(sign)})

    def copy(self) -> "DiagClass":
        return DiagClass(self.d, dict(self.terms))

    def __iter__(self) -> Iterator[tuple[DiagMonomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagClass):
            return NotImplemented
        return self.d == other.d and _clean(self.terms) == _clean(other.terms)

    def _check(self, other: "DiagClass"):
        if self.d != other.d:
            raise ValueError(f"mismatched number of light marks: {self.d} vs {other.d}")

    def add_to(self, other: "DiagClass", scale=1) -> None:
        self._check(other)
        t = self.terms
        for m, c in other.terms.items():
            v = t.get(m, 0) + scale * c
            if v:
                t[m] = v
            else:
                t.pop(m, None)

    def __add__(self, other: "DiagClass") -> "DiagClass":
        out = self.copy()
        out.add_to(other)
        return out

    def __sub__(self, other: "DiagClass") -> "DiagClass":
        out = self.copy()
        out.add_to(other, -1)
        return out

    def scale(self, c) -> "DiagClass":
        c = Fraction(c)
        return DiagClass(self.d, {m: c * v for m, v in self.terms.items() if c * v})

    def graded(self, degree: int) -> "DiagClass":
        return DiagClass(self.d, {m: c for m, c in self.terms.items() if m.degree == degree})

    def truncated(self, max_degree: int) -> "DiagClass":
        return DiagClass(self.d, {m: c for m, c in self.terms.items() if m.degree <= max_degree})

    def times_psi(self, i: int) -> "DiagClass":
        return DiagClass(self.d, {m.times_psi(i): c for m, c in self.terms.items()})

    def times_diagonal(self, i: int, j: int) -> "DiagClass":
        out: dict[DiagMonomial, Fraction] = {}
        for m, c in self.terms.items():
            sign, m2 = m.times_diagonal(i, j)
            v = out.get(m2, 0) + (c if sign > 0 else -c)
            if v:
                out[m2] = v
            else:
                out.pop(m2, None)
        return DiagClass(self.d, out)

    def times_monomial(self, mono: DiagMonomial) -> "DiagClass":
        """Multiply by one monomial: D_B is a transverse product of D_{min B, j}."""
        if mono.d != self.d:
            raise ValueError(f"mismatched number of light marks: {self.d} vs {mono.d}")
        cur = self
        for block, e in zip(mono.blocks, mono.exps):
            head = block[0]
            for j in block[1:]:
                cur = cur.times_diagonal(head, j)
            for _ in range(e):
                cur = cur.times_psi(head)
        if mono.kappa:
            cur = DiagClass(
                self.d,
                {
                    m._replace(kappa=tuple(sorted(m.kappa + mono.kappa, reverse=True))): c
                    for m, c in cur.terms.items()
                },
            )
        return cur

    def __mul__(self, other: "DiagClass") -> "DiagClass":
        return diag_multiply(self, other)

    def substitute_counts(self) -> Fraction:
        """Evaluate at psihat_i = 1, D_ij = -1.

        D_B is a product of |B| - 1 diagonals, so a monomial evaluates to
        (-1)^(d - #blocks); the reduction rules are compatible with this
        substitution, so normal form does not change the value.
        """
        return sum((c * (-1) ** m.diagonal_codim for m, c in self.terms.items()), Fraction(0))


def _clean(terms):
    return {m: Fraction(c) for m, c in terms.items() if c}


def diag_multiply(a: DiagClass, b: DiagClass) -> DiagClass:
    """Bilinear product of two classes, reduced to normal form."""
    a._check(b)
    out = DiagClass(a.d)
    for mono, c in b.terms.items():
        out.add_to(a.times_monomial(mono), c)
    return out


def pushforward_to_kappa(c: DiagClass, s: int) -> KappaPoly:
    """Forget the light marks: each block with exponent e becomes kappa_{e-1}."""
    acc: dict = {}
    for m, coeff in c.terms.items():
        poly = kappa_monomial([e - 1 for e in m.exps] + list(m.kappa), s, coeff)
        for p, v in poly.terms.items():
            acc[p] = acc.get(p, 0) + v
    return KappaPoly(acc)
