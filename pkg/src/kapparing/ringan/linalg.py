"""Exact linear algebra over Q by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Sequence

from ..exactnum import format_rational

__all__ = ["MatrixQ", "rank", "determinant", "integer_rows"]


@dataclass
class MatrixQ:
    """Dense rectangular matrix of Fractions with row and column labels."""

    rows: list[list[Fraction]]
    row_labels: list[Any] = field(default_factory=list)
    col_labels: list[Any] = field(default_factory=list)

    def __post_init__(self):
        self.rows = [[Fraction(x) for x in row] for row in self.rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        if self.row_labels and len(self.row_labels) != len(self.rows):
            raise ValueError("row labels do not match row count")
        if self.col_labels and len(self.col_labels) != self.ncols:
            raise ValueError("column labels do not match column count")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else len(self.col_labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "MatrixQ":
        cols = [list(c) for c in zip(*self.rows)] if self.rows else []
        return MatrixQ(cols, list(self.col_labels), list(self.row_labels))

    def rank(self) -> int:
        return rank(self.rows)

    def determinant(self) -> Fraction:
        return determinant(self.rows)

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def diagonal(self) -> list[Fraction]:
        return [self.rows[i][i] for i in range(min(self.shape))]

    def to_json(self) -> dict:
        return {
            "rows": [_label_json(l) for l in self.row_labels],
            "cols": [_label_json(l) for l in self.col_labels],
            "entries": [[format_rational(x) for x in row] for row in self.rows],
        }


def _label_json(label):
    if isinstance(label, tuple) and all(isinstance(x, int) for x in label):
        return list(label)
    return str(label)


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        out.append([int(x * m) for x in row])
    return out


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Eliminate in place; returns (rank, sign * last pivot)."""
    nr = len(a)
    nc = len(a[0]) if a else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nr):
            row_i = a[i]
            f = row_i[c]
            for j in range(c + 1, nc):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank over Q; pivots taken in column order."""
    if not rows:
        return 0
    return _bareiss(integer_rows(rows))[0]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    ints = []
    for row in rows:
        row = [Fraction(x) for x in row]
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        scale /= m
        ints.append([int(x * m) for x in row])
    rk, last = _bareiss(ints)
    if rk < n:
        return Fraction(0)
    return scale * last
