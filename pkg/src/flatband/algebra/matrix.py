"""Matrices of Laurent polynomials."""
from __future__ import annotations

import threading
from typing import Callable, Optional, Sequence

from .laurent import LaurentPoly
from .linalg import check_cancel

COFACTOR_MAX = 6


class PolyMatrix:
    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], nvars: Optional[int] = None):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width
        self.nvars = nvars if nvars is not None else rows[0][0].nvars

    @classmethod
    def zeros(cls, rows: int, cols: int, nvars: int) -> "PolyMatrix":
        return cls([[LaurentPoly.zero(nvars) for _ in range(cols)] for _ in range(rows)], nvars)

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        m = cls.zeros(n, n, nvars)
        for i in range(n):
            m.entries[i][i] = LaurentPoly.constant(nvars, 1)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries], self.nvars)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self.entries)], self.nvars)

    def column(self, j: int) -> list[LaurentPoly]:
        return [row[j] for row in self.entries]

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.nvars,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.nvars,
        )

    def __matmul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = LaurentPoly.zero(self.nvars)
                    for k in range(self.cols):
                        a, b = self.entries[i][k], other.entries[k][j]
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return PolyMatrix(out, self.nvars)
        # vector of LaurentPoly
        if len(other) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.entries:
            acc = LaurentPoly.zero(self.nvars)
            for a, b in zip(row, other):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda e: e.scale(c))

    def evaluate(self, point) -> list[list]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def render(self) -> list[list[str]]:
        return [[e.render() for e in row] for row in self.entries]


def _cofactor_det(m: PolyMatrix) -> LaurentPoly:
    n = m.rows
    memo: dict = {}

    def det(k: int, cols: tuple) -> LaurentPoly:
        # rows k..n-1 against the given columns
        if k == n:
            return LaurentPoly.constant(m.nvars, 1)
        key = cols
        if key in memo:
            return memo[key]
        acc = LaurentPoly.zero(m.nvars)
        for pos, c in enumerate(cols):
            a = m.entries[k][c]
            if not a:
                continue
            sub = det(k + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = a * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return det(0, tuple(range(n)))


def _bareiss(m: PolyMatrix, cancel: Optional[threading.Event] = None):
    """Fraction-free row echelon form; returns (rank, last pivot, sign, pivot columns)."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    prev = LaurentPoly.constant(m.nvars, 1)
    sign = 1
    r = 0
    pivcols = []
    for c in range(cols):
        if r == rows:
            break
        check_cancel(cancel)
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, rows):
            lead = a[i][c]
            for j in range(c + 1, cols):
                num = piv * a[i][j]
                if lead and a[r][j]:
                    num = num - lead * a[r][j]
                a[i][j] = num.exact_div(prev)
            a[i][c] = LaurentPoly.zero(m.nvars)
        prev = piv
        pivcols.append(c)
        r += 1
    return r, prev, sign, pivcols


def determinant(m: PolyMatrix, cancel: Optional[threading.Event] = None) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to 6x6, Bareiss elimination above.

    The Bareiss path divides exactly and therefore needs field coefficients.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if m.rows <= COFACTOR_MAX:
        return _cofactor_det(m)
    rk, last, sign, _ = _bareiss(m, cancel)
    if rk < m.rows:
        return LaurentPoly.zero(m.nvars)
    return last if sign > 0 else -last


def fraction_field_rank(m: PolyMatrix, cancel: Optional[threading.Event] = None) -> int:
    """Rank over the rational function field k(z_1..z_d)."""
    return _bareiss(m, cancel)[0]
