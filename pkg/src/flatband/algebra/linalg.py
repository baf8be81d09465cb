"""Sparse exact Gaussian elimination over a field.

Rows are dicts ``{column: value}``. Values are ``Fraction`` or number-field
elements. Pivot columns are taken in increasing order, so callers that number
unknowns along the lattice get banded fill-in.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Optional

from ..errors import Cancelled


def check_cancel(cancel: Optional[threading.Event]) -> None:
    if cancel is not None and cancel.is_set():
        raise Cancelled("elimination cancelled")


class Echelon:
    """Incremental row echelon form; pivot rows are normalized to 1."""

    def __init__(self, cancel: Optional[threading.Event] = None):
        self.pivots: dict[int, dict] = {}
        self.cancel = cancel

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        # ints would turn into floats on inversion
        r = {c: Fraction(v) if isinstance(v, int) else v for c, v in row.items() if v}
        done: dict = {}
        while r:
            c = min(r)
            v = r.pop(c)
            piv = self.pivots.get(c)
            if piv is None:
                done[c] = v
                continue
            for k, pv in piv.items():
                if k == c:
                    continue
                nv = r.get(k, 0) - v * pv
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return done

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it increased the rank."""
        check_cancel(self.cancel)
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        self.pivots[c] = {k: v * inv for k, v in r.items()}
        return True


def rank(rows: Iterable[dict], cancel: Optional[threading.Event] = None) -> int:
    ech = Echelon(cancel)
    for row in rows:
        ech.add(row)
    return ech.rank


def nullity(rows: Iterable[dict], ncols: int, cancel: Optional[threading.Event] = None) -> int:
    return ncols - rank(rows, cancel)


def nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows}, as sparse dicts."""
    ech = Echelon()
    for row in rows:
        ech.add(row)
    # back-substitute to reduced echelon form
    cols = sorted(ech.pivots, reverse=True)
    red: dict[int, dict] = {}
    for c in cols:
        row = dict(ech.pivots[c])
        for k in [k for k in row if k != c and k in red]:
            v = row.pop(k)
            for kk, vv in red[k].items():
                if kk == k:
                    continue
                nv = row.get(kk, 0) - v * vv
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
        red[c] = row
    basis = []
    for free in range(ncols):
        if free in red:
            continue
        vec = {free: 1}
        for c, row in red.items():
            v = row.get(free)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis
