"""Conversions and hypothesis strategies shared by the tests."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from flatband.algebra.laurent import LaurentPoly
from flatband.algebra.matrix import PolyMatrix
from flatband.syzygy.groebner import ModuleElement

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero_rationals = small_rationals.filter(bool)


def laurent_polys(nvars=2, lo=-2, hi=2, max_terms=4, coeffs=small_rationals):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: LaurentPoly(nvars, t))


def polys(nvars=2, max_deg=2, max_terms=4):
    return laurent_polys(nvars, 0, max_deg, max_terms)


def to_dicts(v: ModuleElement) -> list[dict]:
    return [dict(c.terms) for c in v.components()]


def from_dicts(comps: list[dict], nvars: int) -> ModuleElement:
    return ModuleElement.from_components([LaurentPoly(nvars, c) for c in comps], nvars)


def random_poly(rng: random.Random, nvars: int, max_deg: int, n_terms: int) -> LaurentPoly:
    terms = {}
    for _ in range(n_terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        while sum(e) > max_deg:
            e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[e] = Fraction(rng.randint(-3, 3))
    return LaurentPoly(nvars, terms)


def random_element(rng, rank, nvars, max_deg, n_terms=2) -> ModuleElement:
    return ModuleElement.from_components(
        [random_poly(rng, nvars, max_deg, rng.randint(0, n_terms)) for _ in range(rank)], nvars
    )


def matrix_dicts(m: PolyMatrix) -> list[list[dict]]:
    return [[dict(e.terms) for e in row] for row in m.entries]


def columns_dicts(m: PolyMatrix) -> list[list[dict]]:
    return [[dict(m[i, j].terms) for i in range(m.rows)] for j in range(m.cols)]
