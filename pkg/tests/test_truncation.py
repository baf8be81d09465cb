from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flatband.algebra.laurent import LaurentPoly
from flatband.bloch import EigenfunctionTable, build_bloch, flat_bands, realize_eigenfunction, specialize
from flatband.builtins import load_builtin
from flatband.errors import EngineError
from flatband.lattice import CellVertex, ball_vertices, induced_section, parse_graph
from flatband.syzygy import density
from flatband.truncation import (
    TruncationRow,
    convergence_report,
    dim_finite_support_eigs,
    row_violations,
    section_multiplicity,
    shubin_multiplicity,
    support_width,
)
from oracles import dense_rank, kagome_truncated_nullity
from test_bloch import IRRATIONAL


def band_of(name):
    g = load_builtin(name)
    return g, flat_bands(build_bloch(g))[0]


def kagome_table():
    z1, z2 = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    one = LaurentPoly.constant(2, 1)
    return realize_eigenfunction([z1 - z2, one - z1, z2 - one], load_builtin("kagome"))


def test_support_width_examples():
    t = kagome_table()
    assert support_width([t]) == 1
    assert support_width([t.translated((5, 0))]) == 1
    comb = EigenfunctionTable({CellVertex((0,), 1): 1, CellVertex((0,), 2): -1})
    assert support_width([comb]) == 1
    wide = EigenfunctionTable({CellVertex((0, 0), 0): 1, CellVertex((3, -1), 0): 1})
    assert support_width([wide]) == 3
    with pytest.raises(ValueError):
        support_width([])


@pytest.mark.parametrize("j", [1, 2, 3])
def test_kagome_finite_support_dims(j):
    g, band = band_of("kagome")
    assert dim_finite_support_eigs(g, band, j) == (2 * j) ** 2


@pytest.mark.parametrize("j", [1, 2])
def test_kagome_dims_match_independent_oracle(j):
    g, band = band_of("kagome")
    assert dim_finite_support_eigs(g, band, j) == kagome_truncated_nullity(j, Fraction(-1, 2))
    assert dim_finite_support_eigs(g, Fraction(1, 3), j) == kagome_truncated_nullity(j, Fraction(1, 3)) == 0


def test_independent_translates_span_kagome_space():
    g, band = band_of("kagome")
    j = 2
    ball = ball_vertices(g, j)
    inside = set(ball)
    base = kagome_table()
    copies = []
    for hx in range(-j, j + 2):
        for hy in range(-j, j + 2):
            t = base.translated((hx, hy))
            if set(t.entries) <= inside:
                copies.append(t)
    assert len(copies) == (2 * j) ** 2
    rows = [[Fraction(t.entries.get(v, 0)) for v in ball] for t in copies]
    assert dense_rank(rows, len(ball)) == len(copies)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_comb2_dims(j):
    g, band = band_of("comb2")
    assert dim_finite_support_eigs(g, band, j) == 2 * j + 1


def test_square_has_no_finite_support_eigs():
    g = load_builtin("square")
    for mu0 in (Fraction(0), Fraction(-1, 2), Fraction(1, 4)):
        assert dim_finite_support_eigs(g, mu0, 2) == 0


def test_shubin_examples():
    g, band = band_of("kagome")
    m = shubin_multiplicity(g, band, 3, 1)
    size = 3 * 49
    assert abs(Fraction(m, size) - Fraction(1, 3)) <= 2 * Fraction(42, size)
    g2, band2 = band_of("comb2")
    assert shubin_multiplicity(g2, band2, 2, 1) >= dim_finite_support_eigs(g2, band2, 2) == 5


def test_finite_triangle():
    g = load_builtin("kagome")
    tri = induced_section(g, [CellVertex((0, 0), i) for i in range(3)])
    assert section_multiplicity(tri, Fraction(0)) == 0
    assert section_multiplicity(tri, Fraction(-1, 2)) == 2
    assert section_multiplicity(tri, Fraction(1)) == 1


def test_isolated_vertex_in_section_is_rejected():
    g = load_builtin("kagome")
    lone = induced_section(g, [CellVertex((0, 0), 0)])
    with pytest.raises(EngineError):
        section_multiplicity(lone, Fraction(0))


def test_convergence_report_kagome_closed_form():
    g, band = band_of("kagome")
    rows = convergence_report(g, band, range(1, 4), 1)
    for r in rows:
        assert r.F_size == 3 * (2 * r.j + 1) ** 2
        assert r.avg_density == Fraction((2 * r.j) ** 2, 3 * (2 * r.j + 1) ** 2)
    with pytest.raises(ValueError):
        convergence_report(g, band, [], 1)
    with pytest.raises(ValueError):
        convergence_report(g, band, [2, 1], 1)


@pytest.mark.parametrize("name", ["kagome", "comb2"])
def test_rows_satisfy_envelopes(name):
    g, band = band_of(name)
    res = density(specialize(build_bloch(g), band), g.n)
    tables = [realize_eigenfunction(v.components(), g) for v in res.generators]
    j0 = support_width(tables)
    rows = convergence_report(g, band, range(1, 4), j0)
    prev = None
    for r in rows:
        assert row_violations(r, res.density, j0, prev) == []
        assert r.shubin_mult >= r.dim_finite_support
        prev = r
    if name == "comb2":
        assert {r.avg_density for r in rows} == {Fraction(1, 3)}


def test_irrational_band_rows():
    g = parse_graph(IRRATIONAL)
    band = flat_bands(build_bloch(g))[0]
    rows = convergence_report(g, band, range(1, 4), 1)
    assert [r.dim_finite_support for r in rows] == [3, 5, 7]
    for r in rows:
        assert row_violations(r, Fraction(1, 5), 1) == []


def test_square_probe_report_all_zero():
    g = load_builtin("square")
    rows = convergence_report(g, Fraction(-1, 3), range(1, 3), 1)
    assert all(r.dim_finite_support == 0 for r in rows)


def test_elimination_stays_exact():
    from flatband.algebra.linalg import Echelon
    ech = Echelon()
    ech.add({0: 3, 1: 1})
    assert all(isinstance(v, Fraction) for v in ech.pivots[0].values())


def test_violations_are_named():
    bad = TruncationRow(3, 10, 1, 9, 0, Fraction(9, 10), Fraction(0), Fraction(1, 10))
    msgs = row_violations(bad, Fraction(1, 3), 1,
                          TruncationRow(2, 8, 1, 10, 10, Fraction(1), Fraction(1), Fraction(1, 8)))
    text = "\n".join(msgs)
    assert "j=3" in text and "exceeds bound 1/10" in text and "exceeds 2*bound 1/5" in text
    assert "dropped below" in text and "Shubin multiplicity 0 below" in text


@settings(max_examples=10)
@given(st.integers(1, 3))
def test_dims_nondecreasing(j):
    g, band = band_of("kagome")
    assert dim_finite_support_eigs(g, band, j) <= dim_finite_support_eigs(g, band, j + 1)
