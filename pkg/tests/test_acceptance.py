"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import contextlib
import json
import sys
import time
from fractions import Fraction

import pytest
import sympy

from flatband.algebra.laurent import LaurentPoly
from flatband.algebra.matrix import fraction_field_rank
from flatband.bloch import build_bloch, char_det, flat_bands, realize_eigenfunction, specialize
from flatband.builtins import load_builtin
from flatband.cli import main
from flatband.lattice import ball_vertices, thick_boundary
from flatband.syzygy.groebner import buchberger, combine, contains, s_pairs_reduce_to_zero, syzygies
from flatband.syzygy.resolution import free_resolution, kernel_of_map, polynomialize
from flatband.truncation import convergence_report, dim_finite_support_eigs, row_violations, support_width
from helpers import columns_dicts, matrix_dicts, to_dicts
from instances import euler_matrix, membership_instance
from oracles import (
    bounded_kernel_dim,
    bounded_membership,
    comb2_neighbors,
    generic_rank,
    kagome_truncated_nullity,
    leibniz_det,
    monomials_box,
    truncated_nullity,
)


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, title: str):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            with capsys.disabled():
                print(f"\ncriterion {number} ({title}): FAIL - {reason}")
            raise
        with capsys.disabled():
            print(f"\ncriterion {number} ({title}): PASS [{time.perf_counter() - t0:.2f}s]")
    return run


def cli_json(capsys, *argv) -> tuple[int, dict]:
    code = main([*argv, "--json", "-"])
    return code, json.loads(capsys.readouterr().out)


def is_monomial_scalar_multiple(g, target) -> bool:
    """g = c * z^a * target for one monomial z^a (a may be negative) and scalar c != 0."""
    gc, tc = g.components(), target.components()
    k = next(i for i, t in enumerate(tc) if t)
    if not gc[k]:
        return False
    (eg, cg), (et, ct) = max(gc[k].terms.items()), max(tc[k].terms.items())
    shift = tuple(a - b for a, b in zip(eg, et))
    scale = cg / ct
    return all(a == b.shift(shift).scale(scale) for a, b in zip(gc, tc))


# 1 ------------------------------------------------------------------------

def test_criterion_1_kagome_golden_run(criterion, capsys):
    with criterion(1, "kagome golden run"):
        t0 = time.perf_counter()
        code, data = cli_json(capsys, "analyze", "--builtin", "kagome")
        elapsed = time.perf_counter() - t0
        assert code == 0
        bands = data["flat_bands"]
        assert len(bands) == 1, f"{len(bands)} flat bands"
        band = bands[0]
        assert band["density"] == "1/3"
        assert band["minpoly"] == "(3/2) + lambda" and band["mu_minpoly"] == "(1/2) + mu"
        assert band["lambda_approx"] == ["-1.500000000000"]
        assert len(band["generators"]) == 1

        g = load_builtin("kagome")
        s = build_bloch(g)
        gens = kernel_of_map(polynomialize(specialize(s, flat_bands(s)[0]))[0])
        z1, z2, one = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1), LaurentPoly.constant(2, 1)
        from flatband.syzygy.groebner import ModuleElement
        target = ModuleElement.from_components([z1 - z2, one - z1, z2 - one], 2)
        assert len(gens) == 1 and is_monomial_scalar_multiple(gens[0], target)
        assert band["generators"][0] == [c.render() for c in gens[0].components()]

        # brute-force oracle: 75 unknowns at j = 2
        assert kagome_truncated_nullity(2, Fraction(-1, 2)) == 16
        for probe in (Fraction(1, 3), Fraction(-2, 3), Fraction(0), Fraction(1, 2)):
            assert kagome_truncated_nullity(2, probe) == 0, f"probe mu={probe}"
        assert elapsed < 10, f"{elapsed:.1f}s"


# 2 ------------------------------------------------------------------------

def test_criterion_2_kagome_determinant(criterion):
    with criterion(2, "kagome determinant identity"):
        t0 = time.perf_counter()
        det = char_det(build_bloch(load_builtin("kagome")))
        elapsed = time.perf_counter() - t0
        z1, z2, mu = sympy.symbols("z1 z2 mu")

        def to_sympy(p: LaurentPoly):
            out = 0
            for (a, b), c in p.terms.items():
                cc = sum(sympy.Rational(x.numerator, x.denominator) * mu**k for k, x in enumerate(c.coeffs))
                out += cc * z1**a * z2**b
            return sympy.expand(out)

        ours = to_sympy(det)
        # written out from the displayed Bloch matrix, expanded over the 6 permutations
        A = [[-4 * mu, 1 + z2, 1 + z1],
             [1 + 1 / z2, -4 * mu, 1 + z1 / z2],
             [1 + 1 / z1, 1 + z2 / z1, -4 * mu]]
        oracle = sympy.expand(leibniz_det(A))
        t = 4 * mu
        sigma = z1 + 1 / z1 + z2 + 1 / z2 + z1 / z2 + z2 / z1
        formula = sympy.expand(-t**3 + 6 * t + 4 + (t + 2) * sigma)
        assert sympy.expand(ours - oracle) == 0, "char_det disagrees with the permutation expansion"
        assert sympy.expand(ours - formula) == 0, "char_det disagrees with the closed form"
        assert elapsed < 1, f"{elapsed:.2f}s"


# 3 ------------------------------------------------------------------------

def test_criterion_3_kagome_truncation_counts(criterion):
    with criterion(3, "kagome truncation counts"):
        t0 = time.perf_counter()
        g = load_builtin("kagome")
        band = flat_bands(build_bloch(g))[0]
        for j in range(1, 6):
            assert len(ball_vertices(g, j)) == 3 * (2 * j + 1) ** 2
            dim = dim_finite_support_eigs(g, band, j)
            assert dim == (2 * j) ** 2, f"j={j}: {dim}"
        elapsed = time.perf_counter() - t0
        assert elapsed < 60, f"{elapsed:.1f}s"


# 4 ------------------------------------------------------------------------

@pytest.mark.parametrize("name, jmax", [("kagome", 5), ("comb2", 4)])
def test_criterion_4_envelopes(criterion, name, jmax):
    with criterion(4, f"error envelopes, {name}"):
        g = load_builtin(name)
        s = build_bloch(g)
        from flatband.syzygy.resolution import density
        band = flat_bands(s)[0]
        res = density(specialize(s, band), g.n)
        j0 = support_width([realize_eigenfunction(v.components(), g) for v in res.generators])
        rows = convergence_report(g, band, range(1, jmax + 1), j0)
        for r in rows:
            if r.j < j0:
                continue
            assert abs(r.avg_density - res.density) <= r.bound, f"avg j={r.j}"
            assert abs(r.shubin_density - res.density) <= 2 * r.bound, f"shubin j={r.j}"
            ball = ball_vertices(g, r.j)
            assert r.bound == Fraction(len(thick_boundary(g, ball, j0)), len(ball))
            assert row_violations(r, res.density, j0) == []


# 5 ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["square", "cycle"])
def test_criterion_5_negative_controls(criterion, capsys, name):
    with criterion(5, f"negative control, {name}"):
        code, data = cli_json(capsys, "analyze", "--builtin", name)
        assert code == 0 and data["flat_bands"] == []
        main(["analyze", "--builtin", name])
        assert "no flat-band eigenvalues" in capsys.readouterr().out


# 6 ------------------------------------------------------------------------

def test_criterion_6_comb2(criterion, capsys):
    with criterion(6, "comb2 cross-validation"):
        code, data = cli_json(capsys, "analyze", "--builtin", "comb2")
        band = data["flat_bands"][0]
        assert len(data["flat_bands"]) == 1
        assert band["minpoly"] == "1 + lambda" and band["density"] == "1/3"
        g = load_builtin("comb2")
        fb = flat_bands(build_bloch(g))[0]
        assert fb.rational_mu() == 0
        for j in range(1, 5):
            dim = dim_finite_support_eigs(g, fb, j)
            brute = truncated_nullity(comb2_neighbors, 3, 1, (4, 1, 1), j, 0)
            assert dim == brute == 2 * j + 1, f"j={j}: {dim} vs oracle {brute}"


# 7 ------------------------------------------------------------------------

POINTS = [(Fraction(2), Fraction(3)), (Fraction(-5, 2), Fraction(7)), (Fraction(11, 3), Fraction(-2)),
          (Fraction(13), Fraction(5, 7)), (Fraction(-3), Fraction(-17, 5))]


def test_criterion_7_euler_characteristic(criterion):
    with criterion(7, "Euler characteristic on 20 random 3x3"):
        kinds = set()
        for seed in range(20):
            m = euler_matrix(seed)
            res = free_resolution(kernel_of_map(m), 2)
            rank = fraction_field_rank(m)
            oracle = generic_rank(matrix_dicts(m), 2, POINTS)
            assert rank == oracle, f"seed {seed}: rank {rank} vs evaluation oracle {oracle}"
            assert res.euler_characteristic() == 3 - rank, f"seed {seed}: ranks {res.ranks}, rank {rank}"
            kinds.add(rank)
        assert kinds == {1, 2, 3}


# 8 ------------------------------------------------------------------------

def test_criterion_8_groebner_suite(criterion):
    with criterion(8, "Groebner engine suite, 50 instances"):
        members = 0
        for seed in range(50):
            gens, target, constructed = membership_instance(seed)
            gb = buchberger(gens)
            assert s_pairs_reduce_to_zero(gb), f"seed {seed}: S-pair residue"
            ours = contains(gens, target)
            theirs = bounded_membership([to_dicts(g) for g in gens], to_dicts(target), 2, 3)
            assert ours == theirs, f"seed {seed}: engine {ours}, oracle {theirs}"
            if constructed:
                assert ours, f"seed {seed}: constructed member rejected"
            members += ours
            for syz in syzygies(gens):
                assert combine(syz.components(), gens).is_zero(), f"seed {seed}: bad syzygy"
        assert 0 < members < 50


# 9 ------------------------------------------------------------------------

def test_criterion_9_ball_sandwich(criterion):
    with criterion(9, "ball-counting sandwich on the kagome kernel"):
        g = load_builtin("kagome")
        s = build_bloch(g)
        poly, _ = polynomialize(specialize(s, flat_bands(s)[0]))
        gens = kernel_of_map(poly)
        r, d = len(gens), 2
        j0 = max(max(c.max_exponents()) for v in gens for c in v.components() if c)
        gen_columns = [to_dicts(v) for v in gens]

        def ball_kernel(j):
            return bounded_kernel_dim(columns_dicts(poly), d, monomials_box(d, j))

        def ball_syz(j):
            if j < 0:
                return 0
            return bounded_kernel_dim(gen_columns, d, monomials_box(d, j))

        for j in range(2, 7):
            k = ball_kernel(j)
            lower = (j - j0 + 1) ** d * r - ball_syz(j - j0)
            upper = (j + 1) ** d * r - ball_syz(j)
            assert lower <= k <= upper, f"j={j}: {lower} <= {k} <= {upper}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
