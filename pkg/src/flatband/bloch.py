"""Bloch matrices, flat-band detection and eigenfunction realization.

The normalized Laplacian satisfies ``Delta - lam = D^-1/2 (A - mu D) D^-1/2``
with ``mu = 1 + lam``, so every question about eigenvalues, kernels and
densities is asked of ``A_hat(z) - mu * D_hat`` with rational entries.

Transform convention: a finite-support function ``f`` maps to the vector with
components ``F_i = sum_c f(c, i) z^(-c)``. Under this convention an edge
``(i, j, g)`` contributes ``z^g`` to ``A_hat[i][j]`` and a monomial ``z^k`` in
component ``i`` is the value at vertex ``i`` of cell ``-k``. Multiplying by
``z^h`` translates a function by ``-h`` cells.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra.laurent import LaurentPoly
from .algebra.matrix import PolyMatrix, determinant
from .algebra.numberfield import AlgebraicScalar, NumberField
from .algebra.unipoly import (
    UniPoly,
    _variations,
    approx_real_roots,
    factor_rational,
    isolate_real_roots,
    sturm_sequence,
    univariate_gcd,
)
from .lattice import CellVertex, QuotientGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlochSystem:
    graph: QuotientGraph
    A_hat: PolyMatrix
    D_hat: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def dim(self) -> int:
        return self.graph.dim


def build_bloch(graph: QuotientGraph) -> BlochSystem:
    d, n = graph.dim, graph.n
    entries = [[LaurentPoly.zero(d) for _ in range(n)] for _ in range(n)]
    for i, j, g in graph.edges:
        zg = LaurentPoly.monomial(g)
        entries[i][j] = entries[i][j] + zg
        entries[j][i] = entries[j][i] + zg.conjugate_z()
    return BlochSystem(graph, PolyMatrix(entries, d), graph.degrees)


def char_det(system: BlochSystem) -> LaurentPoly:
    """det(A_hat(z) - mu D_hat) as a Laurent polynomial in z with Q[mu] coefficients.

    The determinant is taken with mu as an extra Laurent variable over Q and
    regrouped afterwards, so the elimination path only ever sees field
    coefficients.
    """
    d, n = system.dim, system.n
    ext = d + 1
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = LaurentPoly(ext, {k + (0,): c for k, c in system.A_hat[i, j].terms.items()})
            if i == j:
                e = e - LaurentPoly.monomial((0,) * d + (1,), system.D_hat[i])
            row.append(e)
        rows.append(row)
    det = determinant(PolyMatrix(rows, ext))
    grouped: dict = {}
    for e, c in det.terms.items():
        zk, mk = e[:d], e[d]
        grouped.setdefault(zk, {})[mk] = c
    terms = {
        zk: UniPoly(powers.get(k, 0) for k in range(max(powers) + 1))
        for zk, powers in grouped.items()
    }
    return LaurentPoly(d, terms)


@dataclass(frozen=True)
class FlatBand:
    """One irreducible factor of the flat-band polynomial in mu.

    All real roots of ``minpoly_factor`` are conjugate eigenvalues that share
    kernel generators and density; they are reported together.
    """

    minpoly_factor: UniPoly
    multiplicity_in_gcd: int
    field: NumberField
    mu: AlgebraicScalar
    lam: AlgebraicScalar
    root_intervals: tuple

    @property
    def lambda_minpoly(self) -> UniPoly:
        return self.minpoly_factor.shift(1)

    @property
    def degree(self) -> int:
        return self.minpoly_factor.degree

    def mu_roots(self, digits: int = 12) -> list[Fraction]:
        return approx_real_roots(self.minpoly_factor, digits)

    def lambda_roots(self, digits: int = 12) -> list[Fraction]:
        return [m - 1 for m in self.mu_roots(digits)]

    def rational_mu(self) -> Fraction | None:
        if self.degree == 1:
            return -self.minpoly_factor.coeffs[0]
        return None

    def lambdas_in_range(self) -> bool:
        """True when every real root lam lies in [-2, 0]."""
        q = self.lambda_minpoly
        seq = sturm_sequence(q)
        inside = _variations(seq, Fraction(-2)) - _variations(seq, Fraction(0))
        if q(Fraction(-2)) == 0:
            inside += 1
        return inside == len(self.root_intervals)

    def sort_key(self):
        lo, hi = self.root_intervals[0]
        return (lo, hi, self.minpoly_factor.coeffs)

    def describe(self) -> str:
        return self.lambda_minpoly.render("lambda")


def flat_band_polynomial(det: LaurentPoly) -> UniPoly:
    """Monic gcd of the z-coefficients of the characteristic determinant."""
    return univariate_gcd(list(det.terms.values()))


def flat_bands(system: BlochSystem, det: LaurentPoly | None = None) -> list[FlatBand]:
    det = char_det(system) if det is None else det
    if det.is_zero():
        raise ValueError("characteristic determinant vanishes identically in mu")
    p = flat_band_polynomial(det)
    if p.degree < 1:
        return []
    bands = []
    for q, mult in factor_rational(p):
        band = band_from_factor(q, mult)
        if band is None:
            log.warning("flat-band factor %s has no real roots; skipped", q.render("mu"))
            continue
        bands.append(band)
    bands.sort(key=FlatBand.sort_key)
    return bands


def band_from_factor(q: UniPoly, multiplicity: int = 1) -> FlatBand | None:
    """FlatBand for an irreducible factor q(mu); None when q has no real root."""
    q = q.monic()
    intervals = isolate_real_roots(q)
    if not intervals:
        return None
    nf = NumberField(q, "mu")
    mu = AlgebraicScalar(nf, UniPoly.x(), intervals[0])
    lam = AlgebraicScalar(nf, UniPoly((-1, 1)))
    return FlatBand(q, multiplicity, nf, mu, lam, tuple(intervals))


def specialize(system: BlochSystem, band: FlatBand) -> PolyMatrix:
    """A_hat(z) - mu D_hat with mu the root class, entries over Q(mu)."""
    nf = band.field
    mu = nf.gen()
    rows = []
    for i in range(system.n):
        row = []
        for j in range(system.n):
            e = system.A_hat[i, j].map_coefficients(nf.coerce)
            if i == j:
                e = e - LaurentPoly.constant(system.dim, nf.coerce(mu * system.D_hat[i]))
            row.append(e)
        rows.append(row)
    return PolyMatrix(rows, system.dim)


def specialize_at(system: BlochSystem, mu0) -> PolyMatrix:
    """A_hat(z) - mu0 D_hat for a rational probe value mu0."""
    mu0 = Fraction(mu0)
    rows = []
    for i in range(system.n):
        row = []
        for j in range(system.n):
            e = system.A_hat[i, j]
            if i == j:
                e = e - mu0 * system.D_hat[i]
            row.append(e)
        rows.append(row)
    return PolyMatrix(rows, system.dim)


@dataclass
class EigenfunctionTable:
    """Finite-support function on the infinite graph, ``CellVertex -> value``."""

    entries: dict = field(default_factory=dict)

    def support_cells(self) -> list[tuple[int, ...]]:
        return sorted({v.cell for v in self.entries})

    def translated(self, h: Sequence[int]) -> "EigenfunctionTable":
        return EigenfunctionTable(
            {CellVertex(tuple(a + b for a, b in zip(v.cell, h)), v.vertex): c
             for v, c in self.entries.items()}
        )

    def recentered(self) -> "EigenfunctionTable":
        """Translate so the coordinate-wise minimum support cell is the origin."""
        cells = self.support_cells()
        low = tuple(min(c[i] for c in cells) for i in range(len(cells[0])))
        return self.translated(tuple(-x for x in low))

    def render(self, graph: QuotientGraph) -> list[dict]:
        return [
            {"cell": list(v.cell), "vertex": graph.vertices[v.vertex], "value": str(c)}
            for v, c in sorted(self.entries.items())
        ]


def realize_eigenfunction(vector: Sequence[LaurentPoly], graph: QuotientGraph) -> EigenfunctionTable:
    """Inverse transform: monomial c*z^k in component i becomes value c at (cell -k, vertex i)."""
    if len(vector) != graph.n:
        raise ValueError(f"vector has length {len(vector)}, expected {graph.n}")
    entries = {}
    for i, comp in enumerate(vector):
        for k, c in comp.terms.items():
            entries[CellVertex(tuple(-x for x in k), i)] = c
    if not entries:
        raise ValueError("the zero vector has no eigenfunction")
    return EigenfunctionTable(entries)


def bloch_transform(table: EigenfunctionTable | Mapping, graph: QuotientGraph) -> list[LaurentPoly]:
    entries = table.entries if isinstance(table, EigenfunctionTable) else table
    comps: list[dict] = [{} for _ in range(graph.n)]
    for v, c in entries.items():
        if c:
            comps[v.vertex][tuple(-x for x in v.cell)] = c
    return [LaurentPoly(graph.dim, t) for t in comps]


def eigen_residual(graph: QuotientGraph, table: EigenfunctionTable, mu) -> dict:
    """Nonzero values of (A - mu D) g at every vertex touched by the support."""
    values = table.entries
    touched = set(values)
    for v in values:
        touched.update(graph.neighbors(v))
    out = {}
    for v in touched:
        acc = -mu * graph.degree(v.vertex) * values.get(v, 0)
        for w in graph.neighbors(v):
            acc = acc + values.get(w, 0)
        if acc:
            out[v] = acc
    return out
