"""Finite-section counts: averaged density, Shubin multiplicities, error envelopes.

Everything here is exact nullity over Q(mu); there are no tolerances.
"""
from __future__ import annotations

import threading
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra.linalg import nullity
from .bloch import EigenfunctionTable, FlatBand
from .errors import EngineError
from .lattice import (
    FiniteSection,
    QuotientGraph,
    ball_vertices,
    induced_section,
    thick_boundary,
)


def _mu(band) -> object:
    if isinstance(band, FlatBand):
        return band.field.gen()
    return Fraction(band)


def support_width(generators: Sequence[EigenfunctionTable]) -> int:
    """Largest sup-norm of a support cell after moving each support to start at the origin."""
    if not generators:
        raise ValueError("support_width needs at least one generator")
    width = 1
    for table in generators:
        for cell in table.recentered().support_cells():
            width = max(width, max((abs(x) for x in cell), default=0))
    return width


def dim_finite_support_eigs(graph: QuotientGraph, band, j: int,
                            cancel: Optional[threading.Event] = None) -> int:
    """dim of eigenfunctions (of A - mu D) supported in the ball F_j.

    Unknowns are the values on F_j; the eigen-equation is imposed at every
    vertex of F_j and of its 1-thick boundary, with ambient degrees.
    """
    mu = _mu(band)
    unknowns = ball_vertices(graph, j)
    col = {v: k for k, v in enumerate(unknowns)}
    eq_vertices = sorted(set(unknowns) | thick_boundary(graph, unknowns, 1))
    rows = []
    for v in eq_vertices:
        row: dict = {}
        for w in graph.neighbors(v):
            k = col.get(w)
            if k is not None:
                row[k] = row.get(k, 0) + 1
        k = col.get(v)
        if k is not None:
            row[k] = row.get(k, 0) - mu * graph.degree(v.vertex)
        if row:
            rows.append(row)
    return nullity(rows, len(unknowns), cancel)


def shubin_multiplicity(graph: QuotientGraph, band, j: int, j0: int,
                        cancel: Optional[threading.Event] = None) -> int:
    """Multiplicity of the eigenvalue on the finite graph induced by F_j and its j0-thick boundary."""
    ball = ball_vertices(graph, j)
    section = induced_section(graph, set(ball) | thick_boundary(graph, ball, j0))
    return section_multiplicity(section, band, cancel)


def section_multiplicity(section: FiniteSection, band,
                         cancel: Optional[threading.Event] = None) -> int:
    """Nullity of A - mu D on a finite induced graph, D its internal degrees.

    This is the multiplicity of lam = mu - 1 for that graph's own normalized
    Laplacian.
    """
    mu = _mu(band)
    order = section.ordered_vertices()
    col = {v: k for k, v in enumerate(order)}
    adj: dict = {v: [] for v in order}
    for a, b in section.adjacency:
        adj[a].append(b)
        adj[b].append(a)
    rows = []
    for v in order:
        deg = section.degrees_internal[v]
        if deg == 0:
            raise EngineError(f"vertex {v} has no neighbours inside the truncated graph")
        row = {col[v]: -mu * deg}
        for w in adj[v]:
            row[col[w]] = row.get(col[w], 0) + 1
        rows.append(row)
    return nullity(rows, len(order), cancel)


@dataclass
class TruncationRow:
    j: int
    F_size: int
    boundary_size: int
    dim_finite_support: int
    shubin_mult: int
    avg_density: Fraction
    shubin_density: Fraction
    bound: Fraction

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("avg_density", "shubin_density", "bound"):
            out[k] = fraction_str(out[k])
        return out


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def truncation_row(graph: QuotientGraph, band, j: int, j0: int,
                   cancel: Optional[threading.Event] = None) -> TruncationRow:
    ball = ball_vertices(graph, j)
    size = len(ball)
    boundary = len(thick_boundary(graph, ball, j0))
    dim_fs = dim_finite_support_eigs(graph, band, j, cancel)
    mult = shubin_multiplicity(graph, band, j, j0, cancel)
    return TruncationRow(
        j=j,
        F_size=size,
        boundary_size=boundary,
        dim_finite_support=dim_fs,
        shubin_mult=mult,
        avg_density=Fraction(dim_fs, size),
        shubin_density=Fraction(mult, size),
        bound=Fraction(boundary, size),
    )


def convergence_report(graph: QuotientGraph, band, j_range: Iterable[int], j0: int,
                       cancel: Optional[threading.Event] = None) -> list[TruncationRow]:
    js = list(j_range)
    if not js:
        raise ValueError("empty radius range")
    if js != sorted(js):
        raise ValueError("radii must be ascending")
    return [truncation_row(graph, band, j, j0, cancel) for j in js]


def row_violations(row: TruncationRow, density: Optional[Fraction], j0: int,
                   previous: Optional[TruncationRow] = None) -> list[str]:
    """Broken error envelopes and monotonicity for one row; empty when all hold."""
    problems = []
    if previous is not None and row.dim_finite_support < previous.dim_finite_support:
        problems.append(
            f"j={row.j}: finite-support dimension {row.dim_finite_support} "
            f"dropped below {previous.dim_finite_support} at j={previous.j}"
        )
    if row.shubin_mult < row.dim_finite_support:
        problems.append(
            f"j={row.j}: Shubin multiplicity {row.shubin_mult} below "
            f"finite-support dimension {row.dim_finite_support}"
        )
    if density is None or row.j < j0:
        return problems
    if abs(row.avg_density - density) > row.bound:
        problems.append(
            f"j={row.j}: |avg_density - density| = {fraction_str(abs(row.avg_density - density))} "
            f"exceeds bound {fraction_str(row.bound)}"
        )
    if abs(row.shubin_density - density) > 2 * row.bound:
        problems.append(
            f"j={row.j}: |shubin_density - density| = {fraction_str(abs(row.shubin_density - density))} "
            f"exceeds 2*bound {fraction_str(2 * row.bound)}"
        )
    return problems
