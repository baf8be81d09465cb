"""Analysis pipeline and its two renderings (JSON for machines, text for people).

Both renderings are pure functions of an :class:`AnalysisReport`, so the
JSON is byte-identical across runs with the same inputs. Wall-clock timing
is only included when asked for.
"""
from __future__ import annotations

import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bloch import (
    BlochSystem,
    EigenfunctionTable,
    FlatBand,
    band_from_factor,
    build_bloch,
    char_det,
    flat_bands,
    realize_eigenfunction,
    specialize,
)
from .algebra.unipoly import UniPoly, format_decimal
from .errors import FlatBandError
from .lattice import QuotientGraph
from .syzygy.resolution import DensityResult, density
from .truncation import (
    TruncationRow,
    convergence_report,
    fraction_str,
    row_violations,
    support_width,
)

SCHEMA_VERSION = 1


@dataclass
class AnalysisConfig:
    stage_bound: Optional[int] = None
    threads: int = 1
    jmax: Optional[int] = None
    thickness: Optional[int] = None
    timing: bool = False


@dataclass
class BandReport:
    band: FlatBand
    density: Optional[DensityResult]
    eigenfunctions: list[EigenfunctionTable]
    thickness: Optional[int] = None
    truncation: Optional[list[TruncationRow]] = None
    # used when the band was loaded from a previous report
    stored: Optional[dict] = None

    @property
    def exact_density(self) -> Optional[Fraction]:
        if self.density is not None:
            return self.density.density
        if self.stored is not None and "density" in self.stored:
            return Fraction(self.stored["density"])
        return None


@dataclass
class AnalysisReport:
    graph: QuotientGraph
    source: str
    config: AnalysisConfig
    bands: list[BandReport] = field(default_factory=list)
    timing: dict = field(default_factory=dict)


class _Clock:
    def __init__(self, sink: dict):
        self.sink = sink

    def __call__(self, stage: str):
        clock = self

        class _Span:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                clock.sink[stage] = clock.sink.get(stage, 0.0) + time.perf_counter() - self.t0

        return _Span()


def _analyze_band(system: BlochSystem, band: FlatBand, config: AnalysisConfig,
                  cancel: Optional[threading.Event]) -> BandReport:
    m = specialize(system, band)
    result = density(m, system.n, config.stage_bound, cancel)
    tables = [realize_eigenfunction(g.components(), system.graph) for g in result.generators]
    return BandReport(band, result, tables)


def analyze(graph: QuotientGraph, source: str, config: AnalysisConfig | None = None,
            cancel: Optional[threading.Event] = None) -> AnalysisReport:
    config = config or AnalysisConfig()
    report = AnalysisReport(graph, source, config)
    clock = _Clock(report.timing)
    with clock("bloch"):
        system = build_bloch(graph)
        det = char_det(system)
    with clock("flat_bands"):
        bands = flat_bands(system, det)
    with clock("density"):
        if config.threads > 1 and len(bands) > 1:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                futures = [pool.submit(_analyze_band, system, b, config, cancel) for b in bands]
                report.bands = [f.result() for f in futures]
        else:
            report.bands = [_analyze_band(system, b, config, cancel) for b in bands]
    return report


def add_truncation(report: AnalysisReport, jmax: int, thickness: Optional[int] = None,
                   cancel: Optional[threading.Event] = None) -> AnalysisReport:
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    clock = _Clock(report.timing)
    with clock("truncation"):
        for br in report.bands:
            if thickness is not None:
                j0 = thickness
            elif br.eigenfunctions:
                j0 = support_width(br.eigenfunctions)
            else:
                j0 = int(br.stored["support_width"])
            br.thickness = j0
            br.truncation = convergence_report(report.graph, br.band, range(1, jmax + 1), j0, cancel)
    report.config.jmax = jmax
    report.config.thickness = thickness
    return report


def violations(report: AnalysisReport) -> list[str]:
    """Every broken truncation invariant, named by band, row and bound."""
    out = []
    for br in report.bands:
        label = br.band.describe()
        if not br.band.lambdas_in_range():
            out.append(f"band {label}: eigenvalue outside [-2, 0]")
        prev = None
        for row in br.truncation or []:
            for msg in row_violations(row, br.exact_density, br.thickness or 1, prev):
                out.append(f"band {label}: {msg}")
            prev = row
    return out


def bands_from_json(data: dict, graph: QuotientGraph) -> list[BandReport]:
    """Rebuild bands from a previous ``analyze --json`` document for the same graph."""
    g = data.get("graph", {})
    if g.get("vertices") != list(graph.vertices) or g.get("d") != graph.dim:
        raise ValueError("stored analysis was made for a different graph")
    if g.get("edges") is not None and g["edges"] != _edges_json(graph):
        raise ValueError("stored analysis was made for a different graph")
    out = []
    for entry in data.get("flat_bands", []):
        q = UniPoly.parse(entry["mu_minpoly"], "mu")
        band = band_from_factor(q, int(entry.get("multiplicity_in_gcd", 1)))
        if band is None:
            raise ValueError(f"stored minpoly {entry['mu_minpoly']!r} has no real root")
        out.append(BandReport(band, None, [], stored=entry))
    out.sort(key=lambda b: b.band.sort_key())
    return out


def _edges_json(graph: QuotientGraph) -> list:
    return [[graph.vertices[i], graph.vertices[j], list(g)] for i, j, g in graph.edges]


def _band_json(br: BandReport, graph: QuotientGraph) -> dict:
    band = br.band
    if br.density is None and br.stored is not None:
        entry = {k: v for k, v in br.stored.items() if k != "truncation"}
    else:
        res = br.density
        entry = {
            "minpoly": band.describe(),
            "mu_minpoly": band.minpoly_factor.render("mu"),
            "multiplicity_in_gcd": band.multiplicity_in_gcd,
            "lambda_approx": [format_decimal(x) for x in band.lambda_roots()],
            "approximation": "decimal roots are non-authoritative; minpoly is exact",
            "density": fraction_str(res.density),
            "ranks": list(res.ranks),
            "kernel_rank": res.kernel_rank,
            "generators": [g.render() for g in res.generators],
            "polynomial_shift": list(res.shift),
            "support_width": support_width(br.eigenfunctions),
            "eigenfunctions": [t.render(graph) for t in br.eigenfunctions],
        }
    if br.truncation is not None:
        entry["thickness"] = br.thickness
        entry["truncation"] = [row.to_json() for row in br.truncation]
    return entry


def to_json(report: AnalysisReport) -> dict:
    g = report.graph
    out = {
        "schema": SCHEMA_VERSION,
        "source": report.source,
        "graph": {
            "n": g.n,
            "d": g.dim,
            "vertices": list(g.vertices),
            "degrees": list(g.degrees),
            "edges": _edges_json(g),
        },
        "settings": {
            "stage_bound": report.config.stage_bound if report.config.stage_bound is not None else g.dim + 3,
            "jmax": report.config.jmax,
            "thickness": report.config.thickness,
        },
        "flat_bands": [_band_json(br, g) for br in report.bands],
    }
    if report.config.timing:
        out["timing"] = {k: round(v, 6) for k, v in sorted(report.timing.items())}
    return out


def dumps(report: AnalysisReport) -> str:
    return json.dumps(to_json(report), indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _table(rows: list[TruncationRow]) -> list[str]:
    head = ["j", "|F_j|", "|bdry|", "dim_fs", "shubin", "avg_density", "shubin_density", "bound"]
    body = [
        [str(r.j), str(r.F_size), str(r.boundary_size), str(r.dim_finite_support),
         str(r.shubin_mult), fraction_str(r.avg_density), fraction_str(r.shubin_density),
         fraction_str(r.bound)]
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths))
    return [fmt(head)] + [fmt(b) for b in body]


def render_text(report: AnalysisReport) -> str:
    data = to_json(report)
    g = data["graph"]
    lines = [
        f"graph: {data['source']}  (n={g['n']}, d={g['d']}, degrees={g['degrees']})",
    ]
    if not data["flat_bands"]:
        lines.append("no flat-band eigenvalues")
    for k, (entry, br) in enumerate(zip(data["flat_bands"], report.bands), start=1):
        lines.append(f"flat band {k}: {entry['minpoly']} = 0")
        approx = ", ".join(entry.get("lambda_approx", []))
        lines.append(f"  lambda ~ {approx}  (decimal approximation, non-authoritative)")
        lines.append(f"  density: {entry['density']}")
        if "ranks" in entry:
            lines.append(f"  resolution ranks: {entry['ranks']}  kernel rank: {entry['kernel_rank']}")
        for gen in entry.get("generators", []):
            lines.append("  generator: (" + ", ".join(gen) + ")")
        if br.truncation is not None:
            lines.append(f"  truncation (thickness j0={br.thickness}):")
            lines.extend("    " + t for t in _table(br.truncation))
    if report.config.timing:
        lines.append("timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(report.timing.items())))
    return "\n".join(lines) + "\n"
