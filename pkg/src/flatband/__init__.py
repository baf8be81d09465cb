"""Exact flat-band eigenvalues, finite-support eigenfunctions and densities
for the normalized Laplacian of Z^d-periodic graphs."""
from .bloch import (
    BlochSystem,
    EigenfunctionTable,
    FlatBand,
    build_bloch,
    char_det,
    flat_bands,
    realize_eigenfunction,
    specialize,
)
from .builtins import BUILTINS, load_builtin
from .errors import EngineError, FlatBandError, GraphFormatError
from .lattice import CellVertex, Edge, QuotientGraph, parse_graph
from .report import AnalysisConfig, AnalysisReport, analyze
from .syzygy import DensityResult, density, free_resolution
from .truncation import (
    TruncationRow,
    convergence_report,
    dim_finite_support_eigs,
    shubin_multiplicity,
    support_width,
)

__version__ = "0.1.0"
