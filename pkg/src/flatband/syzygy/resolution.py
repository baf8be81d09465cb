"""Kernels of polynomial matrices, free resolutions and the density formula."""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..algebra.laurent import LaurentPoly
from ..algebra.matrix import PolyMatrix, fraction_field_rank
from ..errors import DensityMismatchError, ResolutionError, ZeroKernelError
from .groebner import ModuleElement, syzygies

log = logging.getLogger(__name__)


def polynomialize(m: PolyMatrix) -> tuple[PolyMatrix, tuple[int, ...]]:
    """Multiply every entry by the smallest z^P that clears all negative exponents."""
    shift = [0] * m.nvars
    for row in m.entries:
        for e in row:
            for i, x in enumerate(e.min_exponents()):
                if e and -x > shift[i]:
                    shift[i] = -x
    shift = tuple(shift)
    if not any(shift):
        return m, shift
    return m.map(lambda e: e.shift(shift)), shift


def columns_of(m: PolyMatrix) -> list[ModuleElement]:
    return [ModuleElement.from_components(m.column(j), m.nvars) for j in range(m.cols)]


def matrix_of(gens: Sequence[ModuleElement], rank: int, nvars: int) -> PolyMatrix:
    """Matrix whose columns are the given vectors (rank x len(gens))."""
    if not gens:
        raise ValueError("no columns")
    cols = [g.components() for g in gens]
    return PolyMatrix([[cols[j][i] for j in range(len(gens))] for i in range(rank)], nvars)


def kernel_of_map(m: PolyMatrix, cancel=None) -> list[ModuleElement]:
    """Generators of {v in k[z]^cols : m v = 0}, as syzygies of the columns."""
    if not all(e.is_polynomial() for row in m.entries for e in row):
        raise ValueError("kernel_of_map expects polynomial entries; polynomialize first")
    return syzygies(columns_of(m), cancel)


@dataclass
class FreeResolution:
    ranks: list[int]
    maps: list[PolyMatrix]
    target_rank: int
    stages: list[list[ModuleElement]] = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


def free_resolution(gens: Sequence[ModuleElement], d: int, stage_bound: Optional[int] = None,
                    cancel=None) -> FreeResolution:
    """Iterate syzygies until they vanish.

    Map ``t`` sends ``R^{r_t}`` to ``R^{r_{t-1}}`` (``R^target`` for t = 0);
    its columns are the stage-t generators. Every stage is pruned of
    redundant generators, which keeps the resolution short without making it
    minimal in the graded sense.
    """
    gens = [g for g in gens if g]
    bound = d + 3 if stage_bound is None else stage_bound
    if not gens:
        return FreeResolution([], [], 0)
    target = gens[0].rank
    nvars = gens[0].nvars
    ranks, maps, stages = [], [], []
    current = list(gens)
    rank_in = target
    while current:
        if len(ranks) >= bound:
            raise ResolutionError(
                f"free resolution did not terminate within {bound} stages (ranks so far {ranks})"
            )
        ranks.append(len(current))
        maps.append(matrix_of(current, rank_in, nvars))
        stages.append(current)
        rank_in = len(current)
        current = syzygies(current, cancel)
        log.debug("resolution stage %d: %d generators", len(ranks), len(current))
    return FreeResolution(ranks, maps, target, stages)


@dataclass
class DensityResult:
    density: Fraction
    ranks: list[int]
    kernel_rank: int
    generators: list[ModuleElement]
    shift: tuple[int, ...] = ()
    resolution: Optional[FreeResolution] = None


def density(m: PolyMatrix, n: int, stage_bound: Optional[int] = None,
            cancel: Optional[threading.Event] = None) -> DensityResult:
    """Density of a flat band from the kernel of its Bloch matrix.

    ``m`` is the specialized Bloch matrix (Laurent entries are fine; it is
    polynomialized here). The alternating rank sum of the kernel's free
    resolution is cross-checked against ``n - rank`` over the fraction field.
    """
    poly, shift = polynomialize(m)
    gens = kernel_of_map(poly, cancel)
    if not gens:
        raise ZeroKernelError("zero kernel: the value is not a flat-band eigenvalue")
    res = free_resolution(gens, m.nvars, stage_bound, cancel)
    alt = res.euler_characteristic()
    oracle = n - fraction_field_rank(poly, cancel)
    if alt != oracle:
        raise DensityMismatchError(
            f"resolution ranks {res.ranks} give {alt}, fraction-field rank gives {oracle}"
        )
    return DensityResult(Fraction(alt, n), res.ranks, oracle, gens, shift, res)
