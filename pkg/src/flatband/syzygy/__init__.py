"""Module Gröbner bases, syzygies, free resolutions and eigenvalue densities."""
from .groebner import (
    GroebnerBasis,
    ModuleElement,
    buchberger,
    normal_form,
    s_pairs_reduce_to_zero,
    syzygies,
)
from .resolution import (
    DensityResult,
    FreeResolution,
    density,
    free_resolution,
    kernel_of_map,
    polynomialize,
)

__all__ = [
    "DensityResult",
    "FreeResolution",
    "GroebnerBasis",
    "ModuleElement",
    "buchberger",
    "density",
    "free_resolution",
    "kernel_of_map",
    "normal_form",
    "polynomialize",
    "s_pairs_reduce_to_zero",
    "syzygies",
]
