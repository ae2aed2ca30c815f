"""Exact weighted dimer tilings on torus lattices via matrix permanents."""
from .errors import CapacityError, DomainError
from .lattice import Color, CubeDecomposition, TorusLattice, cube_decomposition, make_torus
from .permanent import enumerate_tilings, permanent_brute, permanent_exact, permanent_ryser
from .pressure import p0, partition_function, pbar0, pressure_of, pressure_report
from .weighting import (
    TranslationInvariantWeighting,
    WeightMatrix,
    make_constant,
    make_exponential_family,
    make_random,
    max_relative_deviation,
    smoothness,
    to_matrix,
)

__all__ = [
    "CapacityError",
    "Color",
    "CubeDecomposition",
    "DomainError",
    "TorusLattice",
    "TranslationInvariantWeighting",
    "WeightMatrix",
    "cube_decomposition",
    "enumerate_tilings",
    "make_constant",
    "make_exponential_family",
    "make_random",
    "make_torus",
    "max_relative_deviation",
    "p0",
    "partition_function",
    "pbar0",
    "permanent_brute",
    "permanent_exact",
    "permanent_ryser",
    "pressure_of",
    "pressure_report",
    "smoothness",
    "to_matrix",
]

__version__ = "0.1.0"
