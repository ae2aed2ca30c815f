"""Partition function, pressure, and constant-weighting reference values."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_CAPS
from .errors import DomainError
from .permanent import permanent_ryser
from .weighting import (
    TranslationInvariantWeighting,
    make_constant,
    max_relative_deviation,
    smoothness,
    to_matrix,
)

_EXACT_LOG_FACTORIAL_MAX = 20


def log_factorial(n: int) -> float:
    if n < 0:
        raise DomainError("factorial of a negative integer")
    if n <= _EXACT_LOG_FACTORIAL_MAX:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1)


def partition_function(w: TranslationInvariantWeighting, threads: int = 1) -> float:
    return permanent_ryser(to_matrix(w), threads=threads).value


def log_partition_function(w: TranslationInvariantWeighting, threads: int = 1) -> float:
    res = permanent_ryser(to_matrix(w), threads=threads)
    if res.log_value is None:
        raise DomainError("partition function is not positive")
    return res.log_value


def pressure_of(Z: float, N: int) -> float:
    """Pressure p with ``exp(2 N p) = Z``."""
    if not Z > 0:
        raise DomainError(f"partition function must be positive, got {Z}")
    return math.log(Z) / (2 * N)


def p0(N: int) -> float:
    """Pressure of the constant weighting ``1/N`` at volume 2N."""
    if N < 1:
        raise DomainError("N must be >= 1")
    return (log_factorial(N) - N * math.log(N)) / (2 * N)


def pbar0() -> float:
    return -0.5


@dataclass(frozen=True)
class PressureReport:
    N: int
    Z: float
    p: float
    p0: float
    sm: float
    eps0: float


def pressure_report(
    w: TranslationInvariantWeighting, threads: int = 1, cap: int = DEFAULT_CAPS.ryser_order
) -> PressureReport:
    lat = w.lattice
    m = to_matrix(w)
    res = permanent_ryser(m, threads=threads, cap=cap)
    if res.log_value is None:
        raise DomainError("partition function is not positive")
    eps0 = max_relative_deviation(to_matrix(make_constant(lat)), m)
    p = res.log_value / (2 * lat.N)
    return PressureReport(lat.N, res.value, p, p0(lat.N), smoothness(w).sm, eps0)
