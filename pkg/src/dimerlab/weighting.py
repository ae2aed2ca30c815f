"""Translation-invariant weightings, their weight matrices, and smoothness.

A weighting f on the torus is stored through its displacement profile
``g(v) = f(0, v)`` on every vertex of the lattice, both parities: the dimer
weights only use odd displacements, but the smoothness functional steps
across parities.
"""
from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .config import NORM_TOL, STOCHASTIC_TOL
from .errors import DomainError
from .lattice import TorusLattice


def reflect(g: np.ndarray) -> np.ndarray:
    """Return ``h`` with ``h[v] = g[-v mod L]``."""
    h = g
    for axis in range(g.ndim):
        h = np.roll(np.flip(h, axis=axis), 1, axis=axis)
    return h


def torus_l1(lat: TorusLattice) -> np.ndarray:
    c = lat.coords
    return np.minimum(c, lat.L - c).sum(axis=1).reshape(lat.shape)


@dataclass(frozen=True)
class TranslationInvariantWeighting:
    lattice: TorusLattice
    g: np.ndarray = field(repr=False)
    name: str = "custom"

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        if g.shape != self.lattice.shape:
            raise ValueError(f"profile shape {g.shape} does not match lattice {self.lattice.shape}")
        if not np.all(g > 0):
            raise ValueError("weighting must be strictly positive")
        if not np.allclose(g, reflect(g), rtol=NORM_TOL, atol=0):
            raise ValueError("weighting must be symmetric: g(v) = g(-v)")
        total = self.odd_sum(g)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"opposite-color weights sum to {total!r}, not 1")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    def odd_sum(self, g=None) -> float:
        g = self.g if g is None else g
        return math.fsum(np.asarray(g).ravel()[self.lattice.white])

    @classmethod
    def from_profile(cls, lat: TorusLattice, g, name: str = "custom") -> "TranslationInvariantWeighting":
        """Build from an unnormalized positive symmetric profile, rescaling once."""
        g = np.asarray(g, dtype=float).reshape(lat.shape)
        total = math.fsum(g.ravel()[lat.white])
        return cls(lat, g / total, name)

    def __call__(self, x, y) -> float:
        v = tuple((b - a) % self.lattice.L for a, b in zip(x, y))
        return float(self.g[v])

    def reversed(self) -> "TranslationInvariantWeighting":
        return TranslationInvariantWeighting(self.lattice, reflect(self.g), self.name)


def make_constant(lat: TorusLattice) -> TranslationInvariantWeighting:
    return TranslationInvariantWeighting(lat, np.full(lat.shape, 1.0 / lat.N), "constant")


def make_exponential_family(lat: TorusLattice, beta: float) -> TranslationInvariantWeighting:
    """``g(v)`` proportional to ``exp(-beta * rho(v))`` with rho the torus l1 distance."""
    if not beta >= 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    if beta == 0:
        return make_constant(lat)
    return TranslationInvariantWeighting.from_profile(
        lat, np.exp(-beta * torus_l1(lat)), "exponential"
    )


def make_random(lat: TorusLattice, rng: np.random.Generator, low: float = 0.1) -> TranslationInvariantWeighting:
    """Uniform values in ``[low, 1]``, symmetrized under ``v -> -v``, then normalized."""
    if not 0 < low <= 1:
        raise ValueError("low must lie in (0, 1]")
    raw = rng.uniform(low, 1.0, size=lat.shape)
    sym = 0.5 * (raw + reflect(raw))
    return TranslationInvariantWeighting.from_profile(lat, sym, "random")


@dataclass(frozen=True)
class SmoothnessReport:
    sm: float
    witness_v: tuple[int, ...]
    witness_u: tuple[int, ...]


def smoothness(w: TranslationInvariantWeighting) -> SmoothnessReport:
    """Smallest ``s`` with ``|g(v) - g(v+u)| <= s * g(v)`` over all v and unit u.

    The witness is the first maximizer in lattice order of v, then in the
    order ``+e_1, -e_1, +e_2, ...`` of u.
    """
    lat = w.lattice
    g = w.g
    units = lat.unit_vectors()
    ratios = np.empty((lat.num_vertices, len(units)))
    for k, u in enumerate(units):
        axis = next(i for i, c in enumerate(u) if c)
        shifted = np.roll(g, -u[axis], axis=axis)
        ratios[:, k] = (np.abs(g - shifted) / g).ravel()
    flat = int(np.argmax(ratios))
    v_idx, u_idx = divmod(flat, len(units))
    return SmoothnessReport(float(ratios.flat[flat]), lat.vertex(v_idx), units[u_idx])


@dataclass(frozen=True)
class WeightMatrix:
    """Rows are black vertices, columns white vertices, both in lattice order."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {a.shape}")
        if np.any(a < 0):
            raise ValueError("weight matrix entries must be nonnegative")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def row_sums(self) -> np.ndarray:
        return np.array([math.fsum(r) for r in self.entries])

    def col_sums(self) -> np.ndarray:
        return np.array([math.fsum(c) for c in self.entries.T])

    def is_doubly_stochastic(self, tol: float = STOCHASTIC_TOL) -> bool:
        return bool(
            np.all(np.abs(self.row_sums() - 1) <= tol) and np.all(np.abs(self.col_sums() - 1) <= tol)
        )


def to_matrix(w: TranslationInvariantWeighting) -> WeightMatrix:
    lat = w.lattice
    xb = lat.coords[lat.black]
    yw = lat.coords[lat.white]
    disp = (yw[None, :, :] - xb[:, None, :]) % lat.L
    return WeightMatrix(w.g[tuple(np.moveaxis(disp, -1, 0))])


def max_relative_deviation(f1, f2) -> float:
    a = np.asarray(f1, dtype=float)
    b = np.asarray(f2, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if np.any(a <= 0):
        raise DomainError("reference matrix must be strictly positive entrywise")
    return float(np.max(np.abs(a - b) / a)) if a.size else 0.0


def dumps_matrix(m) -> str:
    a = np.asarray(m, dtype=float)
    lines = [str(a.shape[0])]
    lines += [" ".join(format(x, ".17g") for x in row) for row in a]
    return "\n".join(lines) + "\n"


def loads_matrix(text: str) -> WeightMatrix:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty matrix text")
    n = int(tokens[0])
    values = [float(t) for t in tokens[1:]]
    if len(values) != n * n:
        raise ValueError(f"expected {n * n} entries for order {n}, found {len(values)}")
    return WeightMatrix(np.array(values).reshape(n, n))


def dump_matrix(m, dest) -> None:
    text = dumps_matrix(m)
    if isinstance(dest, io.TextIOBase):
        dest.write(text)
    else:
        with open(os.fspath(dest), "w") as fh:
            fh.write(text)


def load_matrix(src) -> WeightMatrix:
    if isinstance(src, io.TextIOBase):
        return loads_matrix(src.read())
    with open(os.fspath(src)) as fh:
        return loads_matrix(fh.read())
