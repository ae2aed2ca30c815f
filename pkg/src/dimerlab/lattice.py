"""Torus geometry: vertices, checkerboard coloring, displacements and cube cells.

Vertices of ``(Z/LZ)^d`` are realized as tuples in ``{0, ..., L-1}^d`` and
indexed in lexicographic (row-major) order. Black vertices (even coordinate
sum) and white vertices (odd sum) inherit that order; it fixes the row and
column layout of every weight matrix built on the lattice.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import DEFAULT_CAPS
from .errors import CapacityError


class Color(enum.Enum):
    BLACK = 0
    WHITE = 1


@dataclass(frozen=True)
class TorusLattice:
    d: int
    L: int
    max_vertices: int = field(default=DEFAULT_CAPS.max_vertices, repr=False, compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got d={self.d}")
        if self.L < 2 or self.L % 2:
            raise ValueError(f"edge size must be even and >= 2, got L={self.L}")
        if self.L ** self.d > self.max_vertices:
            raise CapacityError(
                f"L^d = {self.L}^{self.d} exceeds the vertex cap {self.max_vertices}",
                cap_name="max_vertices",
                cap=self.max_vertices,
            )

    @property
    def num_vertices(self) -> int:
        return self.L ** self.d

    @property
    def N(self) -> int:
        return self.num_vertices // 2

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.L,) * self.d

    @cached_property
    def coords(self) -> np.ndarray:
        """All vertices as an ``(L^d, d)`` integer array in lexicographic order."""
        grid = np.indices(self.shape).reshape(self.d, -1).T
        grid.setflags(write=False)
        return grid

    @cached_property
    def parity(self) -> np.ndarray:
        p = self.coords.sum(axis=1) % 2
        p.setflags(write=False)
        return p

    @cached_property
    def black(self) -> np.ndarray:
        """Vertex indices of black vertices, in lattice order."""
        idx = np.flatnonzero(self.parity == 0)
        idx.setflags(write=False)
        return idx

    @cached_property
    def white(self) -> np.ndarray:
        idx = np.flatnonzero(self.parity == 1)
        idx.setflags(write=False)
        return idx

    def vertices(self):
        return itertools.product(range(self.L), repeat=self.d)

    def index(self, v) -> int:
        return int(np.ravel_multi_index(tuple(int(c) % self.L for c in v), self.shape))

    def vertex(self, index: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[index])

    def color(self, v) -> Color:
        return Color.BLACK if sum(v) % 2 == 0 else Color.WHITE

    def displace(self, x, v) -> tuple[int, ...]:
        return tuple((a + b) % self.L for a, b in zip(x, v))

    def negate(self, v) -> tuple[int, ...]:
        return tuple((-a) % self.L for a in v)

    def unit_vectors(self) -> list[tuple[int, ...]]:
        """The 2d unit steps, ordered +e_1, -e_1, +e_2, -e_2, ..."""
        units = []
        for axis in range(self.d):
            for sign in (1, -1):
                u = [0] * self.d
                u[axis] = sign
                units.append(tuple(u))
        return units


def make_torus(d: int, L: int, max_vertices: int = DEFAULT_CAPS.max_vertices) -> TorusLattice:
    return TorusLattice(d, L, max_vertices=max_vertices)


@dataclass(frozen=True)
class Cell:
    index: int
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    n_alpha: int
    black_alpha: int

    @property
    def extent(self) -> tuple[int, ...]:
        return tuple(h - l for l, h in zip(self.lo, self.hi))

    @property
    def size(self) -> int:
        return int(np.prod(self.extent))


@dataclass(frozen=True)
class CubeDecomposition:
    lattice: TorusLattice
    lbar: int
    cells: tuple[Cell, ...]
    cell_of: np.ndarray = field(repr=False, compare=False)

    def is_full(self, cell: Cell) -> bool:
        return all(e == self.lbar for e in cell.extent)

    @property
    def n_alphas(self) -> list[int]:
        return [c.n_alpha for c in self.cells]

    @cached_property
    def white_labels(self) -> np.ndarray:
        """Cell index of each white vertex, indexed by white (column) position."""
        return self.cell_of[self.lattice.white]

    def boundary_white_count(self) -> int:
        """White vertices lying in cut-off boundary pieces."""
        return sum(c.n_alpha for c in self.cells if not self.is_full(c))

    def boundary_bound(self) -> int:
        lat = self.lattice
        return 2 * lat.d * lat.L ** (lat.d - 1) * self.lbar


def cube_decomposition(lat: TorusLattice, lbar: int) -> CubeDecomposition:
    """Cut the realization ``{0..L-1}^d`` into cubes of edge ``lbar`` anchored at
    the origin, plus the pieces of cubes truncated at ``L``."""
    if lbar < 2 or lbar % 2:
        raise ValueError(f"cube edge must be even and >= 2, got lbar={lbar}")
    per_axis = -(-lat.L // lbar)
    block = lat.coords // lbar
    cell_of = np.ravel_multi_index(tuple(block.T), (per_axis,) * lat.d)
    cell_of.setflags(write=False)

    whites = np.bincount(cell_of, weights=lat.parity, minlength=per_axis ** lat.d)
    totals = np.bincount(cell_of, minlength=per_axis ** lat.d)

    cells = []
    for alpha, k in enumerate(itertools.product(range(per_axis), repeat=lat.d)):
        lo = tuple(ki * lbar for ki in k)
        hi = tuple(min((ki + 1) * lbar, lat.L) for ki in k)
        n_alpha = int(round(whites[alpha]))
        cells.append(Cell(alpha, lo, hi, n_alpha, int(totals[alpha]) - n_alpha))
    return CubeDecomposition(lat, lbar, tuple(cells), cell_of)
