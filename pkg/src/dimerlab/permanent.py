"""Exact matrix permanents and the dimer tilings they count.

Three independent routes:

* ``permanent_ryser`` -- inclusion-exclusion over column subsets in Gray-code
  order, accumulated in double-double; the production engine.
* ``permanent_brute`` -- the literal sum over all n! permutations.
* ``permanent_exact`` -- exact rational expansion along rows, for checking
  floating-point error.
"""
from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import _ddkernel
from .config import DEFAULT_CAPS
from .errors import CapacityError
from .lattice import TorusLattice


class Method(enum.Enum):
    RYSER = "ryser"
    BRUTE_FORCE = "brute"
    EXACT_RATIONAL = "exact"


@dataclass(frozen=True)
class PermanentResult:
    value: float
    log_value: Optional[float]
    method: Method
    # low word of the double-double result (0 for other methods)
    residual: float = 0.0


def _square(m) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(m, dtype=float))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    return a


def _check_cap(n: int, cap: int, name: str):
    if n > cap:
        raise CapacityError(f"matrix order {n} exceeds the {name} cap {cap}", cap_name=name, cap=cap)


def _result(hi: float, lo: float, method: Method, exponent: int = 0) -> PermanentResult:
    """Result for the value ``(hi + lo) * 2**exponent``."""
    value = math.ldexp(hi + lo, exponent)
    if hi > 0:
        log_value = math.log(hi) + math.log1p(lo / hi) + exponent * math.log(2)
    else:
        log_value = None
    return PermanentResult(value, log_value, method, math.ldexp(lo, exponent))


def has_perfect_matching(support: np.ndarray) -> bool:
    """Whether the bipartite graph of nonzero entries (rows to columns) has a perfect matching."""
    n = support.shape[0]
    adj = [np.flatnonzero(support[i]).tolist() for i in range(n)]
    match_col = [-1] * n

    def augment(i, seen):
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


def equilibrate(a: np.ndarray, rounds: int = 40) -> tuple[np.ndarray, int]:
    """Scale rows and columns by powers of two toward unit sums.

    Returns ``(b, e)`` with ``perm(a) = perm(b) * 2**e`` exactly. Balancing
    keeps the inclusion-exclusion terms on the scale of the permanent when
    entries span many orders of magnitude. Rows and columns must be nonzero.
    """
    b = a.copy()
    exponent = 0
    for _ in range(rounds):
        moved = False
        for axis in (1, 0):
            _, k = np.frexp(b.sum(axis=axis))
            if np.any(k):
                moved = True
                b = np.ldexp(b, -k[:, None] if axis == 1 else -k[None, :])
                exponent += int(k.sum())
        if not moved:
            break
    return b, exponent


def permanent_brute(m, cap: int = DEFAULT_CAPS.brute_order, block: int = 40320) -> PermanentResult:
    a = _square(m)
    n = a.shape[0]
    _check_cap(n, cap, "brute_order")
    if n == 0:
        return _result(1.0, 0.0, Method.BRUTE_FORCE)
    rows = np.arange(n)
    perms = itertools.permutations(range(n))
    terms = []
    while True:
        chunk = np.array(list(itertools.islice(perms, block)), dtype=np.intp)
        if chunk.size == 0:
            break
        terms.append(a[rows, chunk].prod(axis=1))
    return _result(math.fsum(np.concatenate(terms)), 0.0, Method.BRUTE_FORCE)


def _chunk_bounds(n: int, chunks: int) -> list[tuple[int, int]]:
    total = 1 << n
    c = max(1, min(chunks, total))
    edges = [k * total // c for k in range(c + 1)]
    return list(zip(edges[:-1], edges[1:]))


def permanent_ryser(
    m,
    threads: int = 1,
    cap: int = DEFAULT_CAPS.ryser_order,
    chunks: int = DEFAULT_CAPS.ryser_chunks,
) -> PermanentResult:
    """Ryser's formula ``(-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij``.

    Structurally singular matrices return exactly 0; others are balanced by
    ``equilibrate`` first. The subset range is cut into ``chunks`` contiguous Gray-code blocks that
    are reduced in block order, so the result is bit-identical for any
    ``threads``.
    """
    a = _square(m)
    n = a.shape[0]
    _check_cap(n, cap, "ryser_order")
    if n == 0:
        return _result(1.0, 0.0, Method.RYSER)
    if not has_perfect_matching(a != 0):
        return _result(0.0, 0.0, Method.RYSER)
    a, exponent = equilibrate(a)
    bounds = _chunk_bounds(n, chunks)
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _ddkernel.ryser_chunk(a, b[0], b[1]), bounds))
    else:
        parts = [_ddkernel.ryser_chunk(a, lo, hi) for lo, hi in bounds]
    his = np.array([p[0] for p in parts])
    los = np.array([p[1] for p in parts])
    hi, lo = _ddkernel.reduce_chunks(his, los)
    if n % 2:
        hi, lo = -hi, -lo
    return _result(hi, lo, Method.RYSER, exponent)


def permanent_exact(m, cap: int = DEFAULT_CAPS.exact_order) -> Fraction:
    """Exact permanent of a matrix of rationals (floats are taken at their exact value).

    Expands along rows, sharing the partial products of each set of used
    columns; zero entries prune the expansion.
    """
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("permanent needs a square matrix")
    _check_cap(n, cap, "exact_order")
    # clear denominators row by row so the expansion runs on integers
    scale = Fraction(1)
    int_rows = []
    for r in rows:
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        int_rows.append([int(x * den) for x in r])
        scale /= den

    partial = {0: 1}
    for r in int_rows:
        nxt: dict[int, int] = {}
        for used, val in partial.items():
            for j, x in enumerate(r):
                if x and not used >> j & 1:
                    key = used | 1 << j
                    nxt[key] = nxt.get(key, 0) + val * x
        partial = nxt
    total = sum(partial.values())
    return Fraction(total) * scale


@dataclass(frozen=True)
class Tiling:
    """A dimer tiling: ``pairs[i]`` is the white position matched to black position i."""

    pairs: tuple[int, ...]

    def dimers(self, lat: TorusLattice) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(lat.vertex(lat.black[i]), lat.vertex(lat.white[j])) for i, j in enumerate(self.pairs)]


def enumerate_tilings(lat: TorusLattice, cap: int = DEFAULT_CAPS.tiling_order) -> Iterator[Tiling]:
    _check_cap(lat.N, cap, "tiling_order")
    return (Tiling(p) for p in itertools.permutations(range(lat.N)))


def tiling_sum(m, tilings) -> float:
    """Sum over the given tilings of the product of their dimer weights."""
    a = np.asarray(m, dtype=float)
    return math.fsum(math.prod(a[i, j] for i, j in enumerate(t.pairs)) for t in tilings)
