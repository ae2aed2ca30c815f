"""Cell-averaged weightings and the two bounds that control them.

Averaging happens only in the white (column) variable: every entry of row x
is replaced by the mean of that row over the white vertices of its cell.
The result is row-stochastic but no longer translation invariant, so it is
kept as a plain ``WeightMatrix``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import CubeDecomposition
from .permanent import permanent_ryser
from .pressure import log_factorial
from .weighting import TranslationInvariantWeighting, WeightMatrix, smoothness, to_matrix

POINTWISE_TOL = 1e-12


@dataclass(frozen=True)
class AveragedWeighting:
    base: TranslationInvariantWeighting = field(repr=False)
    decomposition: CubeDecomposition = field(repr=False)
    matrix: WeightMatrix = field(repr=False)


def average_matrix(m, dec: CubeDecomposition) -> WeightMatrix:
    a = np.asarray(m, dtype=float)
    labels = dec.white_labels
    counts = np.bincount(labels, minlength=len(dec.cells))
    # every label present comes from a white vertex, so its count is >= 1
    assert np.all(counts[labels] >= 1)
    onehot = np.zeros((a.shape[1], len(dec.cells)))
    onehot[np.arange(a.shape[1]), labels] = 1.0
    sums = a @ onehot
    with np.errstate(invalid="ignore", divide="ignore"):
        means = sums / counts
    return WeightMatrix(means[:, labels])


def average_weighting(w: TranslationInvariantWeighting, dec: CubeDecomposition) -> AveragedWeighting:
    if dec.lattice != w.lattice:
        raise ValueError("decomposition and weighting live on different lattices")
    return AveragedWeighting(w, dec, average_matrix(to_matrix(w), dec))


@dataclass(frozen=True)
class Hilfsatz1Report:
    status: str  # "ok", "violated" or "not-applicable"
    alpha: float
    bound: float
    max_ratio: float
    max_violation: float
    piece_violations: tuple[int, ...] = ()

    @property
    def holds(self) -> bool:
        return self.status == "ok"


def hilfsatz1_check(w: TranslationInvariantWeighting, dec: CubeDecomposition) -> Hilfsatz1Report:
    """Pointwise check of ``|fbar - f| <= alpha/(1-alpha) f`` with ``alpha = lbar d sm(f)``.

    Violations inside truncated boundary pieces are listed separately in
    ``piece_violations``; a violation in a full cube is a real failure.
    """
    lat = w.lattice
    alpha = dec.lbar * lat.d * smoothness(w).sm
    f = to_matrix(w).entries
    fbar = average_matrix(f, dec).entries
    ratio = float(np.max(np.abs(fbar - f) / f))
    if alpha >= 1:
        return Hilfsatz1Report("not-applicable", alpha, math.inf, ratio, math.nan)
    bound = alpha / (1 - alpha)
    excess = np.abs(fbar - f) - bound * f
    bad_cols = np.flatnonzero(np.any(excess > POINTWISE_TOL, axis=0))
    bad_cells = sorted({int(c) for c in dec.white_labels[bad_cols]})
    pieces = tuple(c for c in bad_cells if not dec.is_full(dec.cells[c]))
    full_bad = len(bad_cells) > len(pieces)
    status = "violated" if full_bad else "ok"
    return Hilfsatz1Report(status, alpha, bound, ratio, float(excess.max()), pieces)


def hilfsatz2_log_bound(dec: CubeDecomposition) -> float:
    return math.fsum(log_factorial(n) - n * math.log(n) for n in dec.n_alphas if n >= 1)


def hilfsatz2_bound(dec: CubeDecomposition) -> float:
    """``prod_alpha n_alpha! / n_alpha^n_alpha`` over cells holding white vertices."""
    return math.exp(hilfsatz2_log_bound(dec))


def zbar(av: AveragedWeighting, threads: int = 1) -> float:
    return permanent_ryser(av.matrix, threads=threads).value
