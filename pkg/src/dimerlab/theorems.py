"""Executable bounds: the root estimate, the partition-function sandwich, and
the constant chain eps -> (delta1, lbar, nbar, delta3, L_min) together with
the paradigm verification on a concrete lattice."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .averaging import average_weighting, hilfsatz2_bound
from .config import DEFAULT_CAPS
from .lattice import cube_decomposition
from .permanent import permanent_ryser
from .pressure import log_factorial, p0, pbar0, pressure_of
from .weighting import TranslationInvariantWeighting, max_relative_deviation, smoothness, to_matrix

ROOT_TOL = 1e-12
LEMMA4_TOL = 1e-9
STAGE_MARGIN = 1e-9


@dataclass(frozen=True)
class RootEstimateReport:
    lower: float
    middle: float
    upper: float
    delta_min: float
    delta_max: float

    @property
    def holds(self) -> bool:
        return self.lower <= self.middle * (1 + ROOT_TOL) and self.middle <= self.upper * (1 + ROOT_TOL)


def _root_of_sum(terms: np.ndarray, N: int) -> float:
    return math.fsum(np.prod(terms, axis=1)) ** (1.0 / N)


def root_estimate_check(a, delta) -> RootEstimateReport:
    """``(1+min delta) A <= (sum_i prod_j a_ij (1+delta_ij))^(1/N) <= (1+max delta) A``
    where ``A = (sum_i prod_j a_ij)^(1/N)`` and N is the row length."""
    a = np.asarray(a, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if a.shape != delta.shape or a.ndim != 2:
        raise ValueError(f"shape mismatch: a {a.shape}, delta {delta.shape}")
    if np.any(a < 0):
        raise ValueError("a must be nonnegative")
    if np.any(np.abs(delta) > 1):
        raise ValueError("|delta| must not exceed 1")
    N = a.shape[1]
    A = _root_of_sum(a, N)
    middle = _root_of_sum(a * (1 + delta), N)
    lo, hi = float(delta.min()), float(delta.max())
    return RootEstimateReport((1 + lo) * A, middle, (1 + hi) * A, lo, hi)


@dataclass(frozen=True)
class Lemma4Report:
    status: str  # "ok", "violated" or "not-applicable"
    eps: float
    z1_root: float
    z2_root: float
    lower: float
    upper: float

    @property
    def holds(self) -> bool:
        return self.status == "ok"


def lemma4_check(f1, f2, threads: int = 1) -> Lemma4Report:
    """Check ``(1-eps) Z1^(1/N) <= Z2^(1/N) <= (1+eps) Z1^(1/N)`` for the least
    eps with ``|f1 - f2| <= eps f1`` pointwise."""
    eps = max_relative_deviation(f1, f2)
    N = np.asarray(f1).shape[0]
    if eps >= 1:
        return Lemma4Report("not-applicable", eps, math.nan, math.nan, math.nan, math.nan)
    r1 = math.exp(permanent_ryser(f1, threads=threads).log_value / N)
    r2 = math.exp(permanent_ryser(f2, threads=threads).log_value / N)
    lower, upper = (1 - eps) * r1, (1 + eps) * r1
    ok = lower <= r2 * (1 + LEMMA4_TOL) and r2 <= upper * (1 + LEMMA4_TOL)
    return Lemma4Report("ok" if ok else "violated", eps, r1, r2, lower, upper)


def delta1_of(epsilon: float) -> float:
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return epsilon / math.e


def volume_threshold(epsilon: float, n_max: int = 10**7) -> int:
    """Least N with ``|p0(N) - pbar0| < epsilon/2``."""
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    for N in range(1, n_max + 1):
        if abs(p0(N) - pbar0()) < epsilon / 2:
            return N
    raise RuntimeError(f"no N <= {n_max} reaches the volume threshold for epsilon={epsilon}")


def _log_root_ratio(n: int) -> float:
    # log of (n!/n^n)^(1/n)
    return (log_factorial(n) - n * math.log(n)) / n


def choose_lbar(delta1: float, d: int) -> tuple[int, int]:
    """Smallest even lbar whose ``nbar = lbar^d / 2`` has
    ``(nbar!/nbar^nbar)^(1/nbar) < 1/e + delta1/4``."""
    if not delta1 > 0:
        raise ValueError("delta1 must be positive")
    target = math.log(1 / math.e + delta1 / 4)
    lbar = 2
    while True:
        nbar = lbar ** d // 2
        if _log_root_ratio(nbar) < target:
            return lbar, nbar
        lbar += 2


def delta3_of(delta1: float, lbar: int, d: int) -> float:
    """Smoothness threshold making ``alpha/(1-alpha) <= delta1/2`` for
    ``alpha = lbar d sm``."""
    if not (delta1 > 0 and lbar > 0 and d > 0):
        raise ValueError("delta1, lbar and d must be positive")
    alpha_star = (delta1 / 2) / (1 + delta1 / 2)
    return alpha_star / (lbar * d)


def min_L_of(delta1: float, lbar: int, d: int) -> int:
    """Smallest even L for which boundary pieces cannot push
    ``Z(fbar)^(1/N)`` above ``1/e + delta1/2``, using ``N1/N <= 4 d lbar / L``."""
    if not (delta1 > 0 and lbar > 0 and d > 0):
        raise ValueError("delta1, lbar and d must be positive")
    cube = 1 / math.e + delta1 / 4
    target = 1 / math.e + delta1 / 2
    if cube >= 1 or target >= 1:
        # a^q <= max(a, 1) <= b for q in [0, 1]: no volume constraint
        return lbar
    ratio = math.log(target) / math.log(cube)
    bound = 4 * d * lbar / (1 - ratio)
    return 2 * math.ceil(bound / 2)


@dataclass(frozen=True)
class TheoremConstants:
    epsilon: float
    d: int
    delta1: float
    lbar: int
    nbar: int
    delta3: float
    L_min: int
    N_volume: int

    def invariant_violations(self) -> list[str]:
        bad = []
        if not math.isclose(self.delta1, self.epsilon / math.e, rel_tol=1e-15):
            bad.append("delta1 != epsilon/e")
        if not _log_root_ratio(self.nbar) < math.log(1 / math.e + self.delta1 / 4):
            bad.append("cube ratio not below 1/e + delta1/4")
        if 2 * self.nbar != self.lbar ** self.d or self.lbar % 2:
            bad.append("2 nbar != lbar^d or lbar odd")
        alpha = self.lbar * self.d * self.delta3
        if not (self.delta3 > 0 and alpha < 1 and alpha / (1 - alpha) <= self.delta1 / 2 * (1 + 1e-12)):
            bad.append("delta3 does not enforce alpha/(1-alpha) <= delta1/2")
        return bad

    def as_lines(self) -> list[str]:
        return [
            f"epsilon={self.epsilon!r}",
            f"d={self.d}",
            f"delta1={self.delta1!r}",
            f"lbar={self.lbar}",
            f"nbar={self.nbar}",
            f"delta3={self.delta3!r}",
            f"L_min={self.L_min}",
            f"N_volume={self.N_volume}",
        ]


def derive_constants(epsilon: float, d: int) -> TheoremConstants:
    delta1 = delta1_of(epsilon)
    lbar, nbar = choose_lbar(delta1, d)
    return TheoremConstants(
        epsilon=epsilon,
        d=d,
        delta1=delta1,
        lbar=lbar,
        nbar=nbar,
        delta3=delta3_of(delta1, lbar, d),
        L_min=min_L_of(delta1, lbar, d),
        N_volume=volume_threshold(epsilon),
    )


def step2_scan(epsilon: float, Ns=range(2, 21), rel_step: float = 1e-4) -> float:
    """Worst ``|p - pbar0| - epsilon/2`` over ``Z^(1/N)`` in ``[1/e, 1/e + delta1)``.

    Negative means the one-sided root bound suffices everywhere on the grid.
    """
    delta1 = delta1_of(epsilon)
    lo = 1 / math.e
    roots = lo + delta1 * np.arange(0.0, 1.0, rel_step)
    worst = -math.inf
    for N in Ns:
        for r in roots:
            p = pressure_of(float(r) ** N, N)
            worst = max(worst, abs(p - pbar0()) - epsilon / 2)
    return worst


@dataclass(frozen=True)
class Stage:
    name: str
    lhs: float
    rhs: float
    status: str  # "pass", "fail" or "not-applicable"

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class ParadigmReport:
    constants: TheoremConstants
    stages: tuple[Stage, ...]
    precondition_failures: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict)

    def stage(self, name: str) -> Stage:
        return next(s for s in self.stages if s.name == name)

    @property
    def applicable(self) -> bool:
        return not self.precondition_failures

    def passed(self, names="abcd") -> bool:
        return self.applicable and all(self.stage(n).status == "pass" for n in names)


_STAGES = ("a", "b", "c", "d", "volume", "e")


def _strict(name, lhs, rhs) -> Stage:
    return Stage(name, lhs, rhs, "pass" if rhs - lhs > STAGE_MARGIN else "fail")


def paradigm_check(
    w: TranslationInvariantWeighting,
    epsilon: float,
    threads: int = 1,
    ryser_cap: int = DEFAULT_CAPS.ryser_order,
) -> ParadigmReport:
    """Run the chain (a)-(e) on one weighting with the constants derived from epsilon."""
    lat = w.lattice
    const = derive_constants(epsilon, lat.d)
    sm = smoothness(w).sm
    failures = []
    if lat.L % const.lbar:
        failures.append(f"lbar={const.lbar} does not divide L={lat.L}")
    if lat.N > ryser_cap:
        failures.append(f"N={lat.N} exceeds the Ryser cap {ryser_cap}")
    if not sm < const.delta3:
        failures.append(f"sm={sm!r} is not below delta3={const.delta3!r}")
    if failures:
        stages = tuple(Stage(n, math.nan, math.nan, "not-applicable") for n in _STAGES)
        return ParadigmReport(const, stages, tuple(failures), {"sm": sm})

    N = lat.N
    dec = cube_decomposition(lat, const.lbar)
    av = average_weighting(w, dec)
    zf = permanent_ryser(to_matrix(w), threads=threads)
    zb = permanent_ryser(av.matrix, threads=threads)
    root_f = math.exp(zf.log_value / N)
    root_b = math.exp(zb.log_value / N)
    p = zf.log_value / (2 * N)
    d1 = const.delta1
    e_inv = 1 / math.e
    stages = (
        _strict("a", root_b, e_inv + d1 / 4),
        _strict("b", abs(root_b - root_f), d1 / 2),
        _strict("c", root_f, e_inv + d1),
        _strict("d", abs(p - pbar0()), epsilon / 2),
        _strict("volume", abs(p0(N) - pbar0()), epsilon / 2),
        _strict("e", abs(p - p0(N)), epsilon),
    )
    extras = {
        "sm": sm,
        "Z": zf.value,
        "Zbar": zb.value,
        "hilfsatz2": hilfsatz2_bound(dec),
        "p": p,
        "p0": p0(N),
    }
    return ParadigmReport(const, stages, (), extras)
