"""Seeded property suites behind ``dimerlab verify``.

Each suite draws from its own generator seeded by ``(seed, suite index)``,
so running a suite alone or inside ``all`` yields the same checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .averaging import average_weighting, hilfsatz1_check, hilfsatz2_bound, zbar
from .lattice import cube_decomposition, make_torus
from .permanent import permanent_brute, permanent_exact, permanent_ryser
from .theorems import lemma4_check, paradigm_check, root_estimate_check, derive_constants
from .weighting import make_exponential_family, make_random, to_matrix

BRACKET_LATTICES = ((1, 4), (1, 8), (1, 12), (1, 16), (2, 4), (2, 6))
SMALL_LATTICES = ((1, 4), (1, 6), (1, 8), (1, 10), (1, 12), (1, 16), (1, 20), (1, 24), (2, 4))
# (d, L, lbar) including truncated boundary pieces
DECOMPOSITIONS = ((1, 12, 2), (1, 12, 4), (1, 12, 6), (1, 12, 8), (1, 10, 4), (2, 6, 4), (2, 6, 6), (2, 4, 2))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _lattice(rng, choices):
    d, L = choices[rng.integers(len(choices))]
    return make_torus(int(d), int(L))


def suite_lemma1(rng, count, threads=1, **_):
    out = []
    for k in range(count):
        lat = make_torus(*BRACKET_LATTICES[k % len(BRACKET_LATTICES)])
        Z = permanent_ryser(to_matrix(make_random(lat, rng)), threads=threads).value
        out.append(Check(f"lemma1[{k}] d={lat.d} L={lat.L}", Z <= 1 + 1e-9, f"Z={Z:.6e} margin={1 - Z:.3e}"))
    return out


def suite_lemma2(rng, count, threads=1, **_):
    out = []
    for k in range(count):
        lat = make_torus(*BRACKET_LATTICES[k % len(BRACKET_LATTICES)])
        Z = permanent_ryser(to_matrix(make_random(lat, rng)), threads=threads).value
        floor = math.exp(-lat.N)
        out.append(
            Check(
                f"lemma2[{k}] d={lat.d} L={lat.L}",
                Z >= floor * (1 - 1e-9),
                f"Z={Z:.6e} e^-N={floor:.6e} ratio={Z / floor:.4f}",
            )
        )
    return out


def random_root_instance(rng):
    terms = int(rng.integers(1, 7))
    n = int(rng.integers(1, 7))
    a = rng.uniform(0, 1, size=(terms, n))
    if rng.random() < 0.1:
        delta = np.full((terms, n), rng.uniform(-1, 1))
    else:
        delta = rng.uniform(-1, 1, size=(terms, n))
    return a, delta


def suite_lemma3(rng, count, **_):
    out = []
    for k in range(count):
        rep = root_estimate_check(*random_root_instance(rng))
        out.append(
            Check(
                f"lemma3[{k}]",
                rep.holds,
                f"{rep.lower:.6g} <= {rep.middle:.6g} <= {rep.upper:.6g}",
            )
        )
    return out


def random_lemma4_pair(rng):
    lat = _lattice(rng, SMALL_LATTICES)
    f1 = to_matrix(make_random(lat, rng)).entries
    eta = rng.uniform(0.01, 0.95)
    f2 = f1 * (1 + rng.uniform(-eta, eta, size=f1.shape))
    return f1, f2


def suite_lemma4(rng, count, threads=1, **_):
    out = []
    for k in range(count):
        f1, f2 = random_lemma4_pair(rng)
        rep = lemma4_check(f1, f2, threads=threads)
        out.append(
            Check(
                f"lemma4[{k}] N={f1.shape[0]}",
                rep.holds,
                f"eps={rep.eps:.3f} {rep.lower:.6g} <= {rep.z2_root:.6g} <= {rep.upper:.6g}",
            )
        )
    return out


def _smooth_weighting(rng, lat, lbar):
    """Exponential-family member with alpha = lbar d sm drawn from (0, 0.95)."""
    alpha = rng.uniform(0.01, 0.95)
    beta = math.log1p(alpha / (lbar * lat.d))
    return make_exponential_family(lat, beta)


def suite_hilfsatz1(rng, count, **_):
    out = []
    for k in range(count):
        d, L, lbar = DECOMPOSITIONS[k % len(DECOMPOSITIONS)]
        lat = make_torus(d, L)
        rep = hilfsatz1_check(_smooth_weighting(rng, lat, lbar), cube_decomposition(lat, lbar))
        detail = f"alpha={rep.alpha:.3f} max_ratio={rep.max_ratio:.4g} bound={rep.bound:.4g}"
        if rep.piece_violations:
            detail += f" flagged pieces={list(rep.piece_violations)}"
        out.append(Check(f"hilfsatz1[{k}] d={d} L={L} lbar={lbar}", rep.holds, detail))
    return out


def suite_hilfsatz2(rng, count, threads=1, **_):
    out = []
    for k in range(count):
        d, L, lbar = DECOMPOSITIONS[k % len(DECOMPOSITIONS)]
        lat = make_torus(d, L)
        dec = cube_decomposition(lat, lbar)
        zb = zbar(average_weighting(make_random(lat, rng), dec), threads=threads)
        bound = hilfsatz2_bound(dec)
        out.append(
            Check(
                f"hilfsatz2[{k}] d={d} L={L} lbar={lbar}",
                zb <= bound * (1 + 1e-9),
                f"Zbar={zb:.6e} bound={bound:.6e}",
            )
        )
    return out


def random_oracle_matrix(rng, max_order=8, denominator=1000):
    """Random nonnegative rational matrix and its float image."""
    n = int(rng.integers(1, max_order + 1))
    nums = rng.integers(0, denominator + 1, size=(n, n))
    exact = [[Fraction(int(x), denominator) for x in row] for row in nums]
    return exact, nums / denominator


def suite_oracle(rng, count, threads=1, **_):
    out = []
    for k in range(count):
        exact, a = random_oracle_matrix(rng)
        ry = permanent_ryser(a, threads=threads).value
        br = permanent_brute(a).value
        ex = float(permanent_exact(exact))
        scale = max(abs(br), 1e-300)
        ok = abs(ry - br) <= 1e-10 * scale and abs(ry - ex) <= 1e-12 * max(abs(ex), 1e-300)
        out.append(
            Check(
                f"oracle[{k}] n={a.shape[0]}",
                ok,
                f"ryser={ry:.12e} brute={br:.12e} exact={ex:.12e}",
            )
        )
    return out


def suite_paradigm(rng, count, threads=1, epsilon=1.0, d=2, **_):
    const = derive_constants(epsilon, d)
    L = const.lbar
    lat = make_torus(d, L)
    beta = math.log1p(const.delta3 / 2)
    rep = paradigm_check(make_exponential_family(lat, beta), epsilon, threads=threads)
    if not rep.applicable:
        return [Check(f"paradigm eps={epsilon} d={d} L={L}", False, "; ".join(rep.precondition_failures))]
    return [
        Check(f"paradigm({s.name}) eps={epsilon} d={d} L={L}", s.status == "pass", f"{s.lhs:.6g} < {s.rhs:.6g}")
        for s in rep.stages
    ]


SUITES: dict[str, Callable] = {
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "lemma3": suite_lemma3,
    "lemma4": suite_lemma4,
    "hilfsatz1": suite_hilfsatz1,
    "hilfsatz2": suite_hilfsatz2,
    "oracle": suite_oracle,
    "paradigm": suite_paradigm,
}


def run_suite(name: str, seed: int = 0, count: int = 20, **kw) -> list[Check]:
    if name == "all":
        return [c for n in SUITES for c in run_suite(n, seed, count, **kw)]
    if name not in SUITES:
        raise KeyError(name)
    rng = np.random.default_rng([seed, list(SUITES).index(name)])
    return SUITES[name](rng, count, **kw)
