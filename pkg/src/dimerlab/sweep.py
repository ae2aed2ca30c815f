"""Pressure records and their CSV serialization."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .config import DEFAULT_CAPS
from .lattice import make_torus
from .pressure import pressure_report
from .weighting import make_constant, make_exponential_family, make_random

FAMILIES = ("constant", "exponential", "random")
COLUMNS = ("d", "L", "N", "family", "beta", "sm", "eps0", "Z", "p", "p0", "abs_diff", "lemma4_bound")
BOUND_TOL = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    d: int
    L: int
    N: int
    family: str
    beta: float
    sm: float
    eps0: float
    Z: float
    p: float
    p0: float
    abs_diff: float
    # -ln(1 - eps0)/2, nan when eps0 >= 1
    lemma4_bound: float

    def within_bound(self) -> bool:
        if math.isnan(self.lemma4_bound):
            return True
        return self.abs_diff <= self.lemma4_bound + BOUND_TOL

    def csv_row(self) -> list[str]:
        return [_fmt(v) for v in astuple(self)]


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def make_weighting(lat, family: str, beta: float = 0.0, seed: int = 0):
    if family == "constant":
        return make_constant(lat)
    if family == "exponential":
        return make_exponential_family(lat, beta)
    if family == "random":
        return make_random(lat, np.random.default_rng(seed))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def make_record(
    d: int,
    L: int,
    family: str,
    beta: float = 0.0,
    seed: int = 0,
    threads: int = 1,
    ryser_cap: int = DEFAULT_CAPS.ryser_order,
) -> SweepRecord:
    lat = make_torus(d, L)
    w = make_weighting(lat, family, beta, seed)
    rep = pressure_report(w, threads=threads, cap=ryser_cap)
    bound = -math.log1p(-rep.eps0) / 2 if rep.eps0 < 1 else math.nan
    return SweepRecord(
        d, L, rep.N, family, float(beta), rep.sm, rep.eps0, rep.Z, rep.p, rep.p0, abs(rep.p - rep.p0), bound
    )


def sweep(d, L, family, betas, seed=0, threads=1, ryser_cap=DEFAULT_CAPS.ryser_order) -> list[SweepRecord]:
    return [make_record(d, L, family, b, seed, threads, ryser_cap) for b in betas]


def records_to_csv(records, header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(COLUMNS)
    for r in records:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[SweepRecord]:
    types = {f.name: f.type for f in fields(SweepRecord)}
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        kw = {}
        for name in COLUMNS:
            t = types[name]
            kw[name] = int(row[name]) if t == "int" else row[name] if t == "str" else float(row[name])
        out.append(SweepRecord(**kw))
    return out
