import math
from fractions import Fraction

import numpy as np
import pytest

from dimerlab.errors import DomainError
from dimerlab.lattice import make_torus
from dimerlab.permanent import enumerate_tilings, tiling_sum
from dimerlab.pressure import (
    log_factorial,
    p0,
    partition_function,
    pbar0,
    pressure_of,
    pressure_report,
)
from dimerlab.weighting import make_constant, make_exponential_family, make_random, to_matrix


def test_partition_function_constant():
    assert partition_function(make_constant(make_torus(1, 4))) == 0.5
    assert partition_function(make_constant(make_torus(1, 6))) == pytest.approx(2 / 9, rel=1e-14)


@pytest.mark.parametrize("dl", [(1, 4), (1, 6), (1, 8), (2, 4)])
def test_partition_function_equals_tiling_sum(dl, rng):
    lat = make_torus(*dl)
    w = make_random(lat, rng)
    direct = tiling_sum(to_matrix(w), enumerate_tilings(lat))
    assert partition_function(w) == pytest.approx(direct, rel=1e-12)


def test_pressure_of_examples():
    assert pressure_of(0.5, 2) == pytest.approx(math.log(0.5) / 4, rel=1e-15)
    assert pressure_of(0.5, 2) == pytest.approx(-0.173286795, abs=1e-9)
    assert pressure_of(1.0, 7) == 0
    assert pressure_of(math.exp(-9), 9) == pytest.approx(-0.5, rel=1e-15)


@pytest.mark.parametrize("Z", [0.0, -1.0])
def test_pressure_of_domain(Z):
    with pytest.raises(DomainError):
        pressure_of(Z, 3)


def test_pressure_inverse(rng):
    for Z, N in zip(rng.uniform(1e-8, 1, 20), rng.integers(1, 30, 20)):
        p = pressure_of(Z, int(N))
        assert math.exp(2 * N * p) == pytest.approx(Z, rel=1e-12)


def test_p0_values():
    assert p0(2) == pytest.approx((math.log(2) - 2 * math.log(2)) / 4, rel=1e-15)
    assert p0(8) == pytest.approx((math.log(40320) - 8 * math.log(8)) / 16, rel=1e-15)
    assert p0(8) == pytest.approx(-0.376930, abs=5e-6)
    big = p0(10**6)
    assert -0.5 < big < -0.5 + 4e-6
    # Stirling remainder
    assert big + 0.5 == pytest.approx(math.log(2 * math.pi * 1e6) / 4e6, rel=1e-3)


def test_log_factorial_switch_is_seamless():
    exact = [math.log(math.factorial(n)) for n in range(15, 30)]
    assert np.allclose([log_factorial(n) for n in range(15, 30)], exact, rtol=1e-14)


def test_pbar0():
    assert pbar0() == -0.5


def test_p0_above_limit_and_monotone():
    vals = np.array([p0(N) for N in range(2, 10_001)])
    assert np.all(vals > -0.5)
    assert np.all(np.diff(vals) < 0)
    assert all(p0(N) > -0.5 for N in (10**5, 10**6))


@pytest.mark.parametrize("dl", [(1, 4), (1, 8), (1, 12), (2, 4), (2, 6)])
def test_constant_pressure_matches_p0(dl):
    lat = make_torus(*dl)
    rep = pressure_report(make_constant(lat))
    exact = float(Fraction(math.factorial(lat.N), lat.N**lat.N))
    assert rep.Z == pytest.approx(exact, rel=1e-10)
    assert abs(rep.p - p0(lat.N)) <= 1e-12
    assert rep.sm == 0 and rep.eps0 == 0


def test_report_bracket(rng):
    for dl in [(1, 8), (2, 4), (2, 6)]:
        lat = make_torus(*dl)
        for w in (make_random(lat, rng), make_exponential_family(lat, 1.5)):
            rep = pressure_report(w)
            assert -0.5 - 1e-12 <= rep.p <= 1e-12
