import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dimerlab.errors import CapacityError
from dimerlab.lattice import make_torus
from dimerlab.permanent import (
    Method,
    enumerate_tilings,
    permanent_brute,
    permanent_exact,
    permanent_ryser,
    tiling_sum,
)
from dimerlab.weighting import make_constant, make_random, to_matrix

# relative accuracy is promised for positive entries within ~6 decades of each other
nonneg = st.one_of(st.just(0.0), st.floats(1e-6, 1))
square = st.integers(1, 7).flatmap(lambda n: arrays(float, (n, n), elements=nonneg))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize("fn", [permanent_brute, permanent_ryser])
def test_small_examples(fn):
    assert fn([[1, 0], [0, 1]]).value == 1
    assert fn([[1, 2], [3, 4]]).value == 10
    assert fn([[0.5, 0.5], [0.5, 0.5]]).value == 0.5


def test_methods_are_tagged():
    assert permanent_brute(np.eye(2)).method is Method.BRUTE_FORCE
    assert permanent_ryser(np.eye(2)).method is Method.RYSER


def test_empty_matrix():
    assert permanent_ryser(np.zeros((0, 0))).value == 1
    assert permanent_brute(np.zeros((0, 0))).value == 1
    assert permanent_exact([]) == 1


def test_ryser_constant_8():
    # 8!/8^8 is exactly representable
    assert permanent_ryser(np.full((8, 8), 1 / 8)).value == 0.00240325927734375
    assert Fraction(math.factorial(8), 8**8) == Fraction(0.00240325927734375)


def test_ryser_matches_brute_6x6(rng):
    for _ in range(20):
        a = rng.uniform(size=(6, 6))
        assert rel(permanent_ryser(a).value, permanent_brute(a).value) <= 1e-10


def test_ryser_matches_brute_10x10(rng):
    a = rng.uniform(size=(10, 10))
    assert rel(permanent_ryser(a).value, permanent_brute(a).value) <= 1e-10


def test_exact_examples():
    half = Fraction(1, 2)
    assert permanent_exact([[half, half], [half, half]]) == half
    assert permanent_exact(np.eye(12, dtype=int).tolist()) == 1


def test_exact_matches_ryser_random_rational(rng):
    nums = rng.integers(0, 997, size=(8, 8))
    exact = [[Fraction(int(x), 997) for x in row] for row in nums]
    assert rel(permanent_ryser(nums / 997).value, float(permanent_exact(exact))) <= 1e-12


def test_exact_handles_floats_exactly():
    a = [[0.1, 0.2], [0.3, 0.4]]
    assert permanent_exact(a) == Fraction(0.1) * Fraction(0.4) + Fraction(0.2) * Fraction(0.3)


def test_caps():
    with pytest.raises(CapacityError):
        permanent_brute(np.ones((11, 11)))
    with pytest.raises(CapacityError):
        permanent_exact(np.ones((13, 13)).tolist())
    with pytest.raises(CapacityError):
        permanent_ryser(np.ones((31, 31)))
    with pytest.raises(CapacityError):
        permanent_ryser(np.ones((5, 5)), cap=4)


def test_rejects_non_square():
    with pytest.raises(ValueError):
        permanent_ryser(np.ones((2, 3)))


def test_structural_zero_is_exact():
    a = np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, 0.4, 0.5]])
    assert permanent_ryser(a).value == 0.0
    assert permanent_ryser(a).log_value is None


def test_wide_dynamic_range(rng):
    a = rng.uniform(size=(6, 6)) * 10.0 ** rng.integers(-150, 150, size=(6, 1))
    a = a * 10.0 ** rng.integers(-100, 100, size=(1, 6))
    exact = float(permanent_exact(a))
    assert rel(permanent_ryser(a).value, exact) <= 1e-12


def test_log_value_consistent(rng):
    r = permanent_ryser(rng.uniform(size=(7, 7)))
    assert math.exp(r.log_value) == pytest.approx(r.value, rel=1e-12)
    assert permanent_ryser(np.zeros((3, 3))).log_value is None


@given(square)
def test_oracle_agreement(a):
    brute = permanent_brute(a).value
    assert abs(permanent_ryser(a).value - brute) <= 1e-10 * max(brute, 1e-300)


@given(square, st.integers(0, 2**32 - 1))
def test_row_column_shuffle_invariance(a, seed):
    g = np.random.default_rng(seed)
    n = a.shape[0]
    b = a[g.permutation(n)][:, g.permutation(n)]
    base = permanent_ryser(a).value
    assert abs(permanent_ryser(b).value - base) <= 1e-12 * max(base, 1e-300)


@given(square, st.floats(0.01, 100), st.data())
def test_row_scaling(a, c, data):
    i = data.draw(st.integers(0, a.shape[0] - 1))
    b = a.copy()
    b[i] *= c
    base = permanent_ryser(a).value
    assert abs(permanent_ryser(b).value - c * base) <= 1e-12 * max(c * base, 1e-300)


@pytest.mark.parametrize("dl", [(1, 4), (1, 6), (1, 8), (2, 4), (1, 12), (2, 6)])
def test_doubly_stochastic_bracket(dl, rng):
    lat = make_torus(*dl)
    for _ in range(5):
        z = permanent_ryser(to_matrix(make_random(lat, rng))).value
        assert math.exp(-lat.N) * (1 - 1e-10) <= z <= 1 + 1e-10


def test_threads_bit_identical(rng):
    a = rng.uniform(size=(16, 16))
    ref = permanent_ryser(a, threads=1)
    for t in (2, 3, 8):
        got = permanent_ryser(a, threads=t)
        assert got.value == ref.value and got.residual == ref.residual


def test_chunk_count_does_not_matter_much(rng):
    a = rng.uniform(size=(12, 12))
    vals = [permanent_ryser(a, chunks=c).value for c in (1, 7, 64, 4096)]
    assert max(vals) - min(vals) <= 1e-14 * vals[0]


def test_tiling_counts():
    assert len(list(enumerate_tilings(make_torus(1, 4)))) == 2
    assert sum(1 for _ in enumerate_tilings(make_torus(2, 4))) == 40320


def test_tiling_cap():
    with pytest.raises(CapacityError):
        enumerate_tilings(make_torus(1, 18))


def test_tilings_are_distinct_bijections():
    lat = make_torus(1, 8)
    tilings = list(enumerate_tilings(lat))
    assert len({t.pairs for t in tilings}) == math.factorial(lat.N)
    for t in tilings[:50]:
        dimers = t.dimers(lat)
        covered = [v for pair in dimers for v in pair]
        assert sorted(covered) == sorted(lat.vertices())
        assert all(sum(b) % 2 == 0 and sum(w) % 2 == 1 for b, w in dimers)


def test_tiling_sum_equals_permanent():
    lat = make_torus(2, 4)
    m = to_matrix(make_constant(lat))
    assert tiling_sum(m, enumerate_tilings(lat)) == pytest.approx(permanent_brute(m).value, rel=1e-12)
