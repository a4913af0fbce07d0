import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparse_gpd import GPDPointCloud, TimeSeries, histogram_vectorize, time_delay_embed


def test_embed_examples():
    np.testing.assert_array_equal(time_delay_embed([1, 2, 3, 4]), [[1, 2, 3], [2, 3, 4]])
    np.testing.assert_array_equal(time_delay_embed([7.5] * 3), [[7.5, 7.5, 7.5]])
    assert time_delay_embed(TimeSeries("a", np.arange(3.0))).shape == (1, 3)


@given(st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=40), st.integers(1, 3))
def test_embed_formula(samples, dim):
    P = time_delay_embed(samples, dim)
    assert P.shape == (len(samples) - dim + 1, dim)
    for i, row in enumerate(P):
        assert row.tolist() == samples[i:i + dim]


def test_embed_errors():
    with pytest.raises(ValueError, match="too short"):
        time_delay_embed([1, 2])
    with pytest.raises(ValueError):
        time_delay_embed([1, 2, 3], dim=0)


def _cloud(points, mults):
    return GPDPointCloud(np.asarray(points, dtype=float).reshape(-1, 6), np.asarray(mults))


def test_empty_cloud_gives_zeros():
    h = histogram_vectorize(_cloud([], []), bins=3)
    assert h.counts.shape == (3,) * 6 and not h.counts.any()


def test_single_point_no_smoothing():
    h = histogram_vectorize(_cloud([[0.5] * 6], [4]), bins=2, sigma=0, ranges=[(0, 1)] * 6)
    assert h.counts.sum() == 4 and np.count_nonzero(h.counts) == 1
    assert h.counts[(1,) * 6] == 4


def test_single_point_smoothing_preserves_mass():
    # centre bin of 5 with sigma 0.5: the 4-sigma kernel reaches exactly the edges
    h = histogram_vectorize(_cloud([[0.5] * 6], [3]), bins=5, sigma=0.5, ranges=[(0, 1)] * 6)
    assert abs(h.counts.sum() - 3) <= 1e-9
    assert np.count_nonzero(h.counts) > 1


def test_signed_mass_before_smoothing(rng):
    pts = rng.uniform(0, 1, size=(40, 6))
    mults = rng.choice([-2, -1, 1, 3], size=40)
    h = histogram_vectorize(_cloud(pts, mults), bins=3, sigma=0)
    assert h.counts.sum() == pytest.approx(mults.sum())
    assert h.vector().shape == (3 ** 6,)


def test_histogram_argument_checks():
    with pytest.raises(ValueError):
        histogram_vectorize(_cloud([[0] * 6], [1]), bins=0)
    with pytest.raises(ValueError):
        histogram_vectorize(_cloud([[0] * 6], [1]), sigma=-1)


def test_flat_axis_ranges():
    h = histogram_vectorize(_cloud([[1, 2, 3, 4, 5, 6]], [1]), bins=2, sigma=0)
    assert all(hi > lo for lo, hi in h.ranges)
    assert h.counts.sum() == 1
