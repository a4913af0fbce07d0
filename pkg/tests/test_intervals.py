from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from sparse_gpd import (Domain, IntervalVec6, PQInterval, contains, decode_vec6, encode_vec6,
                        grid_domain, thicken)
from sparse_gpd.intervals import IntervalError, InvalidEmbedding, UnsupportedShape
from sparse_gpd.oracle import default_resolution, raster_contains
from sparse_gpd.sampling import random_pq

from conftest import dyadic, dyadic_side, lattice_interval, vec6, vec6_domain

rect = PQInterval.rect


@pytest.mark.parametrize("v, mins, maxs", [
    ((0, 0, 1, 0, 0, 1), [(0, 0)], [(1, 1)]),
    ((1, 2, 0.5, 0.3, 0.4, 0.6), [(0.7, 2), (1, 1.6)], [(1.6, 2.5)]),
    ((1, 1, 1, 1, 1, 1), [(0, 1), (1, 0)], [(2, 2)]),
])
def test_decode_examples(v, mins, maxs):
    I = decode_vec6(IntervalVec6(*v))
    assert len(I.mins) == len(mins) and len(I.maxs) == 1
    np.testing.assert_allclose(I.mins, mins, atol=1e-15)
    np.testing.assert_allclose(I.maxs, maxs, atol=1e-15)


@pytest.mark.parametrize("mins, maxs, v", [
    ([(0, 0)], [(1, 1)], (0, 0, 1, 0, 0, 1)),
    ([(0.7, 2), (1, 1.6)], [(1.6, 2.5)], (1, 2, 0.5, 0.3, 0.4, 0.6)),
    ([(0, 1), (1, 0)], [(2, 2)], (1, 1, 1, 1, 1, 1)),
])
def test_encode_examples(mins, maxs, v):
    np.testing.assert_allclose(encode_vec6(PQInterval(mins, maxs)).astuple(), v, atol=1e-15)


def test_mixed_sides_collapse_to_rectangle():
    I = decode_vec6(IntervalVec6(1, 1, 1, 0.5, 0, 1))
    assert I == rect((0.5, 1), (2, 2))
    assert encode_vec6(I) == IntervalVec6(0.5, 1, 1, 0, 0, 1.5)


@pytest.mark.parametrize("mins, maxs", [
    ([(0, 0), (0.5, 0.5)], [(1, 1)]),      # not an antichain
    ([(2, 2)], [(1, 1)]),                  # min above every max
    ([(0, 3), (3, 0)], [(1, 4), (4, 1)]),  # boxes do not connect
    ([], [(1, 1)]),
])
def test_invalid_intervals_rejected(mins, maxs):
    with pytest.raises(IntervalError):
        PQInterval(mins, maxs)


def test_negative_side_rejected():
    with pytest.raises(InvalidEmbedding):
        IntervalVec6(0, 0, -0.1, 0, 0, 1)
    with pytest.raises(InvalidEmbedding):
        IntervalVec6(0, float("nan"), 1, 0, 0, 1)


def test_encode_rejects_large_shapes():
    with pytest.raises(UnsupportedShape):
        encode_vec6(PQInterval([(0, 0)], [(1, 2), (2, 1)]))


def test_from_points_drops_dominated():
    I = PQInterval.from_points([(0, 1), (1, 0), (1, 1)], [(2, 2), (1.5, 1.5)])
    assert I.mins == ((0, 1), (1, 0)) and I.maxs == ((2, 2),)


@given(st.tuples(dyadic, dyadic, dyadic_side, dyadic_side, dyadic_side, dyadic_side))
def test_roundtrip_exact_on_dyadics(t):
    x, y, a, b, c, d = t
    if (b == 0) != (c == 0):
        b = c = 0.0
    v = IntervalVec6(x, y, a, b, c, d)
    assert encode_vec6(decode_vec6(v)) == v


@given(vec6())
def test_roundtrip_floats(v):
    w = encode_vec6(decode_vec6(v))
    np.testing.assert_allclose(w.astuple(), v.astuple(), rtol=0, atol=1e-12)


def test_roundtrip_fractions():
    v = IntervalVec6(*(Fraction(k, 7) for k in (3, -2, 5, 1, 4, 9)))
    assert encode_vec6(decode_vec6(v)) == v


def test_thicken_examples():
    I = rect((0, 0), (1, 1))
    assert thicken(I, 0) == I
    assert thicken(I, 0.5) == rect((-0.5, -0.5), (1.5, 1.5))
    eps = 0.25
    assert thicken(IntervalVec6(1, 1, 1, 1, 1, 1), eps) == IntervalVec6(0.75, 0.75, 1.5, 1, 1, 1.5)


@given(lattice_interval(), st.fractions(0, 5), st.fractions(0, 5))
def test_thicken_semigroup(I, e, d):
    assert thicken(thicken(I, e), d) == thicken(I, e + d)


@given(st.tuples(*[st.fractions(-3, 3)] * 2, *[st.fractions(0, 3)] * 4), st.fractions(0, 2),
       st.fractions(0, 2))
def test_thicken_semigroup_vec6(t, e, d):
    v = IntervalVec6(*t)
    assert thicken(thicken(v, e), d) == thicken(v, e + d)
    # both representations describe the same region
    assert decode_vec6(thicken(v, e)) == thicken(decode_vec6(v), e)


@given(vec6(), st.floats(0, 3))
def test_thickening_is_monotone(v, e):
    assert contains(thicken(v, e), v)


def test_thicken_negative_radius():
    with pytest.raises(IntervalError):
        thicken(rect((0, 0), (1, 1)), -1)


@pytest.mark.parametrize("outer, inner, expected", [
    (rect((0, 0), (2, 2)), rect((0.5, 0.5), (1, 1)), True),
    (rect((0, 0), (1, 1)), rect((0.5, 0), (1.5, 1)), False),
    (PQInterval([(0, 1), (1, 0)], [(2, 2)]), rect((1, 1), (2, 2)), True),
    (PQInterval([(0, 1), (1, 0)], [(2, 2)]), rect((0, 0), (2, 2)), False),
])
def test_contains_examples(outer, inner, expected):
    assert contains(outer, inner) is expected
    assert contains(outer, outer) and contains(inner, inner)


def _boundary_slack(I, J):
    pts = [p for K in (I, J) for p in K.mins + K.maxs]
    return min(abs(p[k] - q[k]) for p in pts for q in pts for k in (0, 1) if p[k] != q[k])


def _sub_box(rng, I):
    """Random rectangle inside one box of I."""
    boxes = list(I.boxes())
    (mx, my), (Mx, My) = boxes[int(rng.integers(len(boxes)))]
    xs = np.sort(rng.uniform(mx, Mx, 2))
    ys = np.sort(rng.uniform(my, My, 2))
    return rect((xs[0], ys[0]), (xs[1], ys[1]))


def test_contains_matches_raster(rng):
    checked = positives = 0
    for _ in range(1000):
        I = random_pq(rng)
        J = _sub_box(rng, I) if rng.random() < 0.5 else random_pq(rng)
        h = default_resolution([I, J])
        if _boundary_slack(I, J) < 2 * h:
            continue
        expected = raster_contains(I, J, h)
        assert contains(I, J) == expected
        checked += 1
        positives += expected
    assert checked > 300 and positives > 50


@given(vec6_domain(min_size=3, max_size=3), vec6_domain(min_size=3, max_size=3), st.floats(0, 1))
def test_domain_vectors_convex(U, W, t):
    V = t * U.to_vector() + (1 - t) * W.to_vector()
    D = Domain.from_vector(V)
    assert len(D) == 3
    for I in D:
        decode_vec6(I)


@pytest.mark.parametrize("n_xy, n_sides, size", [(10, 2, 1600), (5, 2, 400), (1, 1, 1), (4, 2, 256)])
def test_grid_sizes(n_xy, n_sides, size):
    assert len(grid_domain(counts=(n_xy, n_sides))) == size


def test_grid_order_is_lexicographic():
    V = grid_domain(counts=(3, 2)).vectors()
    keys = [tuple(r) for r in V]
    assert keys == sorted(keys)
    assert V[0].tolist() == [0, 0, 0.1, 0.1, 0.1, 0.1]


def test_grid_rejects_degenerate():
    with pytest.raises(IntervalError):
        grid_domain(x_range=(1, 1), counts=(3, 1))
    with pytest.raises(IntervalError):
        grid_domain(counts=(0, 1))


def test_domain_nonempty():
    with pytest.raises(IntervalError):
        Domain([])


@given(vec6_domain())
def test_domain_vector_roundtrip(D):
    assert Domain.from_vector(D.to_vector()).intervals == D.intervals


@given(lattice_interval(), st.integers(0, 4), st.integers(0, 4))
def test_thickening_preserves_containment(I, dx, dy):
    J = rect((5 - dx // 2, 5 - dy // 2), (5, 5))
    assume(contains(I, J))
    assert contains(thicken(I, 1), thicken(J, 1))
    assert not contains(J, thicken(J, Fraction(1, 8)))
