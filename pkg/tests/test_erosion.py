from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from sparse_gpd import (F, G, H, Domain, IntervalVec6, PQInterval, contains, decode_vec6, delta,
                        dhat, epsilon_matrix, eps_21, eps_pq, thicken)
from sparse_gpd.erosion import eps_21_array, resolve_threads
from sparse_gpd.oracle import raster_eps_pair
from sparse_gpd.sampling import random_pq, random_vec6, random_vec6_domain

from conftest import lattice_interval, vec6, vec6_domain

rect = PQInterval.rect


@pytest.mark.parametrize("x, y, expected", [(1, 2, 1), (2, 1, 0), (3, 3, 1)])
def test_delta(x, y, expected):
    assert delta(x, y) == expected


def test_F_H_G():
    assert F(0, 1, 0, 2) == 2
    assert F(1, 0, 2, 0) == 0
    assert H(3, 1, 2, 5) == 2
    assert G(0, 1, 0, 2, 5) == 2
    assert G(0, 1, 0, 2, 1.5) == 1.5


@pytest.mark.parametrize("I, J, expected", [
    (rect((0, 0), (1, 1)), rect((0, 0), (1, 1)), 0),
    (rect((0, 0), (1, 1)), rect((0.5, 0), (1.5, 1)), 0.5),
    (PQInterval([(0, 1), (1, 0)], [(2, 2)]), rect((0, 0), (2, 2)), 1),
    (rect((0, 0), (0.5, 0.5)), rect((0, 0), (1, 1)), 0.5),
])
def test_eps_pq_examples(I, J, expected):
    assert eps_pq(I, J) == expected
    assert eps_pq(J, I) == expected


def test_eps_pq_matches_raster_on_example():
    h = 1 / 512
    assert abs(raster_eps_pair(rect((0, 0), (1, 1)), rect((0.5, 0), (1.5, 1)), h) - 0.5) <= 2 * h


def test_eps_21_examples():
    v = IntervalVec6(1, 1, 1, 1, 1, 1)
    w = IntervalVec6(1, 1, 1, 0, 0, 1)
    assert eps_21(v, v) == 0
    assert eps_21(IntervalVec6(0, 0, 1, 0, 0, 1), IntervalVec6(0.5, 0, 1, 0, 0, 1)) == 0.5
    assert eps_21(v, w) == eps_pq(decode_vec6(v), decode_vec6(w)) == 1


@given(vec6(), vec6())
def test_eps_21_equals_eps_pq(u, v):
    assert abs(eps_21(u, v) - eps_pq(decode_vec6(u), decode_vec6(v))) <= 1e-12


@given(vec6_domain(), vec6_domain())
def test_vectorised_eps_matches_scalar(A, B):
    E = eps_21_array(A.vectors(), B.vectors())
    expected = np.array([[eps_21(u, v) for v in B] for u in A])
    np.testing.assert_array_equal(E, expected)


@given(lattice_interval(), lattice_interval())
def test_eps_is_tight(I, J):
    e = eps_pq(I, J)
    assert contains(thicken(I, e), J) and contains(thicken(J, e), I)
    if e > 0:
        below = e * (1 - Fraction(1, 10**6))
        assert not (contains(thicken(I, below), J) and contains(thicken(J, below), I))


def test_eps_tight_random_float_pairs(rng):
    for _ in range(500):
        I, J = random_pq(rng), random_pq(rng)
        e = eps_pq(I, J)
        # one rounding step in the thickened coordinates can flip the boundary
        above = e + 1e-12
        assert contains(thicken(I, above), J) and contains(thicken(J, above), I)
        if e > 0:
            below = e * (1 - 1e-6)
            assert not (contains(thicken(I, below), J) and contains(thicken(J, below), I))


@given(vec6(), vec6())
def test_eps_bounded_by_twice_sup_norm(u, v):
    U, V = np.asarray(u), np.asarray(v)
    assert eps_21(u, v) <= 2 * np.abs(U - V).max() + 1e-12


def test_matrix_shapes_and_symmetry(rng):
    A, B = random_vec6_domain(rng, 5), random_vec6_domain(rng, 7)
    E = epsilon_matrix(A, B)
    assert E.shape == (5, 7)
    np.testing.assert_array_equal(E.entries, epsilon_matrix(B, A).entries.T)
    assert np.all(np.diag(epsilon_matrix(A, A).entries) == 0)
    one = epsilon_matrix(Domain([A[0]]), Domain([B[0]])).entries
    assert one.shape == (1, 1) and one[0, 0] == eps_pq(decode_vec6(A[0]), decode_vec6(B[0]))


def test_matrix_mixed_representations(rng):
    A = Domain([random_pq(rng) for _ in range(3)])
    B = random_vec6_domain(rng, 4)
    E = epsilon_matrix(A, B).entries
    expected = [[eps_pq(I, decode_vec6(v)) for v in B] for I in A]
    np.testing.assert_allclose(E, expected, atol=1e-12)


def test_threads_do_not_change_result(rng, monkeypatch):
    A, B = random_vec6_domain(rng, 40), random_vec6_domain(rng, 9)
    serial = epsilon_matrix(A, B, threads=1).entries
    np.testing.assert_array_equal(serial, epsilon_matrix(A, B, threads=4).entries)
    monkeypatch.setenv("GPD_SPARSIFY_THREADS", "3")
    assert resolve_threads() == 3
    assert resolve_threads(2) == 2


def test_dhat_examples():
    A = Domain([rect((0, 0), (0.5, 0.5))])
    B = Domain([rect((0, 0), (1, 1))])
    assert dhat(A, B) == 0.5
    assert dhat(A, A) == 0


@given(vec6_domain(), vec6_domain())
def test_dhat_symmetric(A, B):
    assert dhat(A, B) == dhat(B, A)


@given(vec6_domain(), vec6_domain(), vec6_domain())
def test_dhat_triangle(A, B, C):
    assert dhat(A, C) <= dhat(A, B) + dhat(B, C) + 1e-9


def test_dhat_subset_and_duplicates(rng):
    A = random_vec6_domain(rng, 6)
    assert dhat(A, Domain(A.intervals + A.intervals[:2])) == 0
    assert dhat(A, Domain(A.intervals[:3])) >= 0


def test_dhat_translation_bound(rng):
    for _ in range(50):
        A = random_vec6_domain(rng, 4)
        s = float(rng.uniform(0, 0.3))
        V = A.vectors()
        V[:, :2] += s
        assert dhat(A, Domain.from_vector(V)) <= s + 1e-12


def test_random_vec6_kinds(rng):
    assert random_vec6(rng, "11").b == 0
    v = random_vec6(rng, "21")
    assert v.b > 0 and v.c > 0
