"""Randomised closed-form vs oracle comparisons, one row per case."""
from __future__ import annotations

import numpy as np

from .erosion import dhat, eps_pq
from .gpd import gri, mobius_inversion
from .intervals import Domain
from .oracle import brute_dhat, default_resolution, brute_lipschitz, brute_mobius, raster_eps_pair
from .sampling import random_barcode, random_pq, random_pq_domain, random_vec6_domain


def _eps_case(rng, k):
    I, J = random_pq(rng), random_pq(rng)
    closed = float(eps_pq(I, J))
    h = default_resolution([I, J])
    brute = raster_eps_pair(I, J, h)
    return dict(case=k, closed=closed, oracle=brute, diff=abs(closed - brute), tol=2 * h,
                ok=abs(closed - brute) <= 2 * h)


def _dhat_case(rng, k):
    A = random_vec6_domain(rng, int(rng.integers(1, 9)), kind="21", min_side=0.05)
    B = random_vec6_domain(rng, int(rng.integers(1, 9)), kind="21", min_side=0.05)
    closed = dhat(A, B)
    brute, h = brute_dhat(A, B)
    return dict(case=k, closed=closed, oracle=brute, diff=abs(closed - brute), tol=2 * h,
                ok=abs(closed - brute) <= 2 * h)


def _mobius_case(rng, k):
    M = random_barcode(rng, n_bars=int(rng.integers(1, 5)), lattice=6)
    dom = random_pq_domain(rng, int(rng.integers(1, 41)), lattice=6)
    rk = gri(M, dom)
    fast, slow = mobius_inversion(rk), brute_mobius(rk)
    diff = int(np.abs(fast.values - slow.values).max())
    return dict(case=k, closed=int(np.abs(fast.values).sum()), oracle=int(np.abs(slow.values).sum()),
                diff=diff, tol=0, ok=diff == 0)


def _lipschitz_case(rng, k):
    n = int(rng.integers(1, 7))
    K = random_vec6_domain(rng, int(rng.integers(1, 9)))
    J1 = random_vec6_domain(rng, n)
    if rng.random() < 0.5:
        J2 = random_vec6_domain(rng, n)
    else:
        noise = rng.uniform(-0.05, 0.05, size=(n, 6))
        V = J1.vectors()[rng.permutation(n)] + noise
        V[:, 2:] = np.abs(V[:, 2:])
        J2 = Domain.from_vector(V)
    lhs, rhs = brute_lipschitz(K, J1, J2, check=False)
    return dict(case=k, closed=lhs, oracle=rhs, diff=lhs - rhs, tol=0.0, ok=lhs <= rhs + 1e-12)


SUITES = {"eps": _eps_case, "dhat": _dhat_case, "mobius": _mobius_case, "lipschitz": _lipschitz_case}


def run_suite(name: str, cases: int, seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    fn = SUITES[name]
    return [fn(rng, k) for k in range(cases)]
