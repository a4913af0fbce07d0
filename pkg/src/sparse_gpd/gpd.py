"""Rank invariants and diagrams of interval-decomposable 2-parameter modules.

A module is given by its barcode, a multiset of planar intervals. Its
generalized rank over a connected interval ``I`` is the number of bars
(with multiplicity) containing ``I``. The diagram over a finite domain is the
Möbius inversion of that rank function along reverse inclusion.

Erosion-type distances only ever query ranks of thickenings ``I^t``. Since
``rk_M(I^t) = #{bars B : t <= m_B(I)}`` where ``m_B(I)`` is the largest
admissible thickening of ``I`` inside ``B``, every condition "for all t"
reduces to finitely many comparisons between these breakpoints.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .erosion import epsilon_matrix
from .intervals import Domain, IntervalVec6, PQInterval, as_pq, contains, encode_vec6

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Barcode:
    bars: tuple = ()

    def __post_init__(self):
        bars = []
        for B, mult in self.bars:
            if int(mult) != mult or mult < 1:
                raise ValueError(f"bar multiplicity must be a positive integer, got {mult!r}")
            bars.append((as_pq(B), int(mult)))
        object.__setattr__(self, "bars", tuple(bars))

    def __len__(self):
        return len(self.bars)

    def shifted(self, s) -> "Barcode":
        """Every bar translated by ``(s, s)``."""
        return Barcode(tuple(
            (PQInterval(tuple((x + s, y + s) for x, y in B.mins),
                        tuple((x + s, y + s) for x, y in B.maxs)), k)
            for B, k in self.bars
        ))


@dataclass
class GRITable:
    domain: Domain
    values: np.ndarray


@dataclass
class GPD:
    domain: Domain
    values: np.ndarray

    def __getitem__(self, k):
        return int(self.values[k])


@dataclass
class GPDPointCloud:
    points: np.ndarray  # (k, 6)
    mults: np.ndarray   # (k,), signed

    def __len__(self):
        return len(self.mults)


def rank_over(M: Barcode, I) -> int:
    return sum(k for B, k in M.bars if contains(B, I))


def gri(M: Barcode, domain: Domain) -> GRITable:
    return GRITable(domain, np.array([rank_over(M, I) for I in domain.pq()], dtype=np.int64))


def containment_matrix(domain: Domain) -> np.ndarray:
    """``C[i, j]`` is True iff domain[j] ⊇ domain[i]."""
    pq = domain.pq()
    n = len(pq)
    return np.array([[contains(pq[j], pq[i]) for j in range(n)] for i in range(n)], dtype=bool)


def mobius_inversion(rk: GRITable) -> GPD:
    """Unique integer function dgm with rk(I) = sum of dgm over supersets of I."""
    C = containment_matrix(rk.domain)
    n = len(C)
    equal = C & C.T
    # Duplicate intervals: keep the first copy as representative, others get 0.
    rep = np.argmax(equal, axis=1)
    if np.any(rep != np.arange(n)):
        log.warning("duplicate-interval normalization applied (%d copies merged)",
                    int(np.sum(rep != np.arange(n))))
    keep = rep == np.arange(n)
    strict = C & ~equal
    # A strict superset has strictly fewer strict supersets, so this order
    # visits every superset before its subsets.
    order = np.argsort(strict.sum(axis=1), kind="stable")
    dgm = np.zeros(n, dtype=np.int64)
    values = np.asarray(rk.values, dtype=np.int64)
    for i in order:
        if not keep[i]:
            continue
        sup = strict[i] & keep
        dgm[i] = values[i] - dgm[sup].sum()
    return GPD(rk.domain, dgm)


def gpd_points(dgm: GPD) -> GPDPointCloud:
    nz = np.flatnonzero(dgm.values)
    vecs = [np.asarray(I if isinstance(I, IntervalVec6) else encode_vec6(I), dtype=float)
            for I in (dgm.domain[k] for k in nz)]
    return GPDPointCloud(np.array(vecs, dtype=float).reshape(-1, 6),
                         np.asarray(dgm.values[nz], dtype=np.int64))


def max_thickening(I, B) -> float:
    """Largest t >= 0 with ``I^t ⊆ B``; ``-inf`` when I is not inside B."""
    I, B = as_pq(I), as_pq(B)
    lo = min(max(min(p[0] - q[0], p[1] - q[1]) for q in B.mins) for p in I.mins)
    hi = min(max(min(q[0] - p[0], q[1] - p[1]) for q in B.maxs) for p in I.maxs)
    t = min(lo, hi)
    return float(t) if t >= 0 else float("-inf")


def breakpoints(M: Barcode, I) -> np.ndarray:
    """Sorted (descending) multiset of ``m_B(I)`` over bars containing I."""
    vals = []
    for B, k in M.bars:
        t = max_thickening(I, B)
        if t >= 0:
            vals.extend([t] * k)
    return np.array(sorted(vals, reverse=True), dtype=float)


def _one_sided_threshold(mI: np.ndarray, nJ: np.ndarray) -> float:
    """Infimum of ε >= 0 with rk_N(J^{ε+δ}) <= rk_M(I^δ) for all δ >= 0.

    ``mI``/``nJ`` are descending breakpoint lists, so rk_M(I^δ) counts entries
    >= δ. On each stretch where rk_M(I^δ) is constant the binding δ is the
    left end (δ = 0, or just past a breakpoint), and #{v > s} <= k holds iff
    s >= v_(k+1), the (k+1)-th largest value.
    """
    t = 0.0
    if len(nJ) == 0:
        return t
    # δ = 0: count of nJ strictly above ε must be <= rk_M(I)
    k = len(mI)
    if k < len(nJ):
        t = max(t, nJ[k])
    # just past each breakpoint m: #{nJ > ε + m} <= #{mI > m}
    for m in np.unique(mI):
        k = int(np.sum(mI > m))
        if k < len(nJ):
            t = max(t, nJ[k] - m)
    return float(t)


def rank_threshold(M: Barcode, I, N: Barcode, J) -> float:
    """Infimum ε satisfying both rank inequalities of a matched pair (I, J)."""
    mI, nJ = breakpoints(M, I), breakpoints(N, J)
    return max(_one_sided_threshold(mI, nJ), _one_sided_threshold(nJ, mI))


def pair_thresholds(M: Barcode, A: Domain, N: Barcode, B: Domain) -> np.ndarray:
    """τ_rs = infimum ε at which (A[r], B[s]) may be matched."""
    E = epsilon_matrix(A, B).entries
    mA = [breakpoints(M, I) for I in A.pq()]
    nB = [breakpoints(N, J) for J in B.pq()]
    T = np.empty_like(E)
    for r in range(len(A)):
        for s in range(len(B)):
            T[r, s] = max(E[r, s], _one_sided_threshold(mA[r], nB[s]),
                          _one_sided_threshold(nB[s], mA[r]))
    return T


def sparse_erosion_distance(M: Barcode, A: Domain, N: Barcode, B: Domain) -> float:
    """Sparse erosion distance between (dgm_M, A) and (dgm_N, B).

    Each pair's feasible set is an up-ray starting at τ_rs, so a correspondence
    exists for every ε above the returned value and for none below it.
    """
    T = pair_thresholds(M, A, N, B)
    return float(max(T.min(axis=1).max(), T.min(axis=0).max()))


def erosion_distance_closure(seed: Domain, M: Barcode, N: Barcode) -> float:
    """Erosion distance over the thickening closure {I^t : I in seed, t >= 0}."""
    return float(max(rank_threshold(M, I, N, I) for I in seed.pq()))
