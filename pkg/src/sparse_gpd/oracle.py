"""Brute-force ground truth, independent of the closed forms.

Intervals are painted onto a pixel grid box by box, thickening is a
Chebyshev dilation realised through a chessboard distance transform, and
Möbius inversion is a dense rational solve. None of this touches the
min/max-dominance logic used by the closed-form modules.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.ndimage import distance_transform_cdt

from .erosion import dhat
from .gpd import GPD, GRITable
from .intervals import Domain, as_pq


class OracleViolation(AssertionError):
    pass


@dataclass
class RasterRegion:
    origin: tuple
    h: float
    bitmap: np.ndarray  # indexed [ix, iy]


def _raster_grid(intervals, h=None, cells=256):
    pqs = [as_pq(I) for I in intervals]
    xs = [p[0] for I in pqs for p in I.mins + I.maxs]
    ys = [p[1] for I in pqs for p in I.mins + I.maxs]
    lo = (float(min(xs)), float(min(ys)))
    hi = (float(max(xs)), float(max(ys)))
    if h is None:
        h = float(np.hypot(hi[0] - lo[0], hi[1] - lo[1])) / cells
        if h == 0:
            h = 1.0 / cells
    shape = (int(np.floor((hi[0] - lo[0]) / h)) + 1, int(np.floor((hi[1] - lo[1]) / h)) + 1)
    return pqs, lo, h, shape


def default_resolution(intervals, cells=256) -> float:
    """1/cells of the diagonal of the joint bounding box."""
    return _raster_grid(intervals, None, cells)[2]


def rasterize(I, origin, h, shape) -> RasterRegion:
    """Grid points ``origin + h * (i, j)`` lying in the union of boxes of I."""
    mask = np.zeros(shape, dtype=bool)
    pad = 1e-9 * h
    for (mx, my), (Mx, My) in ((m, M) for m in I.mins for M in I.maxs):
        if mx > Mx or my > My:
            continue
        i0 = max(0, int(np.ceil((mx - origin[0]) / h - pad)))
        i1 = min(shape[0] - 1, int(np.floor((Mx - origin[0]) / h + pad)))
        j0 = max(0, int(np.ceil((my - origin[1]) / h - pad)))
        j1 = min(shape[1] - 1, int(np.floor((My - origin[1]) / h + pad)))
        if i0 <= i1 and j0 <= j1:
            mask[i0:i1 + 1, j0:j1 + 1] = True
    return RasterRegion(tuple(origin), h, mask)


def _dist_to(mask):
    if not mask.any():
        raise ValueError("interval too thin for the raster resolution")
    return distance_transform_cdt(~mask, metric="chessboard")


def raster_eps_pair(I, J, h=None) -> float:
    """Smallest ε on {0, h, 2h, ...} with J ⊆ dilate(I, ε) and I ⊆ dilate(J, ε)."""
    pqs, lo, h, shape = _raster_grid([I, J], h)
    rI, rJ = (rasterize(P, lo, h, shape).bitmap for P in pqs)
    k = max(_dist_to(rI)[rJ].max(), _dist_to(rJ)[rI].max())
    return float(k) * h


def raster_eps_matrix(A: Domain, B: Domain, h=None):
    """Raster ε-matrix on one grid shared by both domains; returns (E, h)."""
    pqs, lo, h, shape = _raster_grid(list(A) + list(B), h)
    masks = [rasterize(P, lo, h, shape).bitmap for P in pqs]
    dists = [_dist_to(mk) for mk in masks]
    n = len(A)
    E = np.empty((n, len(B)))
    for r in range(n):
        for s in range(len(B)):
            E[r, s] = max(dists[r][masks[n + s]].max(), dists[n + s][masks[r]].max())
    return E * h, h


def brute_dhat(A: Domain, B: Domain, h=None):
    """max-min over the raster ε-matrix; returns (value, h)."""
    E, h = raster_eps_matrix(A, B, h)
    return float(max(E.min(axis=1).max(), E.min(axis=0).max())), h


def raster_contains(I, J, h=None) -> bool:
    """J ⊆ I on the raster."""
    pqs, lo, h, shape = _raster_grid([I, J], h)
    rI, rJ = (rasterize(P, lo, h, shape).bitmap for P in pqs)
    return bool(np.all(rI[rJ]))


def _in_union_of_boxes(I, pt) -> bool:
    return any(m[0] <= pt[0] <= M[0] and m[1] <= pt[1] <= M[1]
               for m in I.mins for M in I.maxs)


def box_contains(I, J) -> bool:
    """J ⊆ I: every box [m, M] of J has both corners in I. The region of I is
    an up-set intersected with a down-set, so corners suffice."""
    I, J = as_pq(I), as_pq(J)
    for m in J.mins:
        for M in J.maxs:
            if m[0] <= M[0] and m[1] <= M[1]:
                if not (_in_union_of_boxes(I, m) and _in_union_of_boxes(I, M)):
                    return False
    return True


def brute_mobius(rk: GRITable) -> GPD:
    """Solve rk = A · dgm with A[i, j] = [domain[j] ⊇ domain[i]] by Gauss-Jordan
    elimination over the rationals. Duplicate intervals keep the value on
    their first copy."""
    pqs = rk.domain.pq()
    n = len(pqs)
    if n > 200:
        raise ValueError("brute_mobius is limited to 200 intervals")
    first = []
    for i in range(n):
        rep = next(j for j in range(i + 1) if pqs[j] == pqs[i] or
                   (box_contains(pqs[j], pqs[i]) and box_contains(pqs[i], pqs[j])))
        first.append(rep)
    keep = [i for i in range(n) if first[i] == i]
    k = len(keep)
    rows = [[Fraction(int(box_contains(pqs[keep[j]], pqs[keep[i]]))) for j in range(k)]
            + [Fraction(int(rk.values[keep[i]]))] for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if rows[r][col] != 0), None)
        if piv is None:
            raise OracleViolation("singular inclusion system")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(k):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    out = np.zeros(n, dtype=np.int64)
    for i, idx in enumerate(keep):
        v = rows[i][k]
        if v.denominator != 1:
            raise OracleViolation(f"non-integer diagram value {v}")
        out[idx] = int(v)
    return GPD(rk.domain, out)


def perm_min_sup_distance(V1: np.ndarray, V2: np.ndarray) -> float:
    """min over permutations π of ||V1[π] - V2||_inf by enumeration."""
    n = len(V1)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    diffs = np.abs(V1[perms] - V2[None, :, :])
    return float(diffs.max(axis=(1, 2)).min())


def brute_lipschitz(K: Domain, J1: Domain, J2: Domain, check: bool = True):
    """(|d̂(K,J1) - d̂(K,J2)|, 2 · min_π ||v_π(J1) - v_J2||_inf)."""
    if len(J1) != len(J2):
        raise ValueError("J1 and J2 must have the same size")
    if len(J1) > 7:
        raise ValueError("permutation enumeration is limited to 7 intervals")
    lhs = abs(dhat(K, J1) - dhat(K, J2))
    rhs = 2.0 * perm_min_sup_distance(J1.vectors(), J2.vectors())
    if check and lhs > rhs + 1e-12:
        raise OracleViolation(f"Lipschitz bound violated: {lhs} > {rhs}")
    return lhs, rhs
