"""Closed-form ε_rs between planar intervals and the domain distance d̂.

``eps_pq`` works for intervals with any finite number of minimal/maximal
points; ``eps_21`` is the specialised formula in 6-vector coordinates for
(1,1)- and (2,1)-intervals. Both return the smallest ε with ``J ⊆ I^ε`` and
``I ⊆ J^ε``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .intervals import Domain, IntervalVec6, as_pq


def delta(x, y) -> int:
    return 1 if x <= y else 0


def F(w1, w2, w3, w4):
    return max(delta(w1, w2) * abs(w2 - w1), delta(w3, w4) * abs(w4 - w3))


def G(m1, m2, m3, m4, m5):
    # Not used by eps_21; kept so the full family of helpers is available.
    return min(F(m1, m2, m3, m4), m5)


def H(o1, o2, o3, o4):
    return max(min(o1, o2), min(o3, o4))


def _min_deficit(lower, upper):
    """max over points q of `upper` of min over p in `lower` of the sup-norm
    amount by which p fails to lie below q."""
    worst = 0
    for q in upper:
        best = min(max((1 - delta(p[0], q[0])) * abs(q[0] - p[0]),
                       (1 - delta(p[1], q[1])) * abs(q[1] - p[1])) for p in lower)
        worst = max(worst, best)
    return worst


def _max_deficit(upper, lower):
    """max over points q of `lower` of min over p in `upper` of the amount by
    which q sticks out above p."""
    worst = 0
    for q in lower:
        best = min(max(delta(p[0], q[0]) * abs(q[0] - p[0]),
                       delta(p[1], q[1]) * abs(q[1] - p[1])) for p in upper)
        worst = max(worst, best)
    return worst


def eps_pq(I, J):
    I, J = as_pq(I), as_pq(J)
    return max(
        _min_deficit(I.mins, J.mins),  # mins of J above mins of I - ε
        _max_deficit(I.maxs, J.maxs),  # maxs of J below maxs of I + ε
        _min_deficit(J.mins, I.mins),
        _max_deficit(J.maxs, I.maxs),
    )


def eps_21(u, v):
    """ε between two 6-vector intervals ``u = (x1, y1, a, b, c, d)`` and
    ``v = (x2, y2, e, f, g, h)``."""
    x1, y1, a, b, c, d = u.astuple() if isinstance(u, IntervalVec6) else tuple(u)
    x2, y2, e, f, g, h = v.astuple() if isinstance(v, IntervalVec6) else tuple(v)
    t1 = H(F(x2 - f, x1 - b, y2, y1), F(x2 - f, x1, y2, y1 - c),
           F(x2, x1 - b, y2 - g, y1), F(x2, x1, y2 - g, y1 - c))
    t2 = F(x1 + d, x2 + h, y1 + a, y2 + e)
    t3 = H(F(x1 - b, x2 - f, y1, y2), F(x1 - b, x2, y1, y2 - g),
           F(x1, x2 - f, y1 - c, y2), F(x1, x2, y1 - c, y2 - g))
    t4 = F(x2 + h, x1 + d, y2 + e, y1 + a)
    return max(t1, t2, t3, t4)


# Vectorised twins of F and H; operands broadcast against each other.
def _F_arr(w1, w2, w3, w4):
    return np.maximum(np.where(w1 <= w2, np.abs(w2 - w1), 0.0),
                      np.where(w3 <= w4, np.abs(w4 - w3), 0.0))


def _H_arr(o1, o2, o3, o4):
    return np.maximum(np.minimum(o1, o2), np.minimum(o3, o4))


def eps_21_array(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Matrix of eps_21 between rows of ``U`` (n, 6) and rows of ``V`` (m, 6)."""
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    x1, y1, a, b, c, d = (U[:, k, None] for k in range(6))
    x2, y2, e, f, g, h = (V[None, :, k] for k in range(6))
    t1 = _H_arr(_F_arr(x2 - f, x1 - b, y2, y1), _F_arr(x2 - f, x1, y2, y1 - c),
                _F_arr(x2, x1 - b, y2 - g, y1), _F_arr(x2, x1, y2 - g, y1 - c))
    t2 = _F_arr(x1 + d, x2 + h, y1 + a, y2 + e)
    t3 = _H_arr(_F_arr(x1 - b, x2 - f, y1, y2), _F_arr(x1 - b, x2, y1, y2 - g),
                _F_arr(x1, x2 - f, y1 - c, y2), _F_arr(x1, x2, y1 - c, y2 - g))
    t4 = _F_arr(x2 + h, x1 + d, y2 + e, y1 + a)
    return np.maximum(np.maximum(t1, t2), np.maximum(t3, t4))


@dataclass
class EpsilonMatrix:
    entries: np.ndarray
    row_domain: Domain
    col_domain: Domain

    @property
    def shape(self):
        return self.entries.shape

    def dhat(self) -> float:
        return dhat_from_matrix(self.entries)


def resolve_threads(threads=None) -> int:
    if threads is None:
        threads = int(os.environ.get("GPD_SPARSIFY_THREADS", "1") or 1)
    return max(1, int(threads))


def epsilon_matrix(A: Domain, B: Domain, threads=None) -> EpsilonMatrix:
    """ε_rs for every pair (A[r], B[s]). Rows are evaluated in chunks, possibly
    in parallel; each entry is independent so the result does not depend on
    scheduling."""
    threads = resolve_threads(threads)
    bounds = np.linspace(0, len(A), min(threads, len(A)) + 1).astype(int)
    chunks = list(zip(bounds[:-1], bounds[1:]))

    if A.is_vec6 and B.is_vec6:
        U, V = A.vectors(), B.vectors()

        def work(span):
            return eps_21_array(U[span[0]:span[1]], V)
    else:
        rows, cols = A.pq(), B.pq()

        def work(span):
            return np.array([[float(eps_pq(I, J)) for J in cols] for I in rows[span[0]:span[1]]],
                            dtype=float).reshape(-1, len(cols))

    if threads == 1 or len(chunks) == 1:
        blocks = [work(s) for s in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(work, chunks))
    return EpsilonMatrix(np.vstack(blocks), A, B)


def dhat_from_matrix(E) -> float:
    E = np.asarray(E, dtype=float)
    return float(max(E.min(axis=1).max(), E.min(axis=0).max()))


def dhat(A: Domain, B: Domain, threads=None) -> float:
    """Smallest ε admitting an ε-correspondence between the two domains."""
    return epsilon_matrix(A, B, threads=threads).dhat()
