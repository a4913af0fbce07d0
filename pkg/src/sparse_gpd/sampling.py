"""Random intervals, domains and barcodes for property checks and oracles."""
from __future__ import annotations

import numpy as np

from .gpd import Barcode
from .intervals import Domain, IntervalError, IntervalVec6, PQInterval


def random_vec6(rng, kind="mixed", scale=1.0, min_side=0.0):
    """A random 6-vector; ``kind`` is '11', '21' or 'mixed'."""
    x, y = rng.uniform(0, scale, size=2)
    a, d = rng.uniform(min_side, 0.5 * scale, size=2)
    if kind == "11" or (kind == "mixed" and rng.random() < 0.3):
        b = c = 0.0
    else:
        b, c = rng.uniform(max(min_side, 1e-3 * scale), 0.5 * scale, size=2)
    return IntervalVec6(float(x), float(y), float(a), float(b), float(c), float(d))


def random_vec6_domain(rng, n, kind="mixed", scale=1.0, min_side=0.0, name=""):
    return Domain([random_vec6(rng, kind, scale, min_side) for _ in range(n)], name=name)


def _antichain(rng, k, lo, hi):
    xs = np.sort(rng.uniform(lo, hi, size=k))
    ys = np.sort(rng.uniform(lo, hi, size=k))[::-1]
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


def random_pq(rng, max_p=3, max_q=3, min_width=0.05, tries=1000):
    """Random (p, q)-interval in the unit square whose boxes all have width
    >= ``min_width`` in both axes (so rasterisation sees every box)."""
    for _ in range(tries):
        p = int(rng.integers(1, max_p + 1))
        q = int(rng.integers(1, max_q + 1))
        mins = _antichain(rng, p, 0.0, 0.7)
        maxs = _antichain(rng, q, 0.3, 1.0)
        try:
            I = PQInterval(mins, maxs)
        except IntervalError:
            continue
        if all(M[0] - m[0] >= min_width and M[1] - m[1] >= min_width for m, M in I.boxes()):
            return I
    raise RuntimeError("failed to sample a valid interval")


def lattice_pq(rng, size=6, max_p=2, max_q=2, tries=1000):
    """Random interval with integer coordinates in [0, size]; small lattices
    make containment between independent samples common."""
    for _ in range(tries):
        p = int(rng.integers(1, max_p + 1))
        q = int(rng.integers(1, max_q + 1))
        mins = [(int(x), int(y)) for x, y in rng.integers(0, size // 2 + 1, size=(p, 2))]
        maxs = [(int(x), int(y)) for x, y in rng.integers(size // 2, size + 1, size=(q, 2))]
        try:
            return PQInterval.from_points(mins, maxs)
        except IntervalError:
            continue
    raise RuntimeError("failed to sample a lattice interval")


def random_barcode(rng, n_bars=3, lattice=None, max_mult=2, **kw) -> Barcode:
    bars = []
    for _ in range(n_bars):
        B = lattice_pq(rng, lattice) if lattice else random_pq(rng, **kw)
        bars.append((B, int(rng.integers(1, max_mult + 1))))
    return Barcode(tuple(bars))


def random_pq_domain(rng, n, lattice=None, name="", **kw) -> Domain:
    if lattice:
        return Domain([lattice_pq(rng, lattice) for _ in range(n)], name=name)
    return Domain([random_pq(rng, **kw) for _ in range(n)], name=name)
