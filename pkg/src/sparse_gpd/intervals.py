"""Planar intervals with finitely many minimal and maximal points.

An interval is stored through its two staircases: ``mins`` (the minimal
points, sorted by increasing x and hence decreasing y) and ``maxs`` (the
maximal points, same ordering). The region is the set of points that lie
above some minimal point and below some maximal point; all regions are closed.

(1,1)- and (2,1)-intervals additionally admit the 6-vector embedding
``(x, y, a, b, c, d)`` with minimal points ``(x - b, y)`` and ``(x, y - c)``
and maximal point ``(x + d, y + a)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from numbers import Real
from typing import Iterable, Sequence, Union

import numpy as np

Point = tuple  # (x, y)


class IntervalError(ValueError):
    """Base class for malformed interval data."""


class InvalidEmbedding(IntervalError):
    """A 6-vector with a negative or non-finite side length."""


class UnsupportedShape(IntervalError):
    """An interval that has no 6-vector embedding (p > 2 or q > 1)."""


def _leq(p, q) -> bool:
    return p[0] <= q[0] and p[1] <= q[1]


def _check_staircase(points, kind):
    if len(points) == 0:
        raise IntervalError(f"{kind} must be nonempty")
    for p in points:
        if len(p) != 2 or not all(math.isfinite(float(c)) for c in p):
            raise IntervalError(f"{kind} contains a non-finite point {p!r}")
    for p, q in zip(points, points[1:]):
        if not (p[0] < q[0] and p[1] > q[1]):
            raise IntervalError(
                f"{kind} must be an antichain sorted by increasing x, got {p!r} then {q!r}"
            )


def _reduce_antichain(points, keep):
    """Sorted antichain of the extremal points; ``keep='min'`` drops dominating points."""
    pts = sorted({(p[0], p[1]) for p in points})
    out = []
    for p in pts:
        if keep == "min":
            if any(_leq(q, p) for q in pts if q != p):
                continue
        else:
            if any(_leq(p, q) for q in pts if q != p):
                continue
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class PQInterval:
    mins: tuple
    maxs: tuple

    def __post_init__(self):
        object.__setattr__(self, "mins", tuple((p[0], p[1]) for p in self.mins))
        object.__setattr__(self, "maxs", tuple((p[0], p[1]) for p in self.maxs))
        _check_staircase(self.mins, "mins")
        _check_staircase(self.maxs, "maxs")
        for m in self.mins:
            if not any(_leq(m, M) for M in self.maxs):
                raise IntervalError(f"minimal point {m!r} lies below no maximal point")
        for M in self.maxs:
            if not any(_leq(m, M) for m in self.mins):
                raise IntervalError(f"maximal point {M!r} lies above no minimal point")
        if not _connected(self.mins, self.maxs):
            raise IntervalError("region between the staircases is disconnected")

    @classmethod
    def from_points(cls, mins: Iterable, maxs: Iterable) -> "PQInterval":
        """Build from arbitrary point lists, keeping only the extremal points."""
        return cls(_reduce_antichain(mins, "min"), _reduce_antichain(maxs, "max"))

    @classmethod
    def rect(cls, lo, hi) -> "PQInterval":
        return cls((tuple(lo),), (tuple(hi),))

    @property
    def shape(self) -> tuple:
        return len(self.mins), len(self.maxs)

    def boxes(self):
        """The closed boxes ``[m, M]`` (m <= M) whose union is the region."""
        return [(m, M) for m in self.mins for M in self.maxs if _leq(m, M)]

    def bbox(self):
        lo = (min(p[0] for p in self.mins), min(p[1] for p in self.mins))
        hi = (max(p[0] for p in self.maxs), max(p[1] for p in self.maxs))
        return lo, hi


def _connected(mins, maxs) -> bool:
    boxes = [(m, M) for m in mins for M in maxs if _leq(m, M)]
    parent = list(range(len(boxes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(boxes)), 2):
        (m1, M1), (m2, M2) = boxes[i], boxes[j]
        lo = (max(m1[0], m2[0]), max(m1[1], m2[1]))
        hi = (min(M1[0], M2[0]), min(M1[1], M2[1]))
        if _leq(lo, hi):
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(boxes))}) == 1


@dataclass(frozen=True)
class IntervalVec6:
    x: Real
    y: Real
    a: Real
    b: Real
    c: Real
    d: Real

    def __post_init__(self):
        vals = self.astuple()
        if not all(math.isfinite(float(v)) for v in vals):
            raise InvalidEmbedding(f"non-finite coordinate in {vals!r}")
        for name in "abcd":
            if getattr(self, name) < 0:
                raise InvalidEmbedding(f"side length {name}={getattr(self, name)!r} is negative")

    def astuple(self) -> tuple:
        return (self.x, self.y, self.a, self.b, self.c, self.d)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.astuple(), dtype=float if dtype is None else dtype)

    @classmethod
    def from_array(cls, v) -> "IntervalVec6":
        return cls(*(float(t) for t in v))


AnyInterval = Union[PQInterval, IntervalVec6]


def decode_vec6(v: IntervalVec6) -> PQInterval:
    """Region of a 6-vector. Dominated minimal points are dropped, so ``b == 0``
    or ``c == 0`` yields a (1,1)-interval."""
    if not isinstance(v, IntervalVec6):
        v = IntervalVec6(*v)
    x, y, a, b, c, d = v.astuple()
    return PQInterval.from_points([(x - b, y), (x, y - c)], [(x + d, y + a)])


def encode_vec6(interval: PQInterval) -> IntervalVec6:
    p, q = interval.shape
    if q != 1 or p > 2:
        raise UnsupportedShape(f"({p},{q})-interval has no 6-vector embedding")
    X, Y = interval.maxs[0]
    if p == 1:
        (x, y), = interval.mins
        return IntervalVec6(x, y, Y - y, x - x, y - y, X - x)
    (x1, y1), (x2, y2) = interval.mins
    return IntervalVec6(x2, y1, Y - y1, x2 - x1, y1 - y2, X - x2)


def as_pq(interval: AnyInterval) -> PQInterval:
    return decode_vec6(interval) if isinstance(interval, IntervalVec6) else interval


def thicken(interval: AnyInterval, eps) -> AnyInterval:
    """Union of closed sup-norm balls of radius ``eps`` around the region.

    The result keeps the representation of the input; for a 6-vector only
    ``x, y`` move and ``a, d`` grow.
    """
    if eps < 0:
        raise IntervalError(f"thickening radius must be nonnegative, got {eps!r}")
    if isinstance(interval, IntervalVec6):
        x, y, a, b, c, d = interval.astuple()
        return IntervalVec6(x - eps, y - eps, a + 2 * eps, b, c, d + 2 * eps)
    return PQInterval(
        tuple((px - eps, py - eps) for px, py in interval.mins),
        tuple((px + eps, py + eps) for px, py in interval.maxs),
    )


def contains(outer: AnyInterval, inner: AnyInterval) -> bool:
    """True iff ``inner`` is a subset of ``outer``."""
    outer, inner = as_pq(outer), as_pq(inner)
    return all(any(_leq(m, n) for m in outer.mins) for n in inner.mins) and all(
        any(_leq(N, M) for M in outer.maxs) for N in inner.maxs
    )


@dataclass
class Domain:
    """Ordered finite family of intervals; order fixes the ε-matrix indices."""

    intervals: list
    name: str = ""

    def __post_init__(self):
        self.intervals = list(self.intervals)
        if not self.intervals:
            raise IntervalError("a domain must contain at least one interval")

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, k):
        return self.intervals[k]

    @property
    def is_vec6(self) -> bool:
        return all(isinstance(I, IntervalVec6) for I in self.intervals)

    def pq(self) -> list:
        return [as_pq(I) for I in self.intervals]

    def vectors(self) -> np.ndarray:
        """(n, 6) array of embeddings; encodes PQ intervals when possible."""
        return np.array(
            [np.asarray(I if isinstance(I, IntervalVec6) else encode_vec6(I)) for I in self.intervals],
            dtype=float,
        )

    def to_vector(self) -> np.ndarray:
        """Concatenated 6n-vector."""
        return self.vectors().reshape(-1)

    @classmethod
    def from_vector(cls, coords, name: str = "") -> "Domain":
        arr = np.asarray(coords, dtype=float).reshape(-1, 6)
        return cls([IntervalVec6.from_array(row) for row in arr], name=name)


def _axis_values(lo, hi, n):
    if n < 1:
        raise IntervalError(f"grid counts must be >= 1, got {n}")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise IntervalError("grid ranges must be finite")
    if n > 1 and not lo < hi:
        raise IntervalError(f"degenerate grid: range ({lo}, {hi}) with {n} samples")
    return [float(v) for v in np.linspace(lo, hi, n)]


def grid_domain(
    x_range: Sequence[float] = (0.0, 1.0),
    y_range: Sequence[float] = (0.0, 1.0),
    side_ranges=(0.1, 0.4),
    counts: tuple = (10, 2),
    name: str = "",
) -> Domain:
    """Cartesian grid of 6-vectors in lexicographic (x, y, a, b, c, d) order.

    ``side_ranges`` is either one ``(lo, hi)`` pair shared by a, b, c, d or
    four pairs, one per side.
    """
    n_xy, n_sides = counts
    side_ranges = np.asarray(side_ranges, dtype=float)
    if side_ranges.shape == (2,):
        side_ranges = np.tile(side_ranges, (4, 1))
    if side_ranges.shape != (4, 2):
        raise IntervalError("side_ranges must be one (lo, hi) pair or four of them")
    if np.any(side_ranges < 0):
        raise InvalidEmbedding("side ranges must be nonnegative")
    axes = [_axis_values(*x_range, n_xy), _axis_values(*y_range, n_xy)]
    axes += [_axis_values(lo, hi, n_sides) for lo, hi in side_ranges]
    return Domain([IntervalVec6(*v) for v in itertools.product(*axes)], name=name)
