"""Ends of the classification pipeline: delay embedding and GPD histograms."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from .gpd import GPDPointCloud


@dataclass
class TimeSeries:
    label: str
    samples: np.ndarray


def time_delay_embed(samples, dim: int = 3) -> np.ndarray:
    """Point cloud of consecutive ``dim``-tuples, shape (n - dim + 1, dim)."""
    f = np.asarray(getattr(samples, "samples", samples), dtype=float)
    if dim < 1:
        raise ValueError("embedding dimension must be >= 1")
    if len(f) < dim:
        raise ValueError(f"series too short: {len(f)} samples for dimension {dim}")
    return np.lib.stride_tricks.sliding_window_view(f, dim).copy()


@dataclass
class Histogram6:
    bins: tuple
    ranges: tuple
    counts: np.ndarray

    def vector(self) -> np.ndarray:
        return self.counts.reshape(-1)


def cloud_ranges(points: np.ndarray):
    """Per-axis (lo, hi) of a point set; flat axes are widened by 0.5 each way."""
    if len(points) == 0:
        return tuple((0.0, 1.0) for _ in range(6))
    lo, hi = points.min(axis=0), points.max(axis=0)
    return tuple((float(l), float(h)) if h > l else (float(l) - 0.5, float(h) + 0.5)
                 for l, h in zip(lo, hi))


def histogram_vectorize(cloud: GPDPointCloud, bins=4, sigma=0.5, ranges=None) -> Histogram6:
    """Signed 6-d histogram of a GPD, smoothed by a separable Gaussian.

    ``sigma`` is in bin units (scalar or per axis); the kernel is truncated at
    4 sigma and ``sigma = 0`` disables smoothing.
    """
    bins = tuple(int(b) for b in np.broadcast_to(bins, (6,)))
    if any(b < 1 for b in bins):
        raise ValueError("bins must be >= 1 per axis")
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), (6,))
    if np.any(sigma < 0):
        raise ValueError("bandwidth must be nonnegative")
    pts = np.asarray(cloud.points, dtype=float).reshape(-1, 6)
    ranges = tuple(tuple(r) for r in (ranges if ranges is not None else cloud_ranges(pts)))
    if len(pts) == 0:
        return Histogram6(bins, ranges, np.zeros(bins))
    counts, _ = np.histogramdd(pts, bins=bins, range=ranges,
                               weights=np.asarray(cloud.mults, dtype=float))
    if np.any(sigma > 0):
        counts = gaussian_filter(counts, sigma=sigma, mode="constant", cval=0.0, truncate=4.0)
    return Histogram6(bins, ranges, counts)
