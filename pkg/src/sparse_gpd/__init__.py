"""Sparsification of generalized persistence diagram domains."""
from .erosion import F, G, H, EpsilonMatrix, delta, dhat, epsilon_matrix, eps_21, eps_pq
from .gpd import (GPD, Barcode, GPDPointCloud, GRITable, erosion_distance_closure, gpd_points,
                  gri, max_thickening, mobius_inversion, rank_over, sparse_erosion_distance)
from .intervals import (Domain, IntervalVec6, PQInterval, contains, decode_vec6, encode_vec6,
                        grid_domain, thicken)
from .optim import LossTrace, OptimConfig, init_domain, optimize
from .pipeline import Histogram6, TimeSeries, histogram_vectorize, time_delay_embed
from .plgraph import build_loss_graph, forward_backward, reparam_nonneg

__version__ = "0.1.0"

__all__ = [
    "F",
    "G",
    "H",
    "EpsilonMatrix",
    "delta",
    "dhat",
    "epsilon_matrix",
    "eps_21",
    "eps_pq",
    "GPD",
    "Barcode",
    "GPDPointCloud",
    "GRITable",
    "erosion_distance_closure",
    "gpd_points",
    "gri",
    "max_thickening",
    "mobius_inversion",
    "rank_over",
    "sparse_erosion_distance",
    "Domain",
    "IntervalVec6",
    "PQInterval",
    "contains",
    "decode_vec6",
    "encode_vec6",
    "grid_domain",
    "thicken",
    "LossTrace",
    "OptimConfig",
    "init_domain",
    "optimize",
    "Histogram6",
    "TimeSeries",
    "histogram_vectorize",
    "time_delay_embed",
    "build_loss_graph",
    "forward_backward",
    "reparam_nonneg",
]
