"""Heavy-ball subgradient descent on v_J -> d̂(I, J)."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from .intervals import Domain
from .plgraph import build_loss_graph, reparam_nonneg

log = logging.getLogger(__name__)


class OptimizationError(RuntimeError):
    pass


@dataclass
class OptimConfig:
    m: int = 400
    epochs: int = 750
    learning_rate: float = 1e-3
    momentum: float = 0.9
    lr_decay: float = 0.99
    seed: int = 0
    init: str = "random-subset"  # or "explicit"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not 0 <= self.momentum < 1:
            raise ValueError("momentum must lie in [0, 1)")
        if not 0 < self.lr_decay <= 1:
            raise ValueError("lr_decay must lie in (0, 1]")
        if self.init not in ("random-subset", "explicit"):
            raise ValueError(f"unknown init mode {self.init!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "OptimConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class LossTrace:
    losses: list = field(default_factory=list)
    seconds: list = field(default_factory=list)

    def best_so_far(self) -> np.ndarray:
        return np.minimum.accumulate(np.asarray(self.losses))

    @property
    def best(self) -> float:
        return float(min(self.losses))


def init_domain(full: Domain, m: int, seed: int = 0) -> np.ndarray:
    """Encoded uniform random m-subset of the full domain (no replacement)."""
    if m > len(full):
        raise ValueError(
            f"cannot draw m={m} intervals from a domain of size {len(full)}; "
            "reduce m or pass an explicit initial domain"
        )
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(full), size=m, replace=False)
    return full.vectors()[idx].reshape(-1)


def optimize(full: Domain, cfg: OptimConfig, init: Optional[Domain] = None,
             record_iterates: bool = False):
    """Minimise d̂(full, J) over 6m-vectors J.

    Returns ``(best_domain, trace)`` and, when ``record_iterates`` is set, the
    list of evaluated vectors as a third element. The returned domain is the
    iterate with the lowest loss seen, not the last one.
    """
    if cfg.init == "explicit" or init is not None:
        if init is None:
            raise ValueError("explicit init requires an initial domain")
        raw = init.vectors().reshape(-1).copy()
        if len(init) != cfg.m:
            raise ValueError(f"initial domain has {len(init)} intervals, config says m={cfg.m}")
    else:
        raw = init_domain(full, cfg.m, cfg.seed)

    graph = build_loss_graph(full, cfg.m)
    velocity = np.zeros_like(raw)
    lr = cfg.learning_rate
    trace = LossTrace()
    iterates = []
    best_loss, best_v = np.inf, None
    start = time.perf_counter()

    for epoch in range(cfg.epochs + 1):
        v, jac = reparam_nonneg(raw)
        loss, g = graph.forward_backward(v)
        if not (np.isfinite(loss) and np.all(np.isfinite(g))):
            raise OptimizationError(f"non-finite loss or gradient at epoch {epoch}: loss={loss}")
        trace.losses.append(loss)
        trace.seconds.append(time.perf_counter() - start)
        if record_iterates:
            iterates.append(v.copy())
        if loss < best_loss:
            best_loss, best_v = loss, v.copy()
        if epoch == cfg.epochs:
            break
        velocity = cfg.momentum * velocity - lr * (g * jac)
        raw = raw + velocity
        lr *= cfg.lr_decay
        if epoch % 50 == 0:
            log.debug("epoch %d loss %.6g best %.6g", epoch, loss, best_loss)

    best = Domain.from_vector(best_v, name=f"{full.name or 'domain'}-sparse-{cfg.m}")
    if record_iterates:
        return best, trace, iterates
    return best, trace
