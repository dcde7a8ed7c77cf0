"""Training objective: multi-label BCE plus the alpha-weighted embedding-similarity term."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

logger = logging.getLogger(__name__)

SIM_KINDS = ("l1", "l2", "cosine")


@dataclass(frozen=True)
class LossConfig:
    sim_kind: str = "l2"
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if self.sim_kind not in SIM_KINDS:
            raise ValueError(f"sim_kind must be one of {SIM_KINDS}, got {self.sim_kind!r}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")


def _check_cls_shapes(logits: np.ndarray, targets: np.ndarray) -> None:
    if logits.shape != targets.shape:
        raise ValueError(f"shape mismatch: logits {logits.shape} vs targets {targets.shape}")


def classification_loss(logits: np.ndarray, targets: np.ndarray) -> float:
    """Mean sigmoid binary cross-entropy in the stable log-sum-exp form.

    Per element: max(z, 0) - z*y + log(1 + exp(-|z|)); accumulation in float64.
    """
    logits = np.asarray(logits)
    targets = np.asarray(targets)
    _check_cls_shapes(logits, targets)
    z = logits.astype(np.float64)
    y = targets.astype(np.float64)
    per_elem = np.maximum(z, 0.0) - z * y + np.log1p(np.exp(-np.abs(z)))
    return float(per_elem.mean())


def classification_loss_grad(
    logits: np.ndarray, targets: np.ndarray
) -> tuple[float, np.ndarray]:
    """Loss value and its gradient w.r.t. the logits (mean reduction)."""
    loss = classification_loss(logits, targets)
    z = np.asarray(logits)
    y = np.asarray(targets).astype(z.dtype)
    sig = 1.0 / (1.0 + np.exp(-z))
    grad = (sig - y) / z.size
    return loss, grad.astype(z.dtype, copy=False)


def _as_batch(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    if v.ndim == 1:
        return v[None, :]
    if v.ndim == 2:
        return v
    raise ValueError(f"embedding must be 1-D or 2-D, got shape {v.shape}")


def _per_sample_similarity(
    u: np.ndarray, v: np.ndarray, kind: str
) -> tuple[np.ndarray, np.ndarray]:
    """Per-sample similarity values and gradients w.r.t. v, in float64.

    u is the alignment target and receives no gradient.
    """
    d = u - v
    if kind == "l1":
        vals = np.abs(d).sum(axis=1)
        grads = -np.sign(d)  # subgradient 0 at zero
    elif kind == "l2":
        vals = np.sqrt((d * d).sum(axis=1))
        safe = np.where(vals > 0, vals, 1.0)
        grads = -d / safe[:, None]
        grads[vals == 0] = 0.0
    elif kind == "cosine":
        nu = np.sqrt((u * u).sum(axis=1))
        nv = np.sqrt((v * v).sum(axis=1))
        zero = (nu == 0) | (nv == 0)
        if zero.any():
            logger.warning(
                "cosine similarity with zero vector(s) in %d sample(s); "
                "treating as orthogonal (distance 1)",
                int(zero.sum()),
            )
        nu_s = np.where(nu == 0, 1.0, nu)
        nv_s = np.where(nv == 0, 1.0, nv)
        dot = (u * v).sum(axis=1)
        cos = np.clip(dot / (nu_s * nv_s), -1.0, 1.0)
        cos = np.where(zero, 0.0, cos)
        vals = 1.0 - cos
        # d(1-cos)/dv = -(u/(|u||v|) - cos * v/|v|^2)
        grads = -(u / (nu_s * nv_s)[:, None] - cos[:, None] * v / (nv_s**2)[:, None])
        grads[zero] = 0.0
    else:
        raise ValueError(f"unknown similarity kind {kind!r}")
    return vals, grads


def similarity(v12: np.ndarray, vx: np.ndarray, kind: str) -> float:
    """Batch-mean similarity between teacher and student embeddings.

    l1 and l2 are norms of the difference; cosine is the distance 1 - cos.
    All three are non-negative and zero iff the vectors coincide (cosine:
    iff they are positively collinear).
    """
    u = _as_batch(v12).astype(np.float64)
    v = _as_batch(vx).astype(np.float64)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    vals, _ = _per_sample_similarity(u, v, kind)
    return float(vals.mean())


def similarity_grad(
    v12: np.ndarray, vx: np.ndarray, kind: str
) -> tuple[float, np.ndarray]:
    """Batch-mean similarity and its gradient w.r.t. the student embedding vx."""
    vx_arr = np.asarray(vx)
    u = _as_batch(v12).astype(np.float64)
    v = _as_batch(vx_arr).astype(np.float64)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    vals, grads = _per_sample_similarity(u, v, kind)
    grad = (grads / v.shape[0]).reshape(vx_arr.shape)
    return float(vals.mean()), grad.astype(vx_arr.dtype, copy=False)


class TotalLoss(NamedTuple):
    total: float
    cls: float
    sim: float


def total_loss(
    logits: np.ndarray,
    targets: np.ndarray,
    v12: np.ndarray,
    vx: np.ndarray,
    config: LossConfig,
) -> TotalLoss:
    """Classification loss plus alpha times the embedding similarity."""
    cls = classification_loss(logits, targets)
    sim = similarity(v12, vx, config.sim_kind)
    return TotalLoss(total=cls + config.alpha * sim, cls=cls, sim=sim)


def total_loss_grad(
    logits: np.ndarray,
    targets: np.ndarray,
    v12: np.ndarray,
    vx: np.ndarray,
    config: LossConfig,
) -> tuple[TotalLoss, np.ndarray, np.ndarray]:
    """Total loss with gradients w.r.t. the logits and the student embedding."""
    cls, dlogits = classification_loss_grad(logits, targets)
    sim, dvx = similarity_grad(v12, vx, config.sim_kind)
    dvx = (config.alpha * dvx).astype(dvx.dtype, copy=False)
    return TotalLoss(total=cls + config.alpha * sim, cls=cls, sim=sim), dlogits, dvx
