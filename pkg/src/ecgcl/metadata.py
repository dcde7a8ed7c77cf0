"""Soft-label encoding of patient metadata (age, sex, height, weight).

Scalar attributes are encoded as normalized Gaussian weights over fixed bins,
sex as a one-hot pair, and each attribute carries an explicit missing flag so
the vector length never changes. Layout of the encoded vector:

    [age bins | sex one-hot (male, female) | height bins | weight bins |
     missing flags (age, sex, height, weight)]
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .records import EcgRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AttributeBins:
    """Bin edges, Gaussian smoothing width and clamp range for one attribute."""

    edges: tuple[float, ...]
    sigma: float
    clamp: tuple[float, float]

    def __post_init__(self) -> None:
        if len(self.edges) < 2:
            raise ValueError("need at least two bin edges")
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise ValueError("bin edges must be strictly increasing")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    @property
    def n_bins(self) -> int:
        return len(self.edges) - 1

    @property
    def centers(self) -> np.ndarray:
        e = np.asarray(self.edges, dtype=np.float64)
        return (e[:-1] + e[1:]) / 2.0


def _uniform_edges(lo: float, hi: float, n: int) -> tuple[float, ...]:
    return tuple(np.linspace(lo, hi, n + 1).tolist())


@dataclass(frozen=True)
class MetadataEncoderConfig:
    """Per-attribute binning plus the missing-flag switch.

    Defaults: age 10 bins over 0-100 years (sigma 10), height 10 bins over
    140-200 cm (sigma 6), weight 10 bins over 40-140 kg (sigma 10).
    """

    age: AttributeBins = field(
        default_factory=lambda: AttributeBins(_uniform_edges(0, 100, 10), 10.0, (0.0, 120.0))
    )
    height: AttributeBins = field(
        default_factory=lambda: AttributeBins(_uniform_edges(140, 200, 10), 6.0, (50.0, 250.0))
    )
    weight: AttributeBins = field(
        default_factory=lambda: AttributeBins(_uniform_edges(40, 140, 10), 10.0, (20.0, 300.0))
    )
    include_missing_flag: bool = True

    @property
    def n_missing_flags(self) -> int:
        return 4 if self.include_missing_flag else 0

    @property
    def length(self) -> int:
        return (
            self.age.n_bins + 2 + self.height.n_bins + self.weight.n_bins
            + self.n_missing_flags
        )

    def block_slices(self) -> dict[str, slice]:
        """Index ranges of each block inside the encoded vector."""
        a, h, w = self.age.n_bins, self.height.n_bins, self.weight.n_bins
        out = {
            "age": slice(0, a),
            "sex": slice(a, a + 2),
            "height": slice(a + 2, a + 2 + h),
            "weight": slice(a + 2 + h, a + 2 + h + w),
        }
        if self.include_missing_flag:
            base = a + 2 + h + w
            out["missing"] = slice(base, base + 4)
        return out


def _gaussian_block(value: float, bins: AttributeBins) -> np.ndarray:
    v = min(max(value, bins.clamp[0]), bins.clamp[1])
    c = bins.centers
    # Work with shifted log-weights so the block survives tiny sigmas.
    logw = -((v - c) ** 2) / (2.0 * bins.sigma**2)
    w = np.exp(logw - logw.max())
    return w / w.sum()


def soft_encode(
    age: Optional[float],
    sex: Optional[str],
    height: Optional[float],
    weight: Optional[float],
    config: MetadataEncoderConfig,
) -> np.ndarray:
    """Encode one patient's metadata into the fixed-length soft-label vector.

    A present scalar attribute v becomes normalized weights
    exp(-(v - c_k)^2 / (2 sigma^2)) over its bin centers c_k; a missing (or
    non-finite) attribute becomes an all-zero block with its missing flag set.
    """
    parts: list[np.ndarray] = []
    missing: list[float] = []

    def scalar_block(value: Optional[float], bins: AttributeBins, name: str) -> None:
        if value is not None and not math.isfinite(value):
            logger.warning("non-finite %s value %r treated as missing", name, value)
            value = None
        if value is None:
            parts.append(np.zeros(bins.n_bins))
            missing.append(1.0)
        else:
            parts.append(_gaussian_block(float(value), bins))
            missing.append(0.0)

    scalar_block(age, config.age, "age")

    if sex is None:
        parts.append(np.zeros(2))
        missing.append(1.0)
    elif sex in ("male", "female"):
        parts.append(np.array([1.0, 0.0]) if sex == "male" else np.array([0.0, 1.0]))
        missing.append(0.0)
    else:
        raise ValueError(f"sex must be 'male', 'female' or None, got {sex!r}")

    scalar_block(height, config.height, "height")
    scalar_block(weight, config.weight, "weight")

    if config.include_missing_flag:
        parts.append(np.asarray(missing))
    return np.concatenate(parts)


def encode_records(
    records: Sequence[EcgRecord], config: MetadataEncoderConfig
) -> np.ndarray:
    """Encode a batch of records into a float32 matrix [n, encoder length]."""
    out = np.empty((len(records), config.length), dtype=np.float32)
    for i, rec in enumerate(records):
        out[i] = soft_encode(rec.age, rec.sex, rec.height, rec.weight, config)
    return out
