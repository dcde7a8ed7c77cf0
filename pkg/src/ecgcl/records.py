"""ECG record container, fold splits, lead selection and per-lead normalization."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .leads import LEAD_NAMES, N_LEADS, LeadSubset

SUPERCLASSES: tuple[str, ...] = ("NORM", "MI", "STTC", "CD", "HYP")
N_CLASSES = len(SUPERCLASSES)

VALID_FOLDS = tuple(range(1, 11))


@dataclass(frozen=True)
class EcgRecord:
    """One sample: a 10-second multi-lead signal plus metadata and label.

    ``signal`` is a read-only float32 matrix of shape [n_leads, n_samples]
    in millivolts. ``label`` is a multi-hot int8 vector over the five
    super-diagnostic classes. Missing metadata attributes are ``None``.
    """

    ecg_id: int
    signal: np.ndarray
    sampling_rate: int
    age: Optional[float]
    sex: Optional[str]
    height: Optional[float]
    weight: Optional[float]
    label: np.ndarray
    fold: int

    def __post_init__(self) -> None:
        if self.ecg_id <= 0:
            raise ValueError(f"ecg_id must be positive, got {self.ecg_id}")
        if self.signal.ndim != 2:
            raise ValueError(f"signal must be 2-D, got shape {self.signal.shape}")
        if self.label.shape != (N_CLASSES,):
            raise ValueError(f"label must have shape ({N_CLASSES},)")
        if not np.isin(self.label, (0, 1)).all():
            raise ValueError("label entries must be 0 or 1")
        if self.fold not in VALID_FOLDS:
            raise ValueError(f"fold must be in 1..10, got {self.fold}")
        if self.sex not in (None, "male", "female"):
            raise ValueError(f"sex must be 'male', 'female' or None, got {self.sex!r}")

    @property
    def n_leads(self) -> int:
        return self.signal.shape[0]

    @property
    def n_samples(self) -> int:
        return self.signal.shape[1]


@dataclass(frozen=True)
class SplitSpec:
    """Assignment of the ten stratified folds to train/eval/holdout groups."""

    train_folds: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8)
    eval_fold: int = 9
    holdout_fold: int = 10

    def __post_init__(self) -> None:
        groups = set(self.train_folds) | {self.eval_fold, self.holdout_fold}
        if not groups.issubset(VALID_FOLDS):
            raise ValueError(f"folds must lie in 1..10, got {sorted(groups)}")
        n = len(self.train_folds) + 2
        if len(groups) != n or len(set(self.train_folds)) != len(self.train_folds):
            raise ValueError("train/eval/holdout folds must be pairwise disjoint")


@dataclass(frozen=True)
class NormalizationStats:
    """Per-lead z-score statistics, fit on train folds only."""

    mean: np.ndarray  # (n_leads,) float64, mV
    std: np.ndarray   # (n_leads,) float64, mV

    def __post_init__(self) -> None:
        if self.mean.shape != self.std.shape or self.mean.ndim != 1:
            raise ValueError("mean and std must be 1-D arrays of equal length")
        if not (self.std > 0).all():
            raise ValueError("std must be positive for every lead")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def select_leads(record: EcgRecord, subset: LeadSubset) -> EcgRecord:
    """Restrict a 12-lead record to the given subset, preserving lead order."""
    if record.n_leads != N_LEADS:
        raise ValueError(
            f"select_leads needs a 12-lead record, got {record.n_leads} leads"
        )
    sub = _readonly(record.signal[list(subset.lead_indices), :].copy())
    return replace(record, signal=sub)


def train_records(records: Sequence[EcgRecord], split: SplitSpec) -> list[EcgRecord]:
    return [r for r in records if r.fold in split.train_folds]


def eval_records(records: Sequence[EcgRecord], split: SplitSpec) -> list[EcgRecord]:
    return [r for r in records if r.fold == split.eval_fold]


def fit_normalizer(
    records: Iterable[EcgRecord], split: SplitSpec
) -> NormalizationStats:
    """Fit per-lead mean/std over the pooled train-fold samples.

    Statistics are accumulated in float64. A zero-variance lead is an error
    (it carries no signal and would blow up the z-score).
    """
    n_leads = None
    count = 0
    s1 = s2 = None
    for rec in records:
        if rec.fold not in split.train_folds:
            continue
        x = rec.signal.astype(np.float64)
        if n_leads is None:
            n_leads = x.shape[0]
            s1 = np.zeros(n_leads)
            s2 = np.zeros(n_leads)
        elif x.shape[0] != n_leads:
            raise ValueError("records have inconsistent lead counts")
        s1 += x.sum(axis=1)
        s2 += (x * x).sum(axis=1)
        count += x.shape[1]
    if count == 0:
        raise ValueError("no records in the train folds; cannot fit normalizer")
    mean = s1 / count
    var = s2 / count - mean**2
    var = np.maximum(var, 0.0)
    std = np.sqrt(var)
    bad = np.flatnonzero(std <= 0)
    if bad.size:
        names = [LEAD_NAMES[i] if n_leads == N_LEADS else str(i) for i in bad]
        raise ValueError(f"zero-variance lead(s): {', '.join(names)}")
    return NormalizationStats(mean=_readonly(mean), std=_readonly(std))


def apply_normalizer(record: EcgRecord, stats: NormalizationStats) -> EcgRecord:
    """Return a copy of the record with each lead z-scored by the given stats."""
    if record.n_leads != stats.mean.shape[0]:
        raise ValueError(
            f"stats cover {stats.mean.shape[0]} leads, record has {record.n_leads}"
        )
    x = (record.signal.astype(np.float64) - stats.mean[:, None]) / stats.std[:, None]
    return replace(record, signal=_readonly(x.astype(np.float32)))


def inverse_normalizer(record: EcgRecord, stats: NormalizationStats) -> EcgRecord:
    """Undo :func:`apply_normalizer` (up to float32 rounding)."""
    if record.n_leads != stats.mean.shape[0]:
        raise ValueError(
            f"stats cover {stats.mean.shape[0]} leads, record has {record.n_leads}"
        )
    x = record.signal.astype(np.float64) * stats.std[:, None] + stats.mean[:, None]
    return replace(record, signal=_readonly(x.astype(np.float32)))


def stack_signals(records: Sequence[EcgRecord]) -> np.ndarray:
    """Stack record signals into one float32 array [n, leads, samples]."""
    return np.stack([r.signal for r in records]).astype(np.float32, copy=False)


def stack_labels(records: Sequence[EcgRecord]) -> np.ndarray:
    return np.stack([r.label for r in records]).astype(np.int8, copy=False)
