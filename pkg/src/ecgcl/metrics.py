"""Macro-averaged ROC-AUC over the five superclasses and results-table assembly."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .records import SUPERCLASSES

logger = logging.getLogger(__name__)


def roc_auc(scores: np.ndarray, labels: np.ndarray) -> Optional[float]:
    """Probability that a random positive outscores a random negative.

    Ties count one half (Mann-Whitney U, computed from average ranks in a
    single sort). Returns None when the labels contain only one class.
    """
    scores = np.asarray(scores, dtype=np.float64).ravel()
    labels = np.asarray(labels).ravel()
    if scores.shape != labels.shape:
        raise ValueError(f"shape mismatch: {scores.shape} vs {labels.shape}")
    pos = labels == 1
    n_pos = int(pos.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        return None
    # Average ranks (1-based) with ties sharing the mean rank of their group.
    _, inverse, counts = np.unique(scores, return_inverse=True, return_counts=True)
    starts = np.cumsum(counts) - counts
    group_rank = starts + (counts + 1) / 2.0
    ranks = group_rank[inverse]
    u = ranks[pos].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


@dataclass
class EvalReport:
    """Per-class AUCs (None where a class has one label only) plus the macro mean."""

    per_class: dict[str, Optional[float]]
    macro_auc: float
    n_eval: int
    subset: int
    pseudo: bool
    skipped: list[str] = field(default_factory=list)
    seed: Optional[int] = None
    config_hash: Optional[str] = None

    def to_row(self) -> dict[str, object]:
        row: dict[str, object] = {
            "subset": self.subset,
            "pseudo": self.pseudo,
            "macro_auc": self.macro_auc,
        }
        for name in SUPERCLASSES:
            v = self.per_class.get(name)
            row[f"auc_{name}"] = "" if v is None else v
        row["seed"] = "" if self.seed is None else self.seed
        row["config_hash"] = self.config_hash or ""
        return row


def macro_auc(
    scores: np.ndarray,
    labels: np.ndarray,
    subset: int = 12,
    pseudo: bool = True,
    seed: Optional[int] = None,
    config_hash: Optional[str] = None,
) -> EvalReport:
    """Mean per-class ROC-AUC over the classes that have both labels present."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.shape != labels.shape or scores.ndim != 2:
        raise ValueError(f"shape mismatch: {scores.shape} vs {labels.shape}")
    if scores.shape[1] != len(SUPERCLASSES):
        raise ValueError(f"expected {len(SUPERCLASSES)} classes, got {scores.shape[1]}")
    per_class: dict[str, Optional[float]] = {}
    skipped: list[str] = []
    defined: list[float] = []
    for j, name in enumerate(SUPERCLASSES):
        auc = roc_auc(scores[:, j], labels[:, j])
        per_class[name] = auc
        if auc is None:
            skipped.append(name)
        else:
            defined.append(auc)
    if not defined:
        raise ValueError("AUC undefined for every class (single-label columns)")
    if skipped:
        logger.warning("macro-AUC skips degenerate class(es): %s", ", ".join(skipped))
    return EvalReport(
        per_class=per_class,
        macro_auc=float(np.mean(defined)),
        n_eval=scores.shape[0],
        subset=subset,
        pseudo=pseudo,
        skipped=skipped,
        seed=seed,
        config_hash=config_hash,
    )


TABLE_SUBSET_ORDER = (12, 6, 4, 3, 2)


@dataclass
class ResultsTable:
    """Lead-count rows by pseudo True/False columns, seed-averaged."""

    rows: list[dict[str, object]]

    def to_markdown(self) -> str:
        lines = [
            "| No. of leads | pseudo = True | pseudo = False | improved |",
            "| --- | --- | --- | --- |",
        ]
        for row in self.rows:
            t = row["pseudo_true"]
            f = row["pseudo_false"]
            imp = row["improved"]
            lines.append(
                "| {} | {} | {} | {} |".format(
                    row["subset"],
                    "N/A" if t is None else f"{t:.4f}",
                    "N/A" if f is None else f"{f:.4f}",
                    "" if imp is None else ("yes" if imp else "no"),
                )
            )
        return "\n".join(lines) + "\n"


def assemble_table(reports: Iterable[EvalReport]) -> ResultsTable:
    """Aggregate eval reports into the leads-by-pseudo results table.

    Multiple reports of the same (subset, pseudo) cell (e.g. one per seed) are
    averaged. Missing cells are emitted as N/A with a warning; the 12-lead
    pseudo=False cell is structurally N/A.
    """
    cells: dict[tuple[int, bool], list[float]] = {}
    for rep in reports:
        cells.setdefault((rep.subset, rep.pseudo), []).append(rep.macro_auc)

    rows: list[dict[str, object]] = []
    for subset in TABLE_SUBSET_ORDER:
        t_vals = cells.get((subset, True))
        f_vals = cells.get((subset, False))
        t = float(np.mean(t_vals)) if t_vals else None
        f = float(np.mean(f_vals)) if f_vals else None
        if t is None and not (subset == 12 and f is None):
            logger.warning("results table: missing pseudo=True cell for %d leads", subset)
        if f is None and subset != 12:
            logger.warning("results table: missing pseudo=False cell for %d leads", subset)
        improved = None if (t is None or f is None) else bool(t > f)
        rows.append(
            {"subset": subset, "pseudo_true": t, "pseudo_false": f, "improved": improved}
        )
    return ResultsTable(rows=rows)


RESULTS_CSV_FIELDS = (
    ["subset", "pseudo", "macro_auc"]
    + [f"auc_{name}" for name in SUPERCLASSES]
    + ["seed", "config_hash"]
)


def write_results_csv(reports: Sequence[EvalReport], path: str | Path) -> None:
    """One row per report, in the fixed results.csv column order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=RESULTS_CSV_FIELDS)
        writer.writeheader()
        for rep in reports:
            writer.writerow(rep.to_row())
