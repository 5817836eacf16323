"""Per-threshold confusion counts and the recall / precision / FPR triple.

The classification rule everywhere: an edit is flagged damaging iff its
score >= threshold. The ABOVE_MAX sentinel sorts above every score and
therefore flags nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .dataset import Dataset, Label


class _AboveMax:
    """Sentinel threshold above every possible score: flags nothing."""

    __slots__ = ()
    _instance: "_AboveMax | None" = None

    def __new__(cls) -> "_AboveMax":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ABOVE_MAX"


ABOVE_MAX = _AboveMax()

Threshold = Union[float, _AboveMax]


def check_threshold(threshold: Threshold) -> None:
    """Reject thresholds outside [0, 1] that are not the ABOVE_MAX sentinel."""
    if threshold is ABOVE_MAX:
        return
    if isinstance(threshold, bool) or not isinstance(threshold, (int, float)):
        raise ValueError(f"threshold must be a real in [0, 1] or ABOVE_MAX, got {threshold!r}")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1] or ABOVE_MAX, got {threshold!r}")


@dataclass(frozen=True)
class ConfusionCounts:
    """TP/FP/TN/FN tallies of one threshold applied to one dataset."""

    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def predicted_positive(self) -> int:
        return self.tp + self.fp

    def as_dict(self) -> dict[str, int]:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


@dataclass(frozen=True)
class MetricSet:
    """Recall, precision, and FPR. A metric is None exactly when its
    denominator is zero; it is never coerced to 0 or 1."""

    recall: float | None
    precision: float | None
    fpr: float | None

    def value(self, name: str) -> float | None:
        return getattr(self, name)

    def as_dict(self) -> dict[str, float | None]:
        return {"recall": self.recall, "precision": self.precision, "fpr": self.fpr}


def classify(score: float, threshold: Threshold) -> Label:
    """Flag an edit damaging iff its score reaches the threshold."""
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"score must be in [0, 1], got {score!r}")
    check_threshold(threshold)
    if threshold is ABOVE_MAX:
        return Label.GOOD
    return Label.DAMAGING if score >= threshold else Label.GOOD


def confusion_at(dataset: Dataset, threshold: Threshold) -> ConfusionCounts:
    """Tally the four outcomes of classifying every example at one threshold."""
    if dataset.n_total == 0:
        raise ValueError("dataset is empty")
    check_threshold(threshold)
    tp = fp = 0
    if threshold is not ABOVE_MAX:
        for ex in dataset.examples:
            if ex.score >= threshold:
                if ex.label is Label.DAMAGING:
                    tp += 1
                else:
                    fp += 1
    return ConfusionCounts(tp=tp, fp=fp, tn=dataset.n_good - fp, fn=dataset.n_damaging - tp)


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def metrics_from(counts: ConfusionCounts) -> MetricSet:
    """Derive recall=tp/(tp+fn), precision=tp/(tp+fp), fpr=fp/(fp+tn)."""
    return MetricSet(
        recall=_ratio(counts.tp, counts.tp + counts.fn),
        precision=_ratio(counts.tp, counts.tp + counts.fp),
        fpr=_ratio(counts.fp, counts.fp + counts.tn),
    )
