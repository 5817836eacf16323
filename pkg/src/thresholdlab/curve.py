"""The exact step function of operating points over all decision-relevant thresholds.

Every metric of a fixed dataset is a step function of the threshold, so the
curve needs only the candidate thresholds where the flagged set can change:
0.0, every distinct score, and the ABOVE_MAX sentinel. Construction is one
sort plus suffix tallies, O(n log n).
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass

from .dataset import Dataset, Label
from .metrics import (
    ABOVE_MAX,
    ConfusionCounts,
    MetricSet,
    Threshold,
    metrics_from,
)


@dataclass(frozen=True)
class OperatingPoint:
    """Confusion counts and derived metrics at one threshold."""

    threshold: Threshold
    counts: ConfusionCounts
    metrics: MetricSet

    def as_dict(self) -> dict:
        return {
            "threshold": None if self.threshold is ABOVE_MAX else self.threshold,
            "counts": self.counts.as_dict(),
            "metrics": self.metrics.as_dict(),
        }


class ThresholdCurve:
    """Operating points at every candidate threshold, ascending, ABOVE_MAX last.

    Immutable after construction; safe to share across concurrent readers.
    """

    def __init__(self, points: tuple[OperatingPoint, ...], dataset: Dataset):
        self._points = tuple(points)
        self._dataset = dataset
        # distinct dataset scores ascending, for O(log n) point_at lookup
        scores = sorted({ex.score for ex in dataset.examples})
        by_threshold = {p.threshold: p for p in self._points}
        self._scores = scores
        self._score_points = [by_threshold[s] for s in scores]

    @property
    def points(self) -> tuple[OperatingPoint, ...]:
        return self._points

    @property
    def dataset(self) -> Dataset:
        return self._dataset

    def __len__(self) -> int:
        return len(self._points)

    def __repr__(self) -> str:
        return f"ThresholdCurve({len(self._points)} points over {self._dataset.n_total} examples)"


def _point(threshold: Threshold, tp: int, fp: int, dataset: Dataset) -> OperatingPoint:
    counts = ConfusionCounts(tp=tp, fp=fp, tn=dataset.n_good - fp, fn=dataset.n_damaging - tp)
    return OperatingPoint(threshold=threshold, counts=counts, metrics=metrics_from(counts))


def build_curve(dataset: Dataset) -> ThresholdCurve:
    """Construct the curve: one operating point per candidate threshold.

    Candidates are {0.0} union {distinct scores} union {ABOVE_MAX}. Identical
    scores collapse into one candidate since no threshold can separate them.
    """
    if dataset.n_total == 0:
        raise ValueError("dataset is empty")

    pos = Counter()
    neg = Counter()
    for ex in dataset.examples:
        if ex.label is Label.DAMAGING:
            pos[ex.score] += 1
        else:
            neg[ex.score] += 1
    distinct = sorted(set(pos) | set(neg))

    # suffix tallies: flagged set at candidate s is every example scoring >= s
    suffix: dict[float, tuple[int, int]] = {}
    tp = fp = 0
    for s in reversed(distinct):
        tp += pos[s]
        fp += neg[s]
        suffix[s] = (tp, fp)

    points = [_point(0.0, dataset.n_damaging, dataset.n_good, dataset)]
    for s in distinct:
        if s == 0.0:
            continue  # already covered by the 0.0 candidate
        tp, fp = suffix[s]
        points.append(_point(s, tp, fp, dataset))
    points.append(_point(ABOVE_MAX, 0, 0, dataset))
    return ThresholdCurve(tuple(points), dataset)


def point_at(curve: ThresholdCurve, threshold: float) -> OperatingPoint:
    """Operating point whose flagged set is {score >= threshold}.

    Resolves to the point at the smallest candidate score >= threshold, or
    ABOVE_MAX when the threshold exceeds every score; the returned point
    reports the queried threshold alongside those counts.
    """
    if isinstance(threshold, bool) or not isinstance(threshold, (int, float)):
        raise ValueError(f"threshold must be a real in [0, 1], got {threshold!r}")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold!r}")
    i = bisect_left(curve._scores, threshold)
    if i == len(curve._scores):
        base = curve.points[-1]  # ABOVE_MAX
    else:
        base = curve._score_points[i]
    return OperatingPoint(threshold=float(threshold), counts=base.counts, metrics=base.metrics)
