"""Inverse and constrained threshold queries over a ThresholdCurve.

Recall and FPR are non-increasing in the threshold, so their inverses are
direct scans. Precision is not monotone; its inverse is defined as
"maximize recall subject to precision >= target" so a dragged metric always
has one deterministic answer. All tie-breaks prefer the largest threshold,
i.e. the fewest flagged edits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .curve import OperatingPoint, ThresholdCurve
from .metrics import ABOVE_MAX, MetricSet


class MetricId(Enum):
    RECALL = "recall"
    PRECISION = "precision"
    FPR = "fpr"


class Relation(Enum):
    AT_LEAST = "at_least"
    AT_MOST = "at_most"


class UndefinedMetricError(ValueError):
    """The queried metric is undefined everywhere on this curve."""


class InfeasibleError(ValueError):
    """No candidate threshold satisfies every constraint with the objective defined."""

    def __init__(
        self,
        violated: "Constraint | None",
        near_miss: OperatingPoint,
        objective: "MetricId",
    ):
        self.violated = violated
        self.near_miss = near_miss
        where = (
            f"closest candidate is threshold {_fmt_threshold(near_miss.threshold)} "
            f"with {_fmt_metrics(near_miss.metrics)}"
        )
        if violated is not None:
            message = f"no threshold satisfies {violated}; {where}"
        else:
            message = (
                f"{objective.value} is undefined at every threshold satisfying "
                f"the constraints; {where}"
            )
        super().__init__(message)


def _fmt_threshold(threshold) -> str:
    return "ABOVE_MAX" if threshold is ABOVE_MAX else format(threshold, "g")


def _fmt_metrics(metrics: MetricSet) -> str:
    parts = []
    for name, value in metrics.as_dict().items():
        parts.append(f"{name}={'undefined' if value is None else format(value, '.3f')}")
    return " ".join(parts)


@dataclass(frozen=True)
class Constraint:
    """A bound on one metric: metric >= bound (at_least) or metric <= bound."""

    metric: MetricId
    relation: Relation
    bound: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.bound <= 1.0:
            raise ValueError(f"constraint bound must be in [0, 1], got {self.bound!r}")

    def satisfied_by(self, metrics: MetricSet) -> bool:
        """A constraint on an undefined metric is unsatisfied, never vacuous."""
        value = metrics.value(self.metric.value)
        if value is None:
            return False
        if self.relation is Relation.AT_LEAST:
            return value >= self.bound
        return value <= self.bound

    def __str__(self) -> str:
        op = ">=" if self.relation is Relation.AT_LEAST else "<="
        return f"{self.metric.value}{op}{self.bound:g}"


_CONSTRAINT_RE = re.compile(r"^\s*(recall|precision|fpr)\s*(>=|<=)\s*([0-9.eE+-]+)\s*$")


def parse_constraint(text: str) -> Constraint:
    """Parse 'metric>=bound' / 'metric<=bound'; anything else is rejected."""
    m = _CONSTRAINT_RE.match(text)
    if not m:
        raise ValueError(
            f"malformed constraint {text!r}: expected metric>=bound or metric<=bound "
            f"with metric in recall|precision|fpr"
        )
    metric, op, bound_text = m.groups()
    try:
        bound = float(bound_text)
    except ValueError:
        raise ValueError(f"malformed constraint {text!r}: bad bound {bound_text!r}") from None
    if not 0.0 <= bound <= 1.0:
        raise ValueError(f"malformed constraint {text!r}: bound must be in [0, 1]")
    relation = Relation.AT_LEAST if op == ">=" else Relation.AT_MOST
    return Constraint(MetricId(metric), relation, bound)


@dataclass(frozen=True)
class QueryResult:
    point: OperatingPoint
    objective_value: float

    def as_dict(self) -> dict:
        doc = self.point.as_dict()
        doc["objective_value"] = self.objective_value
        return doc


def _check_target(target: float) -> None:
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"target must be in [0, 1], got {target!r}")


def threshold_for_recall(curve: ThresholdCurve, target: float) -> QueryResult:
    """Largest candidate threshold with recall >= target.

    Recall is non-increasing, so the largest satisfying threshold maximizes
    selectivity; always feasible since recall(0) = 1.
    """
    _check_target(target)
    if curve.dataset.n_damaging == 0:
        raise UndefinedMetricError("recall is undefined: dataset has no damaging examples")
    for point in reversed(curve.points):
        if point.metrics.recall >= target:
            return QueryResult(point, point.metrics.recall)
    raise AssertionError("unreachable: recall at threshold 0 is 1")


def threshold_for_fpr(curve: ThresholdCurve, max_fpr: float) -> QueryResult:
    """Smallest candidate threshold with fpr <= max_fpr.

    FPR is non-increasing, so the smallest satisfying threshold maximizes
    recall under the bound; always feasible since fpr(ABOVE_MAX) = 0.
    """
    _check_target(max_fpr)
    if curve.dataset.n_good == 0:
        raise UndefinedMetricError("fpr is undefined: dataset has no good examples")
    for point in curve.points:
        if point.metrics.fpr <= max_fpr:
            return QueryResult(point, point.metrics.fpr)
    raise AssertionError("unreachable: fpr at ABOVE_MAX is 0")


def optimize(
    curve: ThresholdCurve,
    objective: MetricId,
    constraints: Sequence[Constraint] = (),
) -> QueryResult:
    """Maximize a metric over all candidate points subject to constraints.

    A point qualifies when the objective and every constrained metric are
    defined and all constraints hold. Ties on the objective go to the largest
    threshold (fewest flagged edits). Raises InfeasibleError naming the first
    violated constraint at the best near-miss candidate.
    """
    if objective not in (MetricId.RECALL, MetricId.PRECISION):
        raise ValueError(f"objective must be recall or precision, got {objective.value}")
    if objective is MetricId.RECALL and curve.dataset.n_damaging == 0:
        raise UndefinedMetricError("recall is undefined: dataset has no damaging examples")
    constraints = tuple(constraints)

    best: OperatingPoint | None = None
    best_value = -1.0
    for point in curve.points:  # ascending: >= keeps the largest-threshold optimum
        value = point.metrics.value(objective.value)
        if value is None:
            continue
        if not all(c.satisfied_by(point.metrics) for c in constraints):
            continue
        if value >= best_value:
            best, best_value = point, value
    if best is not None:
        return QueryResult(best, best_value)

    near_miss, violated = _best_near_miss(curve, objective, constraints)
    raise InfeasibleError(violated, near_miss, objective)


def _best_near_miss(
    curve: ThresholdCurve,
    objective: MetricId,
    constraints: tuple[Constraint, ...],
) -> tuple[OperatingPoint, Constraint | None]:
    """Candidate failing the fewest requirements (an undefined objective counts
    as one), breaking ties by higher objective value, then largest threshold;
    plus its first violated constraint in the caller's order, if any."""
    best_point = None
    best_key: tuple[int, float] = (-(len(constraints) + 2), -1.0)
    best_violated: list[Constraint] = []
    for point in curve.points:
        violated = [c for c in constraints if not c.satisfied_by(point.metrics)]
        value = point.metrics.value(objective.value)
        failures = len(violated) + (1 if value is None else 0)
        key = (-failures, -1.0 if value is None else value)
        if key >= best_key:
            best_point, best_key, best_violated = point, key, violated
    assert best_point is not None
    return best_point, (best_violated[0] if best_violated else None)


def inverse_for_metric(curve: ThresholdCurve, metric: MetricId, target: float) -> QueryResult:
    """Threshold achieving a dragged metric target.

    recall and fpr invert directly; precision (non-monotone) inverts through
    the optimizer as the best recall with precision >= target.
    """
    _check_target(target)
    if metric is MetricId.RECALL:
        return threshold_for_recall(curve, target)
    if metric is MetricId.FPR:
        return threshold_for_fpr(curve, target)
    return optimize(
        curve,
        MetricId.RECALL,
        (Constraint(MetricId.PRECISION, Relation.AT_LEAST, target),),
    )
