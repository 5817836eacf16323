"""scikit-learn estimator facade over the threshold engine.

ThresholdClassifier turns probability scores into hard labels. fit() builds
the exact operating-point curve of a labeled calibration set and picks the
decision threshold, either a fixed value or the constrained optimum; predict()
applies score >= threshold_. This lets the engine compose with pipelines,
cloning, and grid search.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .curve import build_curve, point_at
from .dataset import Dataset, Label, ScoredExample
from .metrics import ABOVE_MAX
from .queries import Constraint, MetricId, optimize, parse_constraint

_POSITIVE_TOKENS = {1, True, "damaging"}
_NEGATIVE_TOKENS = {0, False, "good"}


def _as_scores(X) -> np.ndarray:
    scores = check_array(X, ensure_2d=False, dtype=np.float64)
    if scores.ndim == 2:
        if scores.shape[1] != 1:
            raise ValueError(f"X must be shape (n,) or (n, 1) scores, got {scores.shape}")
        scores = scores.ravel()
    elif scores.ndim != 1:
        raise ValueError(f"X must be shape (n,) or (n, 1) scores, got {scores.shape}")
    if scores.size and (scores.min() < 0.0 or scores.max() > 1.0):
        raise ValueError("scores must lie in [0, 1]")
    return scores


class ThresholdClassifier(ClassifierMixin, BaseEstimator):
    """Classify probability scores by a tuned or fixed decision threshold.

    Parameters
    ----------
    objective : str, default "recall"
        Metric to maximize when no fixed threshold is given ("recall" or
        "precision").
    constraints : iterable of str or Constraint, default ()
        Bounds like "precision>=0.9" or "fpr<=0.05" the chosen operating
        point must satisfy.
    threshold : float or None, default None
        Fixed decision threshold; skips optimization when set.

    Attributes
    ----------
    threshold_ : float or the ABOVE_MAX sentinel
    curve_ : ThresholdCurve of the calibration data
    operating_point_ : OperatingPoint at the chosen threshold
    classes_ : ndarray of the two label tokens, negative first

    Examples
    --------
    >>> clf = ThresholdClassifier(objective="recall", constraints=("precision>=0.5",))
    >>> clf.fit([0.9, 0.8, 0.3, 0.1], ["damaging", "good", "damaging", "good"])
    ThresholdClassifier(constraints=('precision>=0.5',))
    >>> float(clf.threshold_)
    0.3
    >>> list(clf.predict([0.2, 0.35]))
    ['good', 'damaging']
    """

    def __init__(self, objective="recall", constraints=(), threshold=None):
        self.objective = objective
        self.constraints = constraints
        self.threshold = threshold

    def fit(self, X, y):
        scores = _as_scores(X)
        y = np.asarray(y)
        if y.shape != scores.shape:
            raise ValueError(f"X and y disagree on length: {scores.shape} vs {y.shape}")
        labels, self._token_map = _coerce_labels(y)
        self.classes_ = np.array(
            [self._token_map[Label.GOOD], self._token_map[Label.DAMAGING]]
        )

        dataset = Dataset(
            tuple(ScoredExample(score=float(s), label=lab) for s, lab in zip(scores, labels))
        )
        self.curve_ = build_curve(dataset)

        if self.threshold is not None:
            t = float(self.threshold)
            if not 0.0 <= t <= 1.0:
                raise ValueError(f"threshold must be in [0, 1], got {self.threshold!r}")
            self.threshold_ = t
            self.operating_point_ = point_at(self.curve_, t)
        else:
            constraints = tuple(
                c if isinstance(c, Constraint) else parse_constraint(c)
                for c in self.constraints
            )
            result = optimize(self.curve_, MetricId(self.objective), constraints)
            self.threshold_ = result.point.threshold
            self.operating_point_ = result.point
        return self

    def predict(self, X):
        check_is_fitted(self, "threshold_")
        scores = _as_scores(X)
        positive = self._token_map[Label.DAMAGING]
        negative = self._token_map[Label.GOOD]
        if self.threshold_ is ABOVE_MAX:
            flagged = np.zeros(scores.shape, dtype=bool)
        else:
            flagged = scores >= self.threshold_
        return np.where(flagged, positive, negative)


def _coerce_labels(y) -> tuple[list[Label], dict[Label, object]]:
    """Accept "good"/"damaging", 0/1, or False/True labels; remember the vocabulary."""
    labels = []
    saw_string = False
    for value in y:
        token = value.item() if isinstance(value, np.generic) else value
        if isinstance(token, str):
            saw_string = True
        if token in _POSITIVE_TOKENS:
            labels.append(Label.DAMAGING)
        elif token in _NEGATIVE_TOKENS:
            labels.append(Label.GOOD)
        else:
            raise ValueError(
                f"label {value!r} not understood; use good/damaging, 0/1, or False/True"
            )
    if saw_string:
        token_map = {Label.GOOD: "good", Label.DAMAGING: "damaging"}
    else:
        token_map = {Label.GOOD: 0, Label.DAMAGING: 1}
    return labels, token_map
