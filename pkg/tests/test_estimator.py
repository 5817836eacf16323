"""scikit-learn facade: fit/predict semantics, params, cloning."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from thresholdlab import ABOVE_MAX, ThresholdClassifier

D0_X = [0.9, 0.8, 0.3, 0.1]
D0_Y = ["damaging", "good", "damaging", "good"]


class TestFit:
    def test_optimized_threshold(self):
        clf = ThresholdClassifier(objective="recall", constraints=("precision>=0.5",))
        clf.fit(D0_X, D0_Y)
        assert clf.threshold_ == 0.3
        assert clf.operating_point_.metrics.recall == 1.0

    def test_fixed_threshold_skips_optimization(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, D0_Y)
        assert clf.threshold_ == 0.5
        assert clf.operating_point_.counts.as_dict() == {"tp": 1, "fp": 1, "tn": 1, "fn": 1}

    def test_classes_negative_first(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, D0_Y)
        assert list(clf.classes_) == ["good", "damaging"]

    def test_numeric_labels(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, [1, 0, 1, 0])
        assert list(clf.classes_) == [0, 1]
        assert list(clf.predict([0.9, 0.1])) == [1, 0]

    def test_column_vector_input(self):
        X = np.array(D0_X).reshape(-1, 1)
        clf = ThresholdClassifier(threshold=0.5).fit(X, D0_Y)
        assert clf.threshold_ == 0.5

    def test_rejects_unknown_labels(self):
        with pytest.raises(ValueError):
            ThresholdClassifier().fit(D0_X, ["spam", "ham", "spam", "ham"])

    def test_rejects_scores_outside_unit_interval(self):
        with pytest.raises(ValueError):
            ThresholdClassifier().fit([0.5, 1.5], ["good", "good"])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            ThresholdClassifier().fit([0.5, 0.6], ["good"])

    def test_rejects_bad_fixed_threshold(self):
        with pytest.raises(ValueError):
            ThresholdClassifier(threshold=1.5).fit(D0_X, D0_Y)

    def test_rejects_wide_matrix(self):
        with pytest.raises(ValueError):
            ThresholdClassifier().fit([[0.1, 0.2], [0.3, 0.4]], ["good", "good"])


class TestPredict:
    def test_boundary_inclusive(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, D0_Y)
        assert list(clf.predict([0.5, 0.4999])) == ["damaging", "good"]

    def test_before_fit_raises(self):
        with pytest.raises(NotFittedError):
            ThresholdClassifier().predict([0.5])

    def test_above_max_predicts_all_negative(self):
        # Only the flag-nothing point satisfies fpr <= 0 here.
        clf = ThresholdClassifier(objective="recall", constraints=("fpr<=0.0",))
        clf.fit([0.5, 0.9], ["damaging", "good"])
        assert clf.threshold_ is ABOVE_MAX
        assert list(clf.predict([0.1, 0.9, 1.0])) == ["good", "good", "good"]

    def test_agrees_with_operating_point_on_training_data(self):
        clf = ThresholdClassifier(objective="recall", constraints=("precision>=0.5",))
        clf.fit(D0_X, D0_Y)
        predictions = clf.predict(D0_X)
        flagged = sum(1 for p in predictions if p == "damaging")
        assert flagged == clf.operating_point_.counts.predicted_positive

    def test_score_accuracy(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, D0_Y)
        assert clf.score(D0_X, D0_Y) == 0.5  # one tp, one tn out of four


class TestSklearnProtocol:
    def test_get_params_round_trip(self):
        clf = ThresholdClassifier(objective="precision", constraints=("fpr<=0.1",), threshold=None)
        params = clf.get_params()
        assert params == {
            "objective": "precision",
            "constraints": ("fpr<=0.1",),
            "threshold": None,
        }
        rebuilt = ThresholdClassifier(**params)
        assert rebuilt.get_params() == params

    def test_set_params(self):
        clf = ThresholdClassifier().set_params(threshold=0.7)
        assert clf.threshold == 0.7

    def test_clone_is_unfitted(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, D0_Y)
        fresh = clone(clf)
        assert fresh.get_params() == clf.get_params()
        with pytest.raises(NotFittedError):
            fresh.predict([0.5])

    def test_fit_returns_self(self):
        clf = ThresholdClassifier(threshold=0.5)
        assert clf.fit(D0_X, D0_Y) is clf

    def test_curve_exposed_for_inspection(self):
        clf = ThresholdClassifier(threshold=0.5).fit(D0_X, D0_Y)
        assert len(clf.curve_.points) == 6
