"""Shared fixtures: reference datasets, independent oracles, and a stub scoring server.

The oracles here deliberately re-derive every quantity by brute force, without
calling back into the library's own arithmetic, so tests catch shared bugs.
"""

from __future__ import annotations

import json
import random
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

import pytest
from hypothesis import settings

from thresholdlab import ABOVE_MAX, Dataset, Label, ScoredExample, build_curve, fixture_t04

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


D0_PAIRS = [(0.9, "damaging"), (0.8, "good"), (0.3, "damaging"), (0.1, "good")]


@pytest.fixture(scope="session")
def d0() -> Dataset:
    return Dataset.from_pairs(D0_PAIRS)


@pytest.fixture(scope="session")
def d0_curve(d0):
    return build_curve(d0)


@pytest.fixture(scope="session")
def f1() -> Dataset:
    return fixture_t04()


@pytest.fixture(scope="session")
def f1_curve(f1):
    return build_curve(f1)


# -- independent oracles ------------------------------------------------------


def oracle_confusion(dataset: Dataset, threshold) -> tuple[int, int, int, int]:
    """Brute-force (tp, fp, tn, fn) at a threshold; no library arithmetic."""
    tp = fp = tn = fn = 0
    for ex in dataset.examples:
        flagged = threshold is not ABOVE_MAX and ex.score >= threshold
        truly_damaging = ex.label is Label.DAMAGING
        if flagged and truly_damaging:
            tp += 1
        elif flagged:
            fp += 1
        elif truly_damaging:
            fn += 1
        else:
            tn += 1
    return tp, fp, tn, fn


def oracle_metrics(tp: int, fp: int, tn: int, fn: int):
    recall = tp / (tp + fn) if tp + fn else None
    precision = tp / (tp + fp) if tp + fp else None
    fpr = fp / (fp + tn) if fp + tn else None
    return recall, precision, fpr


def oracle_inverse_recall(curve, target):
    """Largest candidate threshold with recall >= target; points ascend."""
    best = None
    for point in curve.points:
        r = point.metrics.recall
        if r is not None and r >= target:
            best = point
    return best


def oracle_inverse_fpr(curve, max_fpr):
    """Smallest candidate threshold with fpr <= max_fpr."""
    for point in curve.points:
        f = point.metrics.fpr
        if f is not None and f <= max_fpr:
            return point
    return None


def oracle_optimize(curve, objective: str, constraints):
    """Exhaustive scan: max objective, every constraint satisfied on defined
    metrics, tie to the largest threshold (the later ascending point)."""
    best = None
    best_value = None
    for point in curve.points:
        value = point.metrics.value(objective)
        if value is None:
            continue
        ok = True
        for metric, relation, bound in constraints:
            got = point.metrics.value(metric)
            if got is None:
                ok = False
            elif relation == ">=" and not got >= bound:
                ok = False
            elif relation == "<=" and not got <= bound:
                ok = False
        if not ok:
            continue
        if best_value is None or value >= best_value:
            best, best_value = point, value
    return best


def random_dataset(rng: random.Random, max_n: int = 200) -> Dataset:
    """Random dataset generator exercising ties, extremes, and skewed classes."""
    n = rng.randint(1, max_n)
    prevalence = rng.choice([0.0, 1.0, rng.random(), rng.random()])
    style = rng.randrange(4)
    examples = []
    for i in range(n):
        if style == 0:
            score = rng.random()
        elif style == 1:
            score = round(rng.random(), 1)  # heavy ties
        elif style == 2:
            score = rng.choice([0.0, 0.25, 0.5, 0.75, 1.0])
        else:
            score = rng.choice([0.0, 1.0, rng.random()])
        label = Label.DAMAGING if rng.random() < prevalence else Label.GOOD
        examples.append(ScoredExample(score=score, label=label, id=f"r{i}"))
    return Dataset(tuple(examples))


# -- stub scoring server ------------------------------------------------------


class StubScoreServer:
    """Local ORES-shaped HTTP server recording every request.

    Behavior knobs: ``fail_next`` consumes one queued behavior per request
    ("status:500", "garbage", "drop"); ``revision_errors`` maps rev ids to an
    error payload instead of a score.
    """

    def __init__(self):
        self.requests: list[dict] = []
        self.fail_next: list[str] = []
        self.revision_errors: dict[int, dict] = {}
        self.score_for = lambda rid: {"prediction": False, "probability": {"false": 0.9, "true": 0.1}}

        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                parsed = urlparse(self.path)
                revids = [int(r) for r in parse_qs(parsed.query)["revids"][0].split("|")]
                stub.requests.append({"path": parsed.path, "revids": revids})
                if stub.fail_next:
                    mode = stub.fail_next.pop(0)
                    if mode.startswith("status:"):
                        self.send_response(int(mode.split(":")[1]))
                        self.end_headers()
                        return
                    if mode == "garbage":
                        self.send_response(200)
                        self.send_header("Content-Type", "application/json")
                        self.end_headers()
                        self.wfile.write(b"this is not json")
                        return
                    if mode == "drop":
                        self.connection.close()
                        return
                scores = {}
                for rid in revids:
                    if rid in stub.revision_errors:
                        scores[str(rid)] = {"damaging": {"error": stub.revision_errors[rid]}}
                    else:
                        scores[str(rid)] = {"damaging": {"score": stub.score_for(rid)}}
                payload = json.dumps({"enwiki": {"scores": scores}}).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.end_headers()
                self.wfile.write(payload)

            def log_message(self, *args):
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @property
    def base_url(self) -> str:
        return f"http://127.0.0.1:{self._server.server_port}"

    def close(self):
        self._server.shutdown()
        self._server.server_close()


@pytest.fixture
def stub_server():
    server = StubScoreServer()
    yield server
    server.close()
