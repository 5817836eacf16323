"""Client for ORES-style scoring services.

Fetches damaging-model probability scores for revision IDs in batches of at
most 50 per HTTP call, isolating failures per revision: a bad revision, a
failed batch, or a malformed response never sinks its siblings. An offline
mode answers from recorded response bodies instead of the network.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Union

import requests

from .dataset import Dataset, Label, ScoredExample

BATCH_SIZE = 50
DEFAULT_TIMEOUT = 10.0
DEFAULT_USER_AGENT = "thresholdlab/0.1 (threshold exploration toolkit)"


@dataclass(frozen=True)
class ScoreRequest:
    """What to score: service base URL, wiki context, model, revision IDs."""

    base_url: str
    context: str
    model: str
    rev_ids: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rev_ids", tuple(self.rev_ids))
        if not self.base_url:
            raise ValueError("base_url must be non-empty")
        if not self.context or not self.model:
            raise ValueError("context and model must be non-empty")
        if not self.rev_ids:
            raise ValueError("rev_ids must be non-empty")
        for rid in self.rev_ids:
            if isinstance(rid, bool) or not isinstance(rid, int) or rid <= 0:
                raise ValueError(f"rev_ids must be positive integers, got {rid!r}")


@dataclass(frozen=True)
class RevisionScore:
    """One parsed scoring result: the service's own call plus both class probabilities."""

    rev_id: int
    prediction: bool
    p_true: float
    p_false: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_true <= 1.0 or not 0.0 <= self.p_false <= 1.0:
            raise ValueError("probabilities must be in [0, 1]")
        if abs(self.p_true + self.p_false - 1.0) > 1e-6:
            raise ValueError(
                f"probabilities must sum to 1, got {self.p_true} + {self.p_false}"
            )


@dataclass(frozen=True)
class ClientError:
    """Why one revision could not be scored."""

    kind: str  # transport | http_status | malformed_body | revision_error
    detail: str
    rev_id: int | None = None


FetchResult = Mapping[int, Union[RevisionScore, ClientError]]


def _batches(items: tuple[int, ...], size: int):
    for start in range(0, len(items), size):
        yield items[start : start + size]


class ScoreClient:
    """HTTP client with per-batch retry and optional recorded-fixture mode.

    With ``offline_dir`` set, no network access happens at all: every *.json
    file in the directory is treated as a recorded response body and merged
    into one lookup table.
    """

    def __init__(
        self,
        timeout: float = DEFAULT_TIMEOUT,
        user_agent: str = DEFAULT_USER_AGENT,
        retry_delay: float = 1.0,
        offline_dir: str | Path | None = None,
        session: requests.Session | None = None,
    ):
        self.timeout = timeout
        self.retry_delay = retry_delay
        self.offline_dir = Path(offline_dir) if offline_dir is not None else None
        self._session = session or requests.Session()
        self._session.headers["User-Agent"] = user_agent
        self._fixture_cache: dict[str, dict] = {}

    def fetch_scores(self, request: ScoreRequest) -> dict[int, RevisionScore | ClientError]:
        """Resolve every requested revision to a score or an error, exactly once."""
        if self.offline_dir is not None:
            return self._fetch_offline(request)
        results: dict[int, RevisionScore | ClientError] = {}
        for batch in _batches(request.rev_ids, BATCH_SIZE):
            results.update(self._fetch_batch(request, batch))
        return results

    # -- online path ------------------------------------------------------

    def _fetch_batch(self, request: ScoreRequest, batch: tuple[int, ...]):
        url = request.base_url.rstrip("/") + f"/v3/scores/{request.context}/"
        params = {"models": request.model, "revids": "|".join(str(r) for r in batch)}
        body, error = self._get_json(url, params)
        if error is not None:
            return {rid: replace(error, rev_id=rid) for rid in batch}
        return {rid: _extract_revision(body, request.context, request.model, rid) for rid in batch}

    def _get_json(self, url: str, params: dict) -> tuple[dict | None, ClientError | None]:
        # one retry per failed batch, fixed delay, then give up on the batch
        last_error: ClientError | None = None
        for attempt in range(2):
            if attempt:
                time.sleep(self.retry_delay)
            try:
                response = self._session.get(url, params=params, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = ClientError("transport", str(exc))
                continue
            if response.status_code != 200:
                last_error = ClientError("http_status", f"HTTP {response.status_code}")
                continue
            try:
                return response.json(), None
            except ValueError:
                last_error = ClientError("malformed_body", "response body is not valid JSON")
                continue
        return None, last_error

    # -- offline path ------------------------------------------------------

    def _fetch_offline(self, request: ScoreRequest) -> dict[int, RevisionScore | ClientError]:
        body = self._fixture_body(request.context)
        results: dict[int, RevisionScore | ClientError] = {}
        for rid in request.rev_ids:
            if str(rid) in body[request.context]["scores"]:
                results[rid] = _extract_revision(body, request.context, request.model, rid)
            else:
                results[rid] = ClientError(
                    "revision_error", "revision not present in recorded fixtures", rid
                )
        return results

    def _fixture_body(self, context: str) -> dict:
        if context not in self._fixture_cache:
            merged: dict = {}
            for path in sorted(self.offline_dir.glob("*.json")):
                try:
                    recorded = json.loads(path.read_text(encoding="utf-8"))
                except (OSError, ValueError) as exc:
                    raise ValueError(f"unreadable fixture {path}: {exc}") from exc
                scores = recorded.get(context, {}).get("scores", {})
                merged.update(scores)
            self._fixture_cache[context] = {context: {"scores": merged}}
        return self._fixture_cache[context]


def _extract_revision(body, context: str, model: str, rev_id: int) -> RevisionScore | ClientError:
    try:
        fragment = body[context]["scores"][str(rev_id)][model]
    except (KeyError, TypeError):
        return ClientError("malformed_body", "revision missing from response body", rev_id)
    if not isinstance(fragment, dict):
        return ClientError("malformed_body", "unexpected model fragment", rev_id)
    if "error" in fragment:
        err = fragment["error"]
        kind = err.get("type", "unknown") if isinstance(err, dict) else "unknown"
        message = err.get("message", "") if isinstance(err, dict) else str(err)
        return ClientError("revision_error", f"{kind}: {message}", rev_id)
    score = fragment.get("score")
    if not isinstance(score, dict):
        return ClientError("malformed_body", "missing score object", rev_id)
    prediction = score.get("prediction")
    probability = score.get("probability")
    if not isinstance(prediction, bool) or not isinstance(probability, dict):
        return ClientError("malformed_body", "missing prediction or probability", rev_id)
    p_true = probability.get("true")
    p_false = probability.get("false")
    try:
        return RevisionScore(
            rev_id=rev_id, prediction=prediction, p_true=float(p_true), p_false=float(p_false)
        )
    except (TypeError, ValueError) as exc:
        return ClientError("malformed_body", f"bad probabilities: {exc}", rev_id)


def fetch_scores(
    request: ScoreRequest,
    *,
    timeout: float = DEFAULT_TIMEOUT,
    retry_delay: float = 1.0,
    offline_dir: str | Path | None = None,
) -> dict[int, RevisionScore | ClientError]:
    """One-shot convenience wrapper around ScoreClient.fetch_scores."""
    client = ScoreClient(timeout=timeout, retry_delay=retry_delay, offline_dir=offline_dir)
    return client.fetch_scores(request)


def build_dataset(
    scores: Mapping[int, RevisionScore | ClientError],
    labels: Mapping[int, Label],
) -> tuple[Dataset, list[int]]:
    """Join fetched scores with human labels into a Dataset.

    Only revisions present in both maps (with an actual score, not an error)
    become examples, with score = probability of damaging. Everything else
    lands in the returned skipped list.
    """
    examples = []
    skipped = []
    for rid in sorted(set(scores) | set(labels)):
        score = scores.get(rid)
        if isinstance(score, RevisionScore) and rid in labels:
            examples.append(ScoredExample(id=str(rid), score=score.p_true, label=labels[rid]))
        else:
            skipped.append(rid)
    if not examples:
        raise ValueError("no revision has both a score and a label")
    return Dataset(tuple(examples)), skipped


def read_rev_ids(source: str | Path) -> list[int]:
    """Read revision IDs from a file, one per line; blank lines are skipped."""
    ids = []
    for line_no, raw in enumerate(Path(source).read_text(encoding="utf-8").splitlines(), start=1):
        token = raw.strip()
        if not token:
            continue
        try:
            rid = int(token)
        except ValueError:
            raise ValueError(f"bad revision id {token!r} on line {line_no}") from None
        ids.append(rid)
    if not ids:
        raise ValueError("no revision ids in file")
    return ids


def read_labels_csv(source: str | Path) -> dict[int, Label]:
    """Read a two-column ``id,label`` CSV mapping revision IDs to true labels."""
    labels: dict[int, Label] = {}
    with open(source, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [f.strip() for f in header] != ["id", "label"]:
            raise ValueError("labels file must have header id,label")
        for row in reader:
            if not row or not any(f.strip() for f in row):
                continue
            if len(row) != 2:
                raise ValueError(f"bad labels row on line {reader.line_num}")
            id_text, label_text = (f.strip() for f in row)
            try:
                rid = int(id_text)
            except ValueError:
                raise ValueError(f"bad revision id {id_text!r} on line {reader.line_num}") from None
            if label_text not in ("good", "damaging"):
                raise ValueError(f"bad label {label_text!r} on line {reader.line_num}")
            labels[rid] = Label(label_text)
    if not labels:
        raise ValueError("no labels in file")
    return labels
