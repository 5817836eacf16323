"""Dataset loading (CSV / JSONL), validation, synthesis, and the demo fixture.

File formats:
  CSV   — header ``id,score,label``, UTF-8, LF or CRLF; ids must not need
          quoting (no commas); labels are the exact lowercase tokens
          ``good`` / ``damaging``.
  JSONL — one object per line with fields id (string), score (number),
          label (string); unknown fields are ignored.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import IO, TextIO

from .dataset import Dataset, Label, ScoredExample

CSV_HEADER = ("id", "score", "label")

_LABEL_TOKENS = {"good": Label.GOOD, "damaging": Label.DAMAGING}


class IngestError(ValueError):
    """A dataset stream failed validation; kind and line pinpoint the first problem."""

    KINDS = ("bad_score_range", "bad_label", "malformed_row", "empty_input", "duplicate_id")

    def __init__(self, kind: str, line: int, detail: str):
        assert kind in self.KINDS
        self.kind = kind
        self.line = line
        self.detail = detail
        super().__init__(f"{kind} (line {line}): {detail}")


def _as_text(source: str | bytes | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _make_example(id_: str, score_text: str, label_text: str, line: int) -> ScoredExample:
    if not id_:
        raise IngestError("malformed_row", line, "empty id")
    try:
        score = float(score_text)
    except (TypeError, ValueError):
        raise IngestError("malformed_row", line, f"score {score_text!r} is not a number") from None
    if not 0.0 <= score <= 1.0:
        raise IngestError("bad_score_range", line, f"score {score_text} outside [0, 1]")
    label = _LABEL_TOKENS.get(label_text)
    if label is None:
        raise IngestError("bad_label", line, f"label {label_text!r} is not 'good' or 'damaging'")
    return ScoredExample(id=id_, score=score, label=label)


def parse_csv(source: str | bytes | IO) -> Dataset:
    """Parse the ``id,score,label`` CSV format into an immutable Dataset."""
    text = _as_text(source)
    reader = csv.reader(io.StringIO(text, newline=""))

    header = None
    for row in reader:
        if row and any(field.strip() for field in row):
            header = [field.strip() for field in row]
            break
    if header is None:
        raise IngestError("empty_input", 1, "no rows")
    if header != list(CSV_HEADER):
        raise IngestError(
            "malformed_row", reader.line_num, f"expected header id,score,label, got {','.join(header)}"
        )

    examples: list[ScoredExample] = []
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or not any(field.strip() for field in row):
            continue
        if len(row) != 3:
            raise IngestError("malformed_row", line, f"expected 3 fields, got {len(row)}")
        id_, score_text, label_text = (field.strip() for field in row)
        if id_ in seen:
            raise IngestError("duplicate_id", line, f"id {id_!r} already seen")
        example = _make_example(id_, score_text, label_text, line)
        seen.add(id_)
        examples.append(example)

    if not examples:
        raise IngestError("empty_input", reader.line_num or 1, "no data rows")
    return Dataset(tuple(examples))


def parse_jsonl(source: str | bytes | IO) -> Dataset:
    """Parse one-object-per-line JSON into an immutable Dataset."""
    text = _as_text(source)
    examples: list[ScoredExample] = []
    seen: set[str] = set()
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        last_line = line_no
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise IngestError("malformed_row", line_no, f"invalid JSON: {exc.msg}") from None
        if not isinstance(obj, dict):
            raise IngestError("malformed_row", line_no, "line is not a JSON object")
        id_ = obj.get("id")
        score = obj.get("score")
        label_text = obj.get("label")
        if not isinstance(id_, str) or not id_:
            raise IngestError("malformed_row", line_no, "field 'id' must be a non-empty string")
        if isinstance(score, bool) or not isinstance(score, (int, float)):
            raise IngestError("malformed_row", line_no, "field 'score' must be a number")
        if not isinstance(label_text, str):
            raise IngestError("malformed_row", line_no, "field 'label' must be a string")
        if id_ in seen:
            raise IngestError("duplicate_id", line_no, f"id {id_!r} already seen")
        if not 0.0 <= score <= 1.0:
            raise IngestError("bad_score_range", line_no, f"score {score} outside [0, 1]")
        label = _LABEL_TOKENS.get(label_text)
        if label is None:
            raise IngestError("bad_label", line_no, f"label {label_text!r} is not 'good' or 'damaging'")
        seen.add(id_)
        examples.append(ScoredExample(id=id_, score=float(score), label=label))
    if not examples:
        raise IngestError("empty_input", max(last_line, 1), "no data rows")
    return Dataset(tuple(examples))


def sniff_format(text: str) -> str:
    """Guess 'jsonl' when the first non-blank line starts with '{', else 'csv'."""
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped:
            return "jsonl" if stripped.startswith("{") else "csv"
    return "csv"


def parse_any(source: str | bytes | IO, fmt: str | None = None) -> Dataset:
    """Parse CSV or JSONL, sniffing the format when not given."""
    text = _as_text(source)
    fmt = fmt or sniff_format(text)
    if fmt == "csv":
        return parse_csv(text)
    if fmt == "jsonl":
        return parse_jsonl(text)
    raise ValueError(f"unknown dataset format {fmt!r} (expected csv or jsonl)")


def load_path(path: str | Path) -> Dataset:
    """Load a dataset file, picking the parser from the extension (else sniffing)."""
    path = Path(path)
    suffix = path.suffix.lower()
    fmt = {".csv": "csv", ".jsonl": "jsonl", ".ndjson": "jsonl"}.get(suffix)
    return parse_any(path.read_bytes(), fmt)


def write_csv(dataset: Dataset, stream: TextIO) -> None:
    """Serialize a dataset in the CSV input format; floats round-trip exactly."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i, ex in enumerate(dataset.examples, start=1):
        if ex.id is None:
            raise ValueError(f"example {i} has no id; CSV serialization requires ids")
        writer.writerow([ex.id, repr(ex.score), ex.label.value])


@dataclass(frozen=True)
class SynthConfig:
    """Recipe for a synthetic demo dataset.

    Scores are Beta-distributed: by default most good edits score low
    (Beta(1, 8)) and most damaging edits score high (Beta(6, 2)), with enough
    overlap that threshold trade-offs stay interesting.
    """

    n_total: int
    prevalence: float
    good_score_shape: tuple[float, float] = (1.0, 8.0)
    damaging_score_shape: tuple[float, float] = (6.0, 2.0)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_total < 1:
            raise ValueError(f"n_total must be >= 1, got {self.n_total}")
        if not 0.0 <= self.prevalence <= 1.0:
            raise ValueError(f"prevalence must be in [0, 1], got {self.prevalence}")
        for name in ("good_score_shape", "damaging_score_shape"):
            shape = getattr(self, name)
            if len(shape) != 2 or min(shape) <= 0:
                raise ValueError(f"{name} must be two positive reals, got {shape!r}")


def synthesize(config: SynthConfig) -> Dataset:
    """Deterministically generate a labeled, scored dataset from a config.

    The same config (seed included) always yields the identical dataset.
    """
    rng = random.Random(config.seed)
    n_damaging = round(config.prevalence * config.n_total)
    width = max(4, len(str(config.n_total)))
    examples = []
    for i in range(1, config.n_total + 1):
        damaging = i <= n_damaging
        alpha, beta = config.damaging_score_shape if damaging else config.good_score_shape
        score = min(max(rng.betavariate(alpha, beta), 0.0), 1.0)
        examples.append(
            ScoredExample(
                id=f"synth-{i:0{width}d}",
                score=score,
                label=Label.DAMAGING if damaging else Label.GOOD,
            )
        )
    return Dataset(tuple(examples))


def _even_spacing(lo: float, hi: float, n: int) -> list[float]:
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    values = [lo + step * k for k in range(n)]
    values[-1] = hi  # pin the endpoint against accumulated rounding
    return values


# (count, low score, high score, label) bands; 970 good + 30 damaging edits
_FIXTURE_BANDS = (
    (910, 0.01, 0.39, Label.GOOD),
    (60, 0.40, 0.80, Label.GOOD),
    (20, 0.40, 0.95, Label.DAMAGING),
    (10, 0.05, 0.39, Label.DAMAGING),
)


def fixture_t04() -> Dataset:
    """The deterministic 1000-edit demo fixture.

    Calibrated so that threshold 0.4 splits it into exactly 910 TN / 60 FP /
    20 TP / 10 FN, i.e. 91% correctly kept good, 6% wrongly and 2% correctly
    flagged damaging, 1% missed. Scores are evenly spaced within each band to
    keep the fixture stable and reviewable.
    """
    examples = []
    i = 0
    for count, lo, hi, label in _FIXTURE_BANDS:
        for score in _even_spacing(lo, hi, count):
            i += 1
            examples.append(ScoredExample(id=f"f1-{i:04d}", score=score, label=label))
    return Dataset(tuple(examples))
