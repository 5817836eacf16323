"""Scored, labeled datasets: the immutable corpus all threshold math runs over."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable


class Label(Enum):
    """True state of an edit. DAMAGING is the positive class throughout."""

    GOOD = "good"
    DAMAGING = "damaging"


@dataclass(frozen=True)
class ScoredExample:
    """One edit: the model's damaging probability plus its human-judged label."""

    score: float
    label: Label
    id: str | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be in [0, 1], got {self.score!r}")
        if not isinstance(self.label, Label):
            raise ValueError(f"label must be a Label, got {self.label!r}")


@dataclass(frozen=True)
class Dataset:
    """Ordered, immutable collection of scored examples with class tallies."""

    examples: tuple[ScoredExample, ...]
    n_total: int = field(init=False)
    n_damaging: int = field(init=False)
    n_good: int = field(init=False)

    def __post_init__(self) -> None:
        examples = tuple(self.examples)
        n_damaging = sum(1 for ex in examples if ex.label is Label.DAMAGING)
        object.__setattr__(self, "examples", examples)
        object.__setattr__(self, "n_total", len(examples))
        object.__setattr__(self, "n_damaging", n_damaging)
        object.__setattr__(self, "n_good", len(examples) - n_damaging)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, "Label | str"]]) -> "Dataset":
        """Build a dataset from (score, label) pairs; labels may be value strings."""
        return cls(
            tuple(
                ScoredExample(score=s, label=lab if isinstance(lab, Label) else Label(lab))
                for s, lab in pairs
            )
        )
