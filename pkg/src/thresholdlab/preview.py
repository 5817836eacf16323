"""Fixed-size pictogram apportionment of the four outcome categories.

Encoding is fixed: color says how the classifier tagged an edit (blue =
flagged good, red = flagged damaging), shape says its true state (circle =
truly good, triangle = truly damaging). So TN is a blue circle, FN a blue
triangle, FP a red circle, TP a red triangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .metrics import ConfusionCounts


class PreviewCategory(Enum):
    TN = "TN"
    FP = "FP"
    TP = "TP"
    FN = "FN"


# fixed order, also the tie-break order for equal apportionment remainders
CATEGORY_ORDER = (
    PreviewCategory.TN,
    PreviewCategory.FP,
    PreviewCategory.TP,
    PreviewCategory.FN,
)


class IconColor(Enum):
    BLUE = "blue"
    RED = "red"


class IconShape(Enum):
    CIRCLE = "circle"
    TRIANGLE = "triangle"


@dataclass(frozen=True)
class LegendEntry:
    color: IconColor
    shape: IconShape
    caption: str

    def as_dict(self) -> dict[str, str]:
        return {"color": self.color.value, "shape": self.shape.value, "caption": self.caption}


_LEGEND: dict[PreviewCategory, LegendEntry] = {
    PreviewCategory.TN: LegendEntry(IconColor.BLUE, IconShape.CIRCLE, "correctly detected as good"),
    PreviewCategory.FP: LegendEntry(IconColor.RED, IconShape.CIRCLE, "wrongly detected as damaging"),
    PreviewCategory.TP: LegendEntry(IconColor.RED, IconShape.TRIANGLE, "correctly detected as damaging"),
    PreviewCategory.FN: LegendEntry(IconColor.BLUE, IconShape.TRIANGLE, "wrongly detected as good"),
}


def legend() -> dict[PreviewCategory, LegendEntry]:
    """The fixed color/shape encoding with human-readable captions."""
    return dict(_LEGEND)


@dataclass(frozen=True)
class PreviewGrid:
    """A fixed number of icons apportioned across the four categories."""

    n_icons: int
    allocation: Mapping[PreviewCategory, int]
    fractions: Mapping[PreviewCategory, float]

    def as_dict(self) -> dict:
        return {
            "n_icons": self.n_icons,
            "allocation": {c.value: n for c, n in self.allocation.items()},
            "fractions": {c.value: f for c, f in self.fractions.items()},
        }


def allocate_icons(counts: ConfusionCounts, n_icons: int) -> PreviewGrid:
    """Largest-remainder apportionment of n_icons across TN/FP/TP/FN.

    Each category gets the floor of its exact quota n_icons * fraction, and
    the leftover icons go to the largest fractional remainders; remainder
    ties are broken in the fixed TN, FP, TP, FN order. The result sums to
    n_icons exactly and stays within one icon of every quota.
    """
    total = counts.total
    if total < 1:
        raise ValueError("cannot preview zero-total counts")
    if n_icons < 1:
        raise ValueError(f"n_icons must be >= 1, got {n_icons!r}")

    per_category = {
        PreviewCategory.TN: counts.tn,
        PreviewCategory.FP: counts.fp,
        PreviewCategory.TP: counts.tp,
        PreviewCategory.FN: counts.fn,
    }
    # exact rational quotas: float rounding must not reorder remainders
    quotas = {c: Fraction(per_category[c] * n_icons, total) for c in CATEGORY_ORDER}
    allocation = {c: int(quotas[c]) for c in CATEGORY_ORDER}
    leftover = n_icons - sum(allocation.values())
    by_remainder = sorted(CATEGORY_ORDER, key=lambda c: quotas[c] - allocation[c], reverse=True)
    for c in by_remainder[:leftover]:
        allocation[c] += 1

    fractions = {c: per_category[c] / total for c in CATEGORY_ORDER}
    return PreviewGrid(n_icons=n_icons, allocation=allocation, fractions=fractions)
