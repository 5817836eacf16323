"""Operating-point exploration for binary damage classifiers.

The core pipeline: load or synthesize a dataset of scored, labeled examples
(`ingest`), build the exact curve of candidate operating points (`curve`),
answer forward and inverse threshold queries (`metrics`, `queries`), and
apportion outcomes onto a fixed icon grid for preview (`preview`). A scoring
service client (`ores`), an HTTP service (`service`), a CLI (`cli`), and a
scikit-learn style estimator (`estimator`) sit on top.

`service` and `cli` are not imported here; import them explicitly so that
library use never pays for FastAPI startup.
"""

__version__ = "0.1.0"

from .curve import OperatingPoint, ThresholdCurve, build_curve, point_at
from .dataset import Dataset, Label, ScoredExample
from .estimator import ThresholdClassifier
from .ingest import (
    CSV_HEADER,
    IngestError,
    SynthConfig,
    fixture_t04,
    load_path,
    parse_any,
    parse_csv,
    parse_jsonl,
    synthesize,
    write_csv,
)
from .metrics import (
    ABOVE_MAX,
    ConfusionCounts,
    MetricSet,
    Threshold,
    check_threshold,
    classify,
    confusion_at,
    metrics_from,
)
from .ores import (
    ClientError,
    RevisionScore,
    ScoreClient,
    ScoreRequest,
    build_dataset,
    fetch_scores,
)
from .preview import (
    CATEGORY_ORDER,
    IconColor,
    IconShape,
    LegendEntry,
    PreviewCategory,
    PreviewGrid,
    allocate_icons,
    legend,
)
from .queries import (
    Constraint,
    InfeasibleError,
    MetricId,
    QueryResult,
    Relation,
    UndefinedMetricError,
    inverse_for_metric,
    optimize,
    parse_constraint,
    threshold_for_fpr,
    threshold_for_recall,
)

__all__ = [
    "ABOVE_MAX",
    "CATEGORY_ORDER",
    "CSV_HEADER",
    "ClientError",
    "ConfusionCounts",
    "Constraint",
    "Dataset",
    "IconColor",
    "IconShape",
    "InfeasibleError",
    "IngestError",
    "Label",
    "LegendEntry",
    "MetricId",
    "MetricSet",
    "OperatingPoint",
    "PreviewCategory",
    "PreviewGrid",
    "QueryResult",
    "Relation",
    "RevisionScore",
    "ScoreClient",
    "ScoreRequest",
    "ScoredExample",
    "SynthConfig",
    "Threshold",
    "ThresholdClassifier",
    "ThresholdCurve",
    "UndefinedMetricError",
    "allocate_icons",
    "build_curve",
    "build_dataset",
    "check_threshold",
    "classify",
    "confusion_at",
    "fetch_scores",
    "fixture_t04",
    "inverse_for_metric",
    "legend",
    "load_path",
    "metrics_from",
    "optimize",
    "parse_any",
    "parse_constraint",
    "parse_csv",
    "parse_jsonl",
    "point_at",
    "synthesize",
    "threshold_for_fpr",
    "threshold_for_recall",
    "write_csv",
    "__version__",
]
