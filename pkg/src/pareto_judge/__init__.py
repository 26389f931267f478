"""Evaluation toolkit for comparing single-solution classifiers against
multi-objective solution fronts on imbalanced data."""

from .confusion_metrics import (
    ConfusionMatrix,
    MetricValue,
    bac,
    fbeta,
    gmean,
    objective_point_of,
    ppv,
    tnr,
    tpr,
)
from .fbeta_analysis import (
    BetaGrid,
    FbetaCurve,
    default_beta_grid,
    fbeta_curve,
    fbeta_envelope,
    render_fbeta_plot,
    render_isocurves,
    render_region_plot,
)
from .indicators import (
    IndicatorResult,
    evaluate_indicator,
    euclidean_distance,
    generational_distance,
    hypervolume,
    hypervolume_mc,
    ndr,
    sdr,
)
from .ingest_report import (
    ComparisonReport,
    DatasetInfo,
    ExperimentRecord,
    ParseError,
    ReportCell,
    aggregate,
    emit_records,
    imbalance_ratio,
    parse_datasets,
    parse_records,
    read_report_csv,
    render_report,
)
from .objective_space import ObjectivePoint, SolutionSet, pareto_front, strictly_dominates

__version__ = "0.1.0"

__all__ = [
    "ConfusionMatrix",
    "MetricValue",
    "tpr",
    "tnr",
    "ppv",
    "bac",
    "gmean",
    "fbeta",
    "objective_point_of",
    "ObjectivePoint",
    "SolutionSet",
    "strictly_dominates",
    "pareto_front",
    "IndicatorResult",
    "generational_distance",
    "euclidean_distance",
    "hypervolume",
    "hypervolume_mc",
    "sdr",
    "ndr",
    "evaluate_indicator",
    "BetaGrid",
    "FbetaCurve",
    "default_beta_grid",
    "fbeta_curve",
    "fbeta_envelope",
    "render_fbeta_plot",
    "render_region_plot",
    "render_isocurves",
    "ExperimentRecord",
    "DatasetInfo",
    "ReportCell",
    "ComparisonReport",
    "ParseError",
    "parse_records",
    "emit_records",
    "parse_datasets",
    "imbalance_ratio",
    "aggregate",
    "render_report",
    "read_report_csv",
    "__version__",
]
