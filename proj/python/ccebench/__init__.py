"""Confidence-consistency evaluation for time-series anomaly detection."""

from ._core import (
    auc_roc,
    cce,
    evaluate_metric,
    extract_events,
    f1,
    f1_pa,
    fit_beta,
    generate_labels,
    generate_scores,
    kendall,
    list_metrics,
    mean_rank_deviation,
    moments,
    normalize,
    rank_descending,
    reduced_f1,
    spearman,
)

__all__ = [
    "auc_roc",
    "cce",
    "evaluate_metric",
    "extract_events",
    "f1",
    "f1_pa",
    "fit_beta",
    "generate_labels",
    "generate_scores",
    "kendall",
    "list_metrics",
    "mean_rank_deviation",
    "moments",
    "normalize",
    "rank_descending",
    "reduced_f1",
    "spearman",
]
