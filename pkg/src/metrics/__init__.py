"""
Métricas de seguimiento: OSPA, CLEAR-MOT y RMSE
"""

from .clear_mot import MatchedPair, TrackScore, match_scan, rmse, track_metrics
from .ospa import default_covariance, mahalanobis_matrix, ospa, state_to_rd
from .report import (
    RUN_COLUMNS,
    SERIES_COLUMNS,
    SUMMARY_COLUMNS,
    MetricConfig,
    MetricReport,
    aggregate_reports,
    evaluate_run,
)

__all__ = [
    "MatchedPair",
    "TrackScore",
    "match_scan",
    "rmse",
    "track_metrics",
    "default_covariance",
    "mahalanobis_matrix",
    "ospa",
    "state_to_rd",
    "RUN_COLUMNS",
    "SERIES_COLUMNS",
    "SUMMARY_COLUMNS",
    "MetricConfig",
    "MetricReport",
    "aggregate_reports",
    "evaluate_run",
]
