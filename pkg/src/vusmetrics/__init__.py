"""Accuracy measures for time-series anomaly detection.

Threshold measures, ROC/PR areas, buffered range-aware areas and
volume-under-surface measures over a buffer sweep, plus perturbation
protocols and an execution-time benchmark harness.
"""

from .backend import get_backend
from .curves import CurvePoint, auc_pr, auc_roc, sweep_curve
from .errors import DataError, ResourceError, UsageError, VusMetricsError
from .measures import MEASURE_NAMES, evaluate_all
from .perturb import (
    PerturbationSpec,
    RobustnessReport,
    perturb_lag,
    perturb_noise,
    perturb_ratio,
    rank_entropy,
    robustness_study,
    separability_ztest,
)
from .pointwise import (
    ConfusionCounts,
    confusion,
    f_beta,
    fpr,
    precision,
    precision_at_k,
    recall,
)
from .range_auc import (
    BufferedConfusion,
    ContinuousLabels,
    buffered_confusion,
    build_continuous_labels,
    default_buffer_length,
    estimate_period,
    r_auc,
    r_auc_pr,
    r_auc_roc,
    range_rates,
)
from .range_fscore import (
    DEFAULT_CONFIG,
    RangeRewardConfig,
    existence_reward,
    overlap_reward,
    r_precision,
    r_recall,
    rf_score,
)
from .series import (
    AnomalyRange,
    PredictionMask,
    ScoredSeries,
    ThresholdGrid,
    apply_threshold,
    default_threshold,
    extract_ranges,
    normalize_score,
    ranges_to_labels,
)
from .synth import SynthSpec, generate
from .vus import (
    BufferGrid,
    SegmentMap,
    VusResult,
    build_segment_map,
    vus,
    vus_naive,
    vus_opt,
    vus_opt_mem,
    vus_trapezoid_aggregate,
)

__version__ = "0.1.0"

__all__ = [
    "AnomalyRange",
    "BufferGrid",
    "BufferedConfusion",
    "ConfusionCounts",
    "ContinuousLabels",
    "CurvePoint",
    "DEFAULT_CONFIG",
    "DataError",
    "MEASURE_NAMES",
    "PerturbationSpec",
    "PredictionMask",
    "RangeRewardConfig",
    "ResourceError",
    "RobustnessReport",
    "ScoredSeries",
    "SegmentMap",
    "SynthSpec",
    "ThresholdGrid",
    "UsageError",
    "VusMetricsError",
    "VusResult",
    "apply_threshold",
    "auc_pr",
    "auc_roc",
    "buffered_confusion",
    "build_continuous_labels",
    "build_segment_map",
    "confusion",
    "default_buffer_length",
    "default_threshold",
    "estimate_period",
    "evaluate_all",
    "existence_reward",
    "extract_ranges",
    "f_beta",
    "fpr",
    "generate",
    "get_backend",
    "normalize_score",
    "overlap_reward",
    "perturb_lag",
    "perturb_noise",
    "perturb_ratio",
    "precision",
    "precision_at_k",
    "r_auc",
    "r_auc_pr",
    "r_auc_roc",
    "r_precision",
    "r_recall",
    "range_rates",
    "ranges_to_labels",
    "rank_entropy",
    "recall",
    "rf_score",
    "robustness_study",
    "separability_ztest",
    "sweep_curve",
    "vus",
    "vus_naive",
    "vus_opt",
    "vus_opt_mem",
    "vus_trapezoid_aggregate",
]
