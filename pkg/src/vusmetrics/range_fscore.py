"""Range-based precision, recall and F-score over anomaly ranges.

A real range earns an existence reward when any predicted range touches
it, and an overlap reward for the fraction of its points covered. With
the default configuration (cardinality factor 1, flat positional bias,
overlap-ratio size function) the overlap reward reduces to covered
points / range length. Range precision mirrors range recall with the
roles of real and predicted ranges swapped and no existence term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .series import AnomalyRange

_GAMMA_MODES = ("one",)
_DELTA_MODES = ("flat",)
_OMEGA_MODES = ("overlap_ratio",)


@dataclass(frozen=True)
class RangeRewardConfig:
    """Reward configuration; the defaults are the standard ones.

    alpha weights existence vs overlap inside range recall. The mode
    fields select the cardinality / positional-bias / overlap-size
    functions; only the defaults are implemented, the fields exist so
    alternate modes have a place to land.
    """

    alpha: float = 0.0
    gamma_mode: str = "one"
    delta_mode: str = "flat"
    omega_mode: str = "overlap_ratio"

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise UsageError("alpha must lie in [0, 1]")
        if self.gamma_mode not in _GAMMA_MODES:
            raise UsageError(f"unsupported gamma_mode {self.gamma_mode!r}")
        if self.delta_mode not in _DELTA_MODES:
            raise UsageError(f"unsupported delta_mode {self.delta_mode!r}")
        if self.omega_mode not in _OMEGA_MODES:
            raise UsageError(f"unsupported omega_mode {self.omega_mode!r}")


DEFAULT_CONFIG = RangeRewardConfig()


def _overlap_len(a: AnomalyRange, b: AnomalyRange) -> int:
    return max(0, min(a.end, b.end) - max(a.start, b.start) + 1)


def existence_reward(r: AnomalyRange, pred_ranges: list[AnomalyRange]) -> int:
    """1 if any predicted range overlaps r by at least one point, else 0."""
    return int(any(_overlap_len(r, p) > 0 for p in pred_ranges))


def overlap_reward(
    r: AnomalyRange,
    pred_ranges: list[AnomalyRange],
    cfg: RangeRewardConfig = DEFAULT_CONFIG,
) -> float:
    """Covered fraction of r under the configured size/bias functions."""
    # Cardinality factor is 1 under the default mode; ranges passed in are
    # disjoint, so summing per-prediction overlap ratios equals the
    # covered-fraction of r.
    total = sum(_overlap_len(r, p) for p in pred_ranges)
    return total / len(r)


def r_recall(
    real_ranges: list[AnomalyRange],
    pred_ranges: list[AnomalyRange],
    cfg: RangeRewardConfig = DEFAULT_CONFIG,
) -> float:
    """Mean over real ranges of alpha*existence + (1-alpha)*overlap.

    Returns 0 when there are no real ranges, so sweeps over anomaly-free
    instances stay well defined.
    """
    if not real_ranges:
        return 0.0
    acc = 0.0
    for r in real_ranges:
        er = existence_reward(r, pred_ranges)
        orr = overlap_reward(r, pred_ranges, cfg)
        acc += cfg.alpha * er + (1.0 - cfg.alpha) * orr
    return acc / len(real_ranges)


def r_precision(
    real_ranges: list[AnomalyRange],
    pred_ranges: list[AnomalyRange],
    cfg: RangeRewardConfig = DEFAULT_CONFIG,
) -> float:
    """Mean over predicted ranges of their overlap reward against truth.

    No existence term: a prediction is scored purely by how much of it
    lies inside real ranges. Returns 0 when there are no predictions.
    """
    if not pred_ranges:
        return 0.0
    acc = 0.0
    for p in pred_ranges:
        acc += overlap_reward(p, real_ranges, cfg)
    return acc / len(pred_ranges)


def rf_score(
    real_ranges: list[AnomalyRange],
    pred_ranges: list[AnomalyRange],
    cfg: RangeRewardConfig = DEFAULT_CONFIG,
    beta: float = 1.0,
) -> float:
    """Harmonic combination of range precision and range recall."""
    if beta <= 0:
        raise UsageError("beta must be positive")
    rp = r_precision(real_ranges, pred_ranges, cfg)
    rr = r_recall(real_ranges, pred_ranges, cfg)
    denom = beta * beta * rp + rr
    if denom == 0:
        return 0.0
    return (1.0 + beta * beta) * rp * rr / denom
