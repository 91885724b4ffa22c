"""Trend-significance analysis: correlation, slope tests, and feature grouping.

Each feature's per-window trajectory is fit with ordinary least squares
against window order (or synchronized RPE values when supplied). A feature is
increasing-type when the slope is significantly positive at alpha = 0.05, and
decreasing-type when significantly negative. Channels vote by majority; ties
fall back to nonsignificant.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import stats

from .errors import ConfigError, UsageError
from .features.engine import FeatureMatrix
from .features.ids import GROUPED_FEATURES, TABLE_DECREASING, TABLE_INCREASING

ALPHA = 0.05


class TrendClass(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NONSIGNIFICANT = "nonsignificant"


class GroupingMode(Enum):
    EMPIRICAL = "empirical"
    TABLE = "table"


@dataclass(frozen=True)
class TrendReport:
    feature: str
    channel: str
    n: int
    pearson_r: float
    slope: float
    intercept: float
    p_value: float
    trend_class: TrendClass


@dataclass(frozen=True)
class FeatureGroups:
    increasing: frozenset[str]
    decreasing: frozenset[str]
    nonsignificant: frozenset[str]
    reports: tuple[TrendReport, ...] = ()

    def ordered_increasing(self) -> list[str]:
        return [f for f in GROUPED_FEATURES if f in self.increasing]

    def ordered_decreasing(self) -> list[str]:
        return [f for f in GROUPED_FEATURES if f in self.decreasing]


def pearson_correlation(x: np.ndarray, y: np.ndarray) -> float:
    """Product-moment correlation; raises on degenerate input."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise UsageError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise UsageError("need at least 3 points")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = np.sqrt(np.sum(xc * xc))
    sy = np.sqrt(np.sum(yc * yc))
    if sx == 0 or sy == 0:
        raise ConfigError("zero variance input to correlation")
    return float(np.sum(xc * yc) / (sx * sy))


def fit_trend(values: np.ndarray, feature: str = "", channel: str = "",
              regressor: np.ndarray | None = None,
              alpha: float = ALPHA) -> TrendReport:
    """OLS slope against window order with a two-sided t-test on the slope."""
    y = np.asarray(values, dtype=np.float64)
    n = len(y)
    if n < 3:
        raise UsageError("need at least 3 windows to fit a trend")
    x = np.arange(n, dtype=np.float64) if regressor is None else \
        np.asarray(regressor, dtype=np.float64)
    if len(x) != n:
        raise UsageError("regressor length must match values")

    xc = x - x.mean()
    sxx = float(np.sum(xc * xc))
    if sxx == 0:
        raise UsageError("regressor has zero variance")
    slope = float(np.sum(xc * (y - y.mean())) / sxx)
    intercept = float(y.mean() - slope * x.mean())

    resid = y - (intercept + slope * x)
    rss = float(np.sum(resid * resid))
    syy = float(np.sum((y - y.mean()) ** 2))

    if syy == 0:
        # constant series: no trend by definition
        return TrendReport(feature, channel, n, 0.0, 0.0, float(y[0]), 1.0,
                           TrendClass.NONSIGNIFICANT)

    r = float(np.sum(xc * (y - y.mean())) / np.sqrt(sxx * syy))

    if rss <= 0:
        p = 0.0
    else:
        se = np.sqrt(rss / (n - 2) / sxx)
        t = slope / se
        p = float(2.0 * stats.t.sf(abs(t), n - 2))

    if p < alpha and slope > 0:
        cls = TrendClass.INCREASING
    elif p < alpha and slope < 0:
        cls = TrendClass.DECREASING
    else:
        cls = TrendClass.NONSIGNIFICANT
    return TrendReport(feature, channel, n, r, slope, intercept, p, cls)


def _majority(classes: list[TrendClass]) -> TrendClass:
    counts = {cls: classes.count(cls) for cls in TrendClass}
    best = max(counts.values())
    winners = [cls for cls, c in counts.items() if c == best]
    if len(winners) != 1:
        return TrendClass.NONSIGNIFICANT
    return winners[0]


def group_features(matrix: FeatureMatrix,
                   rpe_values: np.ndarray | None = None,
                   mode: GroupingMode = GroupingMode.EMPIRICAL,
                   alpha: float = ALPHA) -> FeatureGroups:
    """Partition the 34 grouped features into increasing/decreasing/nonsignificant.

    ``mode=TABLE`` skips the statistics and returns the fixed trend-table
    partition. ``rpe_values`` (one per window index) replaces window order as
    the regressor when given.
    """
    if mode is GroupingMode.TABLE:
        return FeatureGroups(
            increasing=frozenset(TABLE_INCREASING),
            decreasing=frozenset(TABLE_DECREASING),
            nonsignificant=frozenset(),
        )

    channels = matrix.channel_labels()
    if matrix.n_rows == 0 or not channels:
        raise UsageError("empty feature matrix")

    reports: list[TrendReport] = []
    increasing: set[str] = set()
    decreasing: set[str] = set()
    nonsignificant: set[str] = set()

    for feature in GROUPED_FEATURES:
        votes: list[TrendClass] = []
        for channel in channels:
            rows = matrix.rows_for_channel(channel)
            order = np.argsort(matrix.window_index[rows], kind="stable")
            series = matrix.values[rows, :][order][:,
                     matrix.names.index(feature)]
            if len(series) < 3:
                raise UsageError("need at least 3 windows per channel")
            regressor = None
            if rpe_values is not None:
                regressor = np.asarray(rpe_values, dtype=np.float64)[
                    matrix.window_index[rows][order]]
            report = fit_trend(series, feature, channel, regressor, alpha)
            reports.append(report)
            votes.append(report.trend_class)
        verdict = _majority(votes)
        if verdict is TrendClass.INCREASING:
            increasing.add(feature)
        elif verdict is TrendClass.DECREASING:
            decreasing.add(feature)
        else:
            nonsignificant.add(feature)

    return FeatureGroups(
        increasing=frozenset(increasing),
        decreasing=frozenset(decreasing),
        nonsignificant=frozenset(nonsignificant),
        reports=tuple(reports),
    )
