"""Classification of metric time series: cycle detection and distinct-value counts."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

PERIOD_TOL = 1e-8
MAX_PERIOD = 32
MIN_REPEATS = 3
VERDICT_WINDOW = 60

CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class SeriesVerdict:
    """Outcome of periodicity analysis on the tail of a series."""

    period: int | None
    n_distinct: int
    label: str

    @property
    def is_periodic(self) -> bool:
        return self.period is not None


def detect_period(
    series: Sequence[float],
    tol: float = PERIOD_TOL,
    max_period: int = MAX_PERIOD,
    min_repeats: int = MIN_REPEATS,
    window: int = VERDICT_WINDOW,
    cluster_tol: float = CLUSTER_TOL,
) -> SeriesVerdict:
    """Find the smallest period of the trailing ``window`` points, if any.

    A period k is confirmed when |x(n+k) - x(n)| < tol for every n in the
    window; k values whose cycle would fit fewer than ``min_repeats`` times
    are not claimable. With no period up to ``max_period`` the verdict is
    aperiodic. Verdicts are relative to the analyzed window by construction.
    """
    x = np.asarray(series, dtype=float)
    if len(x) < max_period * min_repeats:
        raise ValueError(
            f"series of length {len(x)} is too short; need at least {max_period * min_repeats}"
        )
    tail = x[-window:]
    n_distinct = distinct_values(tail, cluster_tol)
    for k in range(1, max_period + 1):
        if k * min_repeats > len(tail):
            break
        if np.all(np.abs(tail[k:] - tail[:-k]) < tol):
            return SeriesVerdict(period=k, n_distinct=n_distinct, label=f"periodic({k})")
    return SeriesVerdict(period=None, n_distinct=n_distinct, label="aperiodic")


def cluster_values(series: Sequence[float], cluster_tol: float = CLUSTER_TOL) -> list[float]:
    """Mean of each single-linkage cluster of the values, ascending.

    Two values join the same cluster when connected by a chain of gaps of at
    most ``cluster_tol``; permutation of the series does not matter.
    """
    x = np.sort(np.asarray(series, dtype=float))
    if len(x) == 0:
        raise ValueError("series is empty")
    cuts = np.flatnonzero(np.diff(x) > cluster_tol)
    return [float(group.mean()) for group in np.split(x, cuts + 1)]


def distinct_values(series: Sequence[float], cluster_tol: float = CLUSTER_TOL) -> int:
    """Number of value clusters under single-linkage with the given threshold."""
    return len(cluster_values(series, cluster_tol))
