"""Peak finding on sampled curves with topographic prominence."""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams


@dataclass(frozen=True)
class Peak:
    index: int
    location: float
    height: float
    prominence: float
    width: float


@dataclass(frozen=True)
class PeakReport:
    column: str
    peaks: list = field(default_factory=list)

    @property
    def max_prominence(self):
        return max((p.prominence for p in self.peaks), default=0.0)

    def __len__(self):
        return len(self.peaks)


def _prominence(y, i):
    """Height above the higher of the lowest points reachable on each side
    before the curve rises above ``y[i]``."""
    h = y[i]
    lo = i
    left_min = h
    while lo > 0 and y[lo - 1] <= h:
        lo -= 1
        left_min = min(left_min, y[lo])
    hi = i
    right_min = h
    n = len(y)
    while hi < n - 1 and y[hi + 1] <= h:
        hi += 1
        right_min = min(right_min, y[hi])
    return h - max(left_min, right_min), lo, hi


def _crossing(y, start, stop, step, level):
    """Fractional index where y first drops to ``level`` walking from ``start``."""
    j = start
    while j != stop and y[j] > level:
        j += step
    if j == start:
        return float(j)
    prev = j - step
    if y[j] > level:
        return float(j)
    # linear interpolation between prev (above level) and j (at or below)
    frac = (y[prev] - level) / (y[prev] - y[j])
    return prev + step * frac


def find_peaks_array(x, y, min_prominence=0.0, column="value"):
    """Strict interior local maxima of ``y`` whose prominence exceeds ``min_prominence``.

    NaN samples are treated as missing: peaks are searched on the finite
    subsequence.  Widths are measured at ``height - prominence / 2`` with
    linear interpolation and expressed in the units of ``x``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidParams("x and y must be one-dimensional arrays of equal length")
    keep = np.isfinite(y)
    orig_index = np.flatnonzero(keep)
    x, y = x[keep], y[keep]
    n = len(y)
    peaks = []
    for i in range(1, n - 1):
        if not (y[i] > y[i - 1] and y[i] > y[i + 1]):
            continue
        prom, lo, hi = _prominence(y, i)
        if prom <= min_prominence:
            continue
        level = y[i] - prom / 2.0
        left = _crossing(y, i, lo, -1, level)
        right = _crossing(y, i, hi, 1, level)
        idx = np.arange(n, dtype=float)
        width = float(np.interp(right, idx, x) - np.interp(left, idx, x))
        peaks.append(Peak(int(orig_index[i]), float(x[i]), float(y[i]), float(prom), abs(width)))
    return PeakReport(column, peaks)


def find_peaks(rows, column, min_prominence=0.0):
    """Peaks of one column of a sweep, located by the swept parameter value."""
    if len(rows) < 3:
        raise InvalidParams("peak finding needs at least three rows")
    if not hasattr(rows[0], column):
        raise InvalidParams(f"unknown column {column!r}")
    x = [r.value for r in rows]
    y = [getattr(r, column) for r in rows]
    return find_peaks_array(x, y, min_prominence, column)
