"""Extremal-index estimators and exceedance statistics for a sampled trace.

Two estimators are provided:

* the copula estimator: estimate the copula of pairs of consecutive
  samples, then read the slope of its diagonal at ``(1, 1)``;
  ``theta = slope - 1``;
* the intervals estimator, built from the times between exceedances of a
  threshold, usually run over a sweep of quantile thresholds.

Plus the run-based cluster decomposition, first hitting times and an
empirical check of whether exceedances arrive as runs or as repeated
upcrossings.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import interpolate, stats


class EstimatorError(ValueError):
    """Raised when an estimator is undefined for the given data."""


@dataclass
class EIEstimate:
    theta: float
    method: str
    context: dict = field(default_factory=dict)
    n: int = 0

    def __post_init__(self):
        self.theta = float(min(1.0, max(0.0, self.theta)))


def _as_array(x):
    x = getattr(x, "degrees", x)
    return np.asarray(x)


# exceedances -------------------------------------------------------------


@dataclass
class ExceedanceStats:
    """Exceedances of a threshold ``u`` by a trace.

    ``epochs`` are 1-based positions of the samples strictly above ``u``;
    ``clusters`` are the lengths of the maximal runs of consecutive
    exceedances, in order of appearance.
    """

    u: float
    n: int
    epochs: np.ndarray
    clusters: np.ndarray

    @property
    def count(self) -> int:
        return len(self.epochs)

    @property
    def interexceedance(self) -> np.ndarray:
        return np.diff(self.epochs)

    @property
    def upcrossings(self) -> int:
        """Exceedances preceded by a non-exceedance (the first sample counts if it exceeds)."""
        return len(self.clusters)


def exceedance_stats(x, u: float) -> ExceedanceStats:
    x = _as_array(x)
    above = x > u
    epochs = np.flatnonzero(above) + 1
    if len(epochs):
        # run boundaries are where consecutive epochs are not adjacent
        breaks = np.flatnonzero(np.diff(epochs) > 1)
        starts = np.r_[0, breaks + 1]
        ends = np.r_[breaks + 1, len(epochs)]
        clusters = ends - starts
    else:
        clusters = np.zeros(0, dtype=np.int64)
    return ExceedanceStats(float(u), len(x), epochs, clusters)


@dataclass
class ClusterSizes:
    pmf: dict
    mean: float
    count: int


def cluster_size_distribution(st: ExceedanceStats) -> ClusterSizes:
    """Empirical distribution of cluster sizes and its mean."""
    if st.count < 1:
        raise EstimatorError("no exceedances, no clusters")
    sizes, counts = np.unique(st.clusters, return_counts=True)
    total = counts.sum()
    pmf = {int(s): float(c / total) for s, c in zip(sizes, counts)}
    return ClusterSizes(pmf, float(st.clusters.mean()), int(total))


def first_hitting_time(x, u: float) -> int | None:
    """1-based index of the first sample above ``u``, or ``None`` if none is."""
    x = _as_array(x)
    hits = np.flatnonzero(x > u)
    return int(hits[0]) + 1 if len(hits) else None


# intervals estimator --------------------------------------------------------


def intervals_from_epochs(epochs) -> EIEstimate:
    """Intervals estimator from exceedance epochs ``S_1 < ... < S_N``.

    With interexceedance times ``T_i``::

        theta1 = 2 (sum T)^2 / ((N-1) sum T^2)                     if max T <= 2
        theta2 = 2 (sum (T-1))^2 / ((N-1) sum (T-1)(T-2))           otherwise

    and the result is capped at 1.
    """
    epochs = np.asarray(epochs, dtype=np.int64)
    n_exc = len(epochs)
    if n_exc < 2:
        raise EstimatorError(f"intervals estimator needs at least 2 exceedances, got {n_exc}")
    t = np.diff(epochs).astype(float)
    if (t < 1).any():
        raise EstimatorError("exceedance epochs must be strictly increasing")
    branch = 1 if t.max() <= 2 else 2
    if branch == 2:
        denom = (n_exc - 1) * np.sum((t - 1) * (t - 2))
        if denom <= 0:
            warnings.warn("degenerate second-branch denominator; using the first branch", RuntimeWarning)
            branch = 1
        else:
            raw = 2.0 * np.sum(t - 1) ** 2 / denom
    if branch == 1:
        raw = 2.0 * np.sum(t) ** 2 / ((n_exc - 1) * np.sum(t * t))
    return EIEstimate(min(1.0, raw), "intervals", {"branch": branch, "raw": float(raw), "exceedances": n_exc}, n_exc)


def intervals_estimator(x, u: float) -> EIEstimate:
    """Intervals estimate of the extremal index at threshold ``u``."""
    st = exceedance_stats(x, u)
    est = intervals_from_epochs(st.epochs)
    est.context["u"] = float(u)
    est.n = st.n
    return est


DEFAULT_LEVELS = tuple(np.round(np.arange(0.90, 0.995, 0.01), 2))


@dataclass
class SweepRow:
    level: float
    u: float
    estimate: EIEstimate | None
    error: str | None = None

    @property
    def theta(self):
        return None if self.estimate is None else self.estimate.theta


@dataclass
class Plateau:
    start: int
    stop: int
    levels: tuple
    value: float
    spread: float


@dataclass
class IntervalsSweep:
    rows: list
    plateau: Plateau | None

    def table(self):
        """``(level, u, theta)`` rows; ``theta`` is ``nan`` where the estimate failed."""
        return [(r.level, r.u, np.nan if r.theta is None else r.theta) for r in self.rows]


def find_plateau(thetas, levels=None, tol: float = 0.05) -> Plateau | None:
    """Longest run of consecutive finite estimates whose spread is below ``tol``.

    Ties go to the run with the smaller spread, then to the lower levels.
    The plateau value is the mean over the run.
    """
    vals = np.asarray([np.nan if v is None else v for v in thetas], dtype=float)
    levels = tuple(range(len(vals))) if levels is None else tuple(levels)
    best = None
    for i in range(len(vals)):
        if not np.isfinite(vals[i]):
            continue
        lo = hi = vals[i]
        for j in range(i, len(vals)):
            if not np.isfinite(vals[j]):
                break
            lo, hi = min(lo, vals[j]), max(hi, vals[j])
            if hi - lo >= tol:
                break
            key = (j - i + 1, -(hi - lo))
            if best is None or key > best[0]:
                best = (key, i, j + 1, hi - lo)
    if best is None:
        return None
    _, i, j, spread = best
    return Plateau(i, j, levels[i:j], float(vals[i:j].mean()), float(spread))


def intervals_sweep(x, levels=DEFAULT_LEVELS, tol: float = 0.05) -> IntervalsSweep:
    """Intervals estimates with ``u`` at each empirical quantile level.

    A level whose estimate is undefined (for instance because heavy ties
    leave fewer than two samples above the quantile) is reported with its
    error message and skipped by the plateau search.
    """
    x = _as_array(x)
    rows = []
    for lev in levels:
        if not 0 < lev < 1:
            rows.append(SweepRow(float(lev), np.nan, None, "level outside (0, 1)"))
            continue
        u = float(np.quantile(x, lev))
        try:
            est = intervals_estimator(x, u)
            est.context["level"] = float(lev)
            rows.append(SweepRow(float(lev), u, est))
        except EstimatorError as exc:
            rows.append(SweepRow(float(lev), u, None, str(exc)))
    plateau = find_plateau([r.theta for r in rows], [r.level for r in rows], tol)
    return IntervalsSweep(rows, plateau)


# copula estimator ----------------------------------------------------------


DEFAULT_GRID = np.linspace(0.01, 1.0, 100)


@dataclass
class EmpiricalCopula:
    lag: int
    n: int
    grid: np.ndarray
    values: np.ndarray


def empirical_copula(x, lag: int = 5, grid=None) -> EmpiricalCopula:
    """Diagonal of the empirical copula of ``(X_{i_k}, X_{i_k + 1})``.

    Pairs start every ``lag`` samples (``i_k = k * lag``).  Ranks are taken
    separately within the first and second coordinates, ties get the average
    rank, and ``C_n(u, u)`` is the fraction of pairs whose two scaled ranks
    ``R / (n + 1)`` are both at most ``u``.
    """
    x = _as_array(x)
    if lag < 1:
        raise ValueError("lag must be >= 1")
    if len(x) < 2 * lag + 2:
        raise EstimatorError(f"trace of length {len(x)} too short for lag {lag}")
    if np.all(x == x[0]):
        raise EstimatorError("copula undefined for a constant trace")
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    starts = np.arange(0, len(x) - 1, lag)
    first, second = x[starts], x[starts + 1]
    n = len(starts)
    rx = stats.rankdata(first) / (n + 1)
    ry = stats.rankdata(second) / (n + 1)
    both = np.sort(np.maximum(rx, ry))
    values = np.searchsorted(both, grid, side="right") / n
    return EmpiricalCopula(lag, n, grid, values)


def ei_copula_estimator(cop: EmpiricalCopula, fit: str = "least-squares", m: int = 10) -> EIEstimate:
    """Extremal index as the diagonal slope of the copula at 1, minus 1.

    ``fit="least-squares"`` fits a quadratic to the top ``m`` grid points and
    differentiates it at ``u = 1`` (exact for the independence and
    comonotone diagonals ``u**2`` and ``u``).  ``fit="spline"`` uses the end
    derivative of a natural cubic spline through the whole diagonal.
    """
    grid, vals = cop.grid, cop.values
    if len(grid) < 10:
        raise EstimatorError("need at least 10 diagonal grid points")
    if fit in ("least-squares", "lsq"):
        if m < 3:
            raise ValueError("least-squares fit needs m >= 3")
        gx, gy = grid[-m:], vals[-m:]
        if np.ptp(gy) == 0:
            raise EstimatorError("degenerate fit: diagonal is flat over the fitted points")
        coef = np.polynomial.polynomial.polyfit(gx - 1.0, gy, 2)
        slope = coef[1]
    elif fit == "spline":
        if np.ptp(vals) == 0:
            raise EstimatorError("degenerate fit: diagonal is flat")
        spline = interpolate.CubicSpline(grid, vals, bc_type="natural")
        slope = float(spline(1.0, 1))
    else:
        raise ValueError(f"unknown fit {fit!r}")
    return EIEstimate(slope - 1.0, "copula", {"fit": fit, "lag": cop.lag, "slope": float(slope), "m": m}, cop.n)


# local mixing check ---------------------------------------------------------


@dataclass
class D2Check:
    """Upcrossing and clustering ratios, in percent.

    ``per_length`` maps each window length to ``(r_up, r_cluster, windows)``.
    """

    u: float
    r_up: float
    r_cluster: float
    per_length: dict


def d2_condition_check(x, u: float, lengths=(5, 10, 15, 20), occurrences: int = 2000) -> D2Check:
    """Empirical check of how exceedances group inside short windows.

    For every window length ``L``, windows of ``L`` samples are opened at
    exceedances, scanning left to right without overlap, until
    ``occurrences`` windows are collected (or the trace ends).  In each
    window, with ``E`` exceedances:

    * ``r_up``: exceedances whose preceding sample is at or below ``u``
      (upcrossings), divided by ``E``.  The sample before the window counts
      as the predecessor of the first one; the very first sample of the
      trace has none and counts as an upcrossing.
    * ``r_cluster``: exceedances that belong to a run of at least two
      consecutive exceedances inside the window, divided by ``E``.

    Ratios are averaged over windows, then over window lengths.  Local
    mixing shows up as small ``r_up`` and large ``r_cluster``.
    """
    x = _as_array(x)
    above = x > u
    starts = np.flatnonzero(above)
    if len(starts) == 0:
        raise EstimatorError(f"no exceedances of u={u}")
    padded = np.r_[False, above]
    per_length = {}
    for L in lengths:
        if L < 2:
            raise ValueError("window length must be >= 2")
        r_up, r_cl = [], []
        nxt = 0
        for s in starts:
            if s < nxt:
                continue
            if s + L > len(x):
                break
            w = padded[s:s + L + 1]  # predecessor plus the window
            inside = w[1:]
            e = int(inside.sum())
            ups = int(np.count_nonzero(~w[:-1] & inside))
            pair = inside[:-1] & inside[1:]
            in_run = inside & (np.r_[False, pair] | np.r_[pair, False])
            r_up.append(ups / e)
            r_cl.append(int(in_run.sum()) / e)
            nxt = s + L
            if len(r_up) >= occurrences:
                break
        if not r_up:
            raise EstimatorError(f"no complete window of length {L}")
        if len(r_up) < occurrences:
            warnings.warn(f"only {len(r_up)} windows of length {L} (asked for {occurrences})", RuntimeWarning)
        per_length[L] = (100 * float(np.mean(r_up)), 100 * float(np.mean(r_cl)), len(r_up))
    table = np.array([v[:2] for v in per_length.values()])
    return D2Check(float(u), float(table[:, 0].mean()), float(table[:, 1].mean()), per_length)
