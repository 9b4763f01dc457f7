"""Sample summaries, Welch t-tests, and a Student-t tail via incomplete beta.

The t-distribution tail is computed from scratch (Lentz continued fraction
for the regularized incomplete beta) so results carry no library dependency
and can be cross-checked against direct numeric integration of the density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .routing import ProtocolKind

_BETA_REL_TOL = 1e-10
_BETA_MAX_ITER = 500
_TINY = 1e-300


@dataclass(frozen=True)
class SummaryStats:
    """Mean, sample standard deviation (n-1 denominator), and sample count."""

    mean: float
    std: float
    n: int

    @property
    def sem(self) -> float:
        """Standard error of the mean: std / sqrt(n)."""
        return self.std / math.sqrt(self.n)


def summarize(samples) -> SummaryStats:
    """Summary statistics of a sample; at least two values required."""
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size < 2:
        raise ValueError(f"need at least 2 samples, got {arr.size}")
    return SummaryStats(
        mean=float(np.mean(arr)), std=float(np.std(arr, ddof=1)), n=int(arr.size)
    )


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz method)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_REL_TOL:
            return h
    raise RuntimeError(f"incomplete beta failed to converge for a={a} b={b} x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1], to ~1e-10 relative accuracy."""
    if a <= 0 or b <= 0:
        raise ValueError(f"shape parameters must be > 0, got ({a}, {b})")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # The continued fraction converges fast only on one side of the split
    # point; use the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) otherwise.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_upper_tail(t: float, df: float) -> float:
    """P(T > t) for T ~ Student's t with df degrees of freedom."""
    if df <= 0:
        raise ValueError(f"degrees of freedom must be > 0, got {df}")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    half_two_sided = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)
    return half_two_sided if t > 0 else 1.0 - half_two_sided


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p: float
    significant: bool


def welch_t(s1: SummaryStats, s2: SummaryStats, alpha: float = 0.05) -> TTestResult:
    """Welch's unequal-variance t-test from summary statistics.

    t = (m1 - m2) / sqrt(s1^2/n1 + s2^2/n2); degrees of freedom follow
    Welch-Satterthwaite; p is the one-tailed probability beyond |t|, so the
    test reads in the direction of the observed difference.
    """
    if s1.n < 2 or s2.n < 2:
        raise ValueError("both samples need n >= 2")
    v1 = s1.std**2 / s1.n
    v2 = s2.std**2 / s2.n
    pooled = v1 + v2
    if pooled == 0.0:
        raise ValueError("degenerate test: both sample variances are zero")
    t = (s1.mean - s2.mean) / math.sqrt(pooled)
    df = pooled**2 / (v1**2 / (s1.n - 1) + v2**2 / (s2.n - 1))
    p = student_t_upper_tail(abs(t), df)
    return TTestResult(t=t, df=df, p=p, significant=p < alpha)


@dataclass(frozen=True)
class StudySummary:
    """Per-protocol summary stats of the per-run metric values."""

    percent_error: dict[ProtocolKind, SummaryStats]
    transmission_time: dict[ProtocolKind, SummaryStats]

    def metric(self, name: str) -> dict[ProtocolKind, SummaryStats]:
        if name == "percent_error":
            return self.percent_error
        if name == "transmission_time":
            return self.transmission_time
        raise KeyError(name)


METRIC_NAMES = ("percent_error", "transmission_time")

PairwiseTests = dict[str, dict[tuple[ProtocolKind, ProtocolKind], TTestResult]]


def significance_matrix(study: StudySummary, alpha: float = 0.05) -> PairwiseTests:
    """Welch tests for every ordered protocol pair on both metrics.

    Both orientations of each pair are present (t flips sign, p and df
    match); a protocol is never tested against itself.
    """
    out: PairwiseTests = {}
    for metric in METRIC_NAMES:
        cells = study.metric(metric)
        entries: dict[tuple[ProtocolKind, ProtocolKind], TTestResult] = {}
        for a in ProtocolKind:
            for b in ProtocolKind:
                if a is b:
                    continue
                entries[(a, b)] = welch_t(cells[a], cells[b], alpha=alpha)
        out[metric] = entries
    return out
