"""Evaluation metrics and the statistics used to compare prediction methods.

The signed-rank test is implemented twice on purpose: the production path
uses an integer subset-sum table over doubled midranks, and
:func:`wilcoxon_exact_oracle` enumerates all sign assignments with its own
rank computation. Tests hold the two to bit-for-bit agreement, so neither
implementation can drift to match the other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.stats

_EXACT_CUTOFF = 12
_ORACLE_LIMIT = 15


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self) -> None:
        for field_name in ("tp", "fp", "tn", "fn"):
            if getattr(self, field_name) < 0:
                raise ValueError("confusion matrix counts must be non-negative")

    @classmethod
    def from_predictions(cls, actual: np.ndarray, predicted: np.ndarray) -> "ConfusionMatrix":
        actual = np.asarray(actual)
        predicted = np.asarray(predicted)
        if actual.shape != predicted.shape or actual.ndim != 1:
            raise ValueError("actual and predicted must be one-dimensional and equally long")
        pos = actual == 1
        pred_pos = predicted == 1
        return cls(
            tp=int(np.sum(pos & pred_pos)),
            fp=int(np.sum(~pos & pred_pos)),
            tn=int(np.sum(~pos & ~pred_pos)),
            fn=int(np.sum(pos & ~pred_pos)),
        )

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def prf(confusion: ConfusionMatrix) -> tuple[float, float, float]:
    """Precision, recall and f-measure, with every 0/0 defined as 0."""
    tp, fp, fn = confusion.tp, confusion.fp, confusion.fn
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f_measure = (
        2.0 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    )
    return precision, recall, f_measure


def dpr(source_defect_ratio: float, target_defect_ratio: float) -> float:
    """Defect proneness ratio: source defect ratio over target defect ratio."""
    if not 0.0 <= source_defect_ratio <= 1.0 or not 0.0 <= target_defect_ratio <= 1.0:
        raise ValueError("defect ratios must lie in [0, 1]")
    if target_defect_ratio == 0.0:
        raise ValueError("DPR undefined: target project has no defective instances")
    return source_defect_ratio / target_defect_ratio


def cliffs_delta(x: np.ndarray, y: np.ndarray) -> float:
    """Cliff's delta: (#{x_i > y_j} - #{x_i < y_j}) / (|x|*|y|)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size == 0 or y.size == 0:
        raise ValueError("cliffs_delta requires non-empty samples")
    diff = x[:, None] - y[None, :]
    greater = int(np.sum(diff > 0))
    less = int(np.sum(diff < 0))
    return (greater - less) / (x.size * y.size)


def _midranks(magnitudes: np.ndarray) -> np.ndarray:
    return scipy.stats.rankdata(magnitudes, method="average")


def _effective_differences(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise ValueError("paired samples must be one-dimensional, non-empty and equally long")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("paired samples must be finite")
    diffs = x - y
    diffs = diffs[diffs != 0.0]
    if diffs.size == 0:
        raise ValueError("degenerate pairing: all differences are zero")
    return diffs


def _doubled_ranks(ranks: np.ndarray) -> list[int]:
    doubled = []
    for rank in ranks:
        twice = 2.0 * rank
        rounded = round(twice)
        if abs(twice - rounded) > 1e-9:
            raise AssertionError("midranks must be multiples of one half")
        doubled.append(int(rounded))
    return doubled


def _exact_two_sided_p(doubled_ranks: list[int], doubled_statistic: int) -> float:
    """Two-sided tail mass of W+ over all 2^n equiprobable sign assignments."""
    total = sum(doubled_ranks)
    counts = [0] * (total + 1)
    counts[0] = 1
    for dr in doubled_ranks:
        for value in range(total, dr - 1, -1):
            counts[value] += counts[value - dr]
    at_most = sum(counts[: doubled_statistic + 1])
    at_least = sum(counts[doubled_statistic:])
    denominator = 2 ** len(doubled_ranks)
    return min(1.0, 2.0 * min(at_most, at_least) / denominator)


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float
    p_value: float
    n_effective: int
    method_used: str


def wilcoxon_signed_rank(x: np.ndarray, y: np.ndarray, method: str = "auto") -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped; tied magnitudes get midranks; the
    statistic is W+ (rank sum of positive differences). ``auto`` switches
    from the exact null distribution to the tie-corrected normal
    approximation (no continuity correction) above 12 effective pairs.
    """
    if method not in ("auto", "exact", "asymptotic"):
        raise ValueError(f"unknown method {method!r}")
    diffs = _effective_differences(x, y)
    n = diffs.size
    ranks = _midranks(np.abs(diffs))
    w_plus = float(np.sum(ranks[diffs > 0]))

    if method == "auto":
        method = "exact" if n <= _EXACT_CUTOFF else "asymptotic"

    if method == "exact":
        doubled = _doubled_ranks(ranks)
        p_value = _exact_two_sided_p(doubled, int(round(2.0 * w_plus)))
        return WilcoxonResult(statistic=w_plus, p_value=p_value, n_effective=n, method_used="exact")

    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(tie_counts.astype(float) ** 3 - tie_counts)) / 48.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    z = (w_plus - mean) / math.sqrt(variance)
    p_value = math.erfc(abs(z) / math.sqrt(2.0))
    return WilcoxonResult(
        statistic=w_plus, p_value=min(1.0, p_value), n_effective=n, method_used="asymptotic"
    )


def wilcoxon_exact_oracle(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Brute-force signed-rank test by enumerating every sign assignment.

    Self-contained on purpose (own midranks, no shared helpers); kept next
    to the production implementation as its independent cross-check.
    Returns (W+, two-sided p). Limited to 15 effective pairs.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise ValueError("paired samples must be one-dimensional, non-empty and equally long")
    diffs = [float(a - b) for a, b in zip(x, y) if a - b != 0.0]
    if not diffs:
        raise ValueError("degenerate pairing: all differences are zero")
    n = len(diffs)
    if n > _ORACLE_LIMIT:
        raise ValueError(f"n too large for exhaustive enumeration (max {_ORACLE_LIMIT})")

    magnitudes = [abs(d) for d in diffs]
    order = sorted(range(n), key=lambda i: magnitudes[i])
    ranks = [0.0] * n
    position = 0
    while position < n:
        tied_end = position
        while (
            tied_end + 1 < n
            and magnitudes[order[tied_end + 1]] == magnitudes[order[position]]
        ):
            tied_end += 1
        average_rank = (position + 1 + tied_end + 1) / 2.0
        for k in range(position, tied_end + 1):
            ranks[order[k]] = average_rank
        position = tied_end + 1

    observed = sum(ranks[i] for i in range(n) if diffs[i] > 0)
    at_most = 0
    at_least = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(ranks[i] for i in range(n) if signs[i])
        if w <= observed:
            at_most += 1
        if w >= observed:
            at_least += 1
    p_value = min(1.0, 2.0 * min(at_most, at_least) / 2**n)
    return observed, p_value


@dataclass(frozen=True)
class ComparisonResult:
    """Paired comparison of two methods: significance plus effect size."""

    p_value: float
    statistic: float
    cliffs_delta: float
    n_pairs: int
    method_note: str


def compare_paired(x: np.ndarray, y: np.ndarray, method: str = "auto") -> ComparisonResult:
    """Wilcoxon signed-rank p plus Cliff's delta over the same paired scores.

    The delta uses all pairs, including those the signed-rank test drops as
    zero differences.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    test = wilcoxon_signed_rank(x, y, method=method)
    delta = cliffs_delta(x, y)
    note = f"{test.method_used}, {test.n_effective} effective of {x.size} pairs"
    return ComparisonResult(
        p_value=test.p_value,
        statistic=test.statistic,
        cliffs_delta=delta,
        n_pairs=int(x.size),
        method_note=note,
    )


def pearson(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Pearson correlation with its two-sided t-distribution p-value."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("samples must be one-dimensional and equally long")
    n = x.size
    if n < 3:
        raise ValueError("pearson requires at least 3 pairs")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.sum(dx * dx))
    syy = float(np.sum(dy * dy))
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("pearson undefined: zero variance sample")
    r = float(np.sum(dx * dy)) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p_value = 2.0 * float(scipy.stats.t.sf(abs(t), n - 2))
    return r, min(1.0, p_value)
