"""Independent reference implementations used only to check the package.

Everything here is deliberately primitive and self-contained: no code is
shared with the implementations under test.
"""

from __future__ import annotations

import math
import statistics

import numpy as np


def grid_logistic_oracle(
    xs: list[float], ys: list[int], ridge: float, rounds: int = 30, span: float = 8.0
) -> tuple[float, float]:
    """Coarse-to-fine grid minimizer of the penalized logistic objective.

    One feature only: searches (intercept, weight) on a 21x21 grid, zooming
    in on the best cell each round. Final resolution ~ span / 2^rounds.
    """

    def objective(b: float, w: float) -> float:
        total = 0.0
        for x, y in zip(xs, ys):
            eta = b + w * x
            # log(1+e^eta) without overflow
            if eta > 0:
                log1p_exp = eta + math.log1p(math.exp(-eta))
            else:
                log1p_exp = math.log1p(math.exp(eta))
            total += log1p_exp - y * eta
        return total + 0.5 * ridge * w * w

    center_b, center_w = 0.0, 0.0
    half = span
    best = (center_b, center_w)
    for _ in range(rounds):
        best_value = math.inf
        for i in range(21):
            for j in range(21):
                b = center_b - half + (2.0 * half) * i / 20.0
                w = center_w - half + (2.0 * half) * j / 20.0
                value = objective(b, w)
                if value < best_value:
                    best_value = value
                    best = (b, w)
        center_b, center_w = best
        half *= 0.5
    return best


def mc_random_baseline(
    labels: list[int], positive_rate: float, n_draws: int = 1000, seed: int = 0
) -> list[float]:
    """F-measures of random classifiers that flag instances at a fixed rate."""
    rng = np.random.default_rng(seed)
    actual = np.asarray(labels)
    scores = []
    for _ in range(n_draws):
        guess = (rng.random(actual.size) < positive_rate).astype(int)
        tp = int(np.sum((actual == 1) & (guess == 1)))
        fp = int(np.sum((actual == 0) & (guess == 1)))
        fn = int(np.sum((actual == 1) & (guess == 0)))
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        if precision + recall == 0.0:
            scores.append(0.0)
        else:
            scores.append(2.0 * precision * recall / (precision + recall))
    return scores


def reference_quartiles(values: list[float]) -> tuple[float, float, float]:
    """Q1/median/Q3 with linear interpolation on the sorted sample."""
    if len(values) == 1:
        v = float(values[0])
        return v, v, v
    q1, q2, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return float(q1), float(q2), float(q3)


def reference_indicators(values: list[float]) -> dict[str, float]:
    """The 16 per-instance summaries, computed with stdlib statistics."""
    n = len(values)
    v = sorted(float(x) for x in values)
    mean = sum(v) / n
    q1, q2, q3 = reference_quartiles(v)

    buckets: dict[float, list[float]] = {}
    for x in v:
        buckets.setdefault(round(x, 4), []).append(x)
    best_key = None
    best_count = -1
    for key in sorted(buckets):
        if len(buckets[key]) > best_count:
            best_key = key
            best_count = len(buckets[key])
    mode = min(buckets[best_key])

    variance = statistics.variance(v) if n > 1 else 0.0
    sd_pop = math.sqrt(sum((x - mean) ** 2 for x in v) / n)
    if sd_pop < 1e-12:
        skewness = 0.0
        kurtosis = 0.0
    else:
        skewness = sum(((x - mean) / sd_pop) ** 3 for x in v) / n
        kurtosis = sum(((x - mean) / sd_pop) ** 4 for x in v) / n - 3.0

    return {
        "min": v[0],
        "max": v[-1],
        "range": v[-1] - v[0],
        "sum": sum(v),
        "mean": mean,
        "median": statistics.median(v),
        "mode": mode,
        "first_quartile": q1,
        "third_quartile": q3,
        "interquartile_range": q3 - q1,
        "variance": variance,
        "standard_deviation": math.sqrt(variance),
        "mean_absolute_deviation": sum(abs(x - mean) for x in v) / n,
        "skewness": skewness,
        "excess_kurtosis": kurtosis,
        "variation_ratio": 1.0 - best_count / n,
    }
