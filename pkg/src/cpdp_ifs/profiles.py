"""Distribution-characteristic profiles.

Every instance, no matter how many metrics its project records, is mapped to
the same 16 summary indicators of its metric-value distribution. Profiled
projects therefore share a feature space and can cross-predict even when
their raw metric sets differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from cpdp_ifs.corpus import Project
from cpdp_ifs.preprocess import PreprocessConfig, preprocess_matrix

INDICATOR_NAMES: tuple[str, ...] = (
    "min",
    "max",
    "range",
    "sum",
    "mean",
    "median",
    "mode",
    "first_quartile",
    "third_quartile",
    "interquartile_range",
    "variance",
    "standard_deviation",
    "mean_absolute_deviation",
    "skewness",
    "excess_kurtosis",
    "variation_ratio",
)

# Values within 1e-4 of each other count as one mode candidate; raw metric
# vectors are short, so exact-equality modes would almost always degenerate.
_MODE_DECIMALS = 4
_DEGENERATE_SPREAD = 1e-12


def _mode_and_variation_ratio(sorted_values: np.ndarray) -> tuple[float, float]:
    keys = np.round(sorted_values, _MODE_DECIMALS)
    _, first_index, counts = np.unique(keys, return_index=True, return_counts=True)
    winner = int(np.argmax(counts))  # ties fall to the smallest key
    mode = float(sorted_values[first_index[winner]])
    variation_ratio = 1.0 - counts[winner] / sorted_values.size
    return mode, float(variation_ratio)


def _indicator_values(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("empty instance")
    if not np.all(np.isfinite(values)):
        raise ValueError("instance contains non-finite values")
    # Sorting first makes every indicator exactly permutation invariant;
    # summation order otherwise leaks into the low bits.
    v = np.sort(values)
    n = v.size

    minimum = float(v[0])
    maximum = float(v[-1])
    total = float(v.sum())
    mean = total / n
    median = float(np.median(v))
    mode, variation_ratio = _mode_and_variation_ratio(v)
    q1 = float(np.quantile(v, 0.25))
    q3 = float(np.quantile(v, 0.75))
    variance = float(v.var(ddof=1)) if n > 1 else 0.0
    sd = math.sqrt(variance)
    deviations = v - mean
    mad = float(np.mean(np.abs(deviations)))

    sd_pop = math.sqrt(float(np.mean(deviations**2)))
    if sd_pop < _DEGENERATE_SPREAD:
        skewness = 0.0
        kurtosis = 0.0
    else:
        z = deviations / sd_pop
        skewness = float(np.mean(z**3))
        kurtosis = float(np.mean(z**4)) - 3.0

    return np.array(
        [
            minimum,
            maximum,
            maximum - minimum,
            total,
            mean,
            median,
            mode,
            q1,
            q3,
            q3 - q1,
            variance,
            sd,
            mad,
            skewness,
            kurtosis,
            variation_ratio,
        ]
    )


@dataclass(frozen=True)
class CharacteristicVector:
    """The 16 distribution indicators of one instance, in canonical order."""

    values: np.ndarray
    names: tuple[str, ...] = INDICATOR_NAMES

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(INDICATOR_NAMES),):
            raise ValueError(f"expected {len(INDICATOR_NAMES)} indicator values, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def as_dict(self) -> dict[str, float]:
        return {name: float(value) for name, value in zip(self.names, self.values)}

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.names.index(name)])


def characterize_instance(values: np.ndarray) -> CharacteristicVector:
    """Summarize one instance's metric values into the 16 indicators.

    The result depends only on the multiset of values, not their order.
    """
    return CharacteristicVector(values=_indicator_values(np.asarray(values, dtype=float)))


@dataclass(frozen=True)
class ProfiledProject:
    """A project lifted into the shared 16-indicator feature space."""

    name: str
    dataset_family: str
    matrix: np.ndarray
    labels: np.ndarray
    source_metric_count: int
    indicator_names: tuple[str, ...] = field(default=INDICATOR_NAMES)

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=float)
        labels = np.asarray(self.labels, dtype=np.int8)
        if matrix.ndim != 2 or matrix.shape[1] != len(INDICATOR_NAMES):
            raise ValueError(f"profiled matrix must have {len(INDICATOR_NAMES)} columns")
        if labels.shape != (matrix.shape[0],):
            raise ValueError("label count does not match profiled instances")
        matrix.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "labels", labels)

    @property
    def n_instances(self) -> int:
        return self.matrix.shape[0]


def characterize_project(
    project: Project, preprocessing: PreprocessConfig = PreprocessConfig()
) -> ProfiledProject:
    """Preprocess a project, then profile every instance row.

    Preprocessing runs on the raw metric matrix (the project's own columns);
    the indicators are computed from each transformed row. Use
    ``PreprocessConfig(normalize=False)`` for projects with a single instance,
    which cannot be z-scored.
    """
    matrix, _ = preprocess_matrix(project.matrix, preprocessing)
    profiled = np.stack([_indicator_values(row) for row in matrix])
    return ProfiledProject(
        name=project.name,
        dataset_family=project.dataset_family,
        matrix=profiled,
        labels=project.labels,
        source_metric_count=project.n_features,
    )
