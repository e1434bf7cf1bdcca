"""The four cross-project prediction routes.

``cpdp_pure`` trains directly on a source with the same metric schema.
``ifs_our`` lifts both projects into the 16-indicator profile space, so the
schemas may differ arbitrarily. ``ifs_min`` keeps only the metrics the two
schemas share. ``mix`` fuses the pure and profile predictions with a
defective-if-either rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from cpdp_ifs.corpus import Project, intersect_features
from cpdp_ifs.learner import LearnerParams, Model, classify, predict_proba, train
from cpdp_ifs.preprocess import PreprocessConfig, preprocess_matrix
from cpdp_ifs.profiles import INDICATOR_NAMES, characterize_project
from cpdp_ifs.stats import ConfusionMatrix, prf


class Method(str, enum.Enum):
    CPDP_PURE = "cpdp_pure"
    IFS_OUR = "ifs_our"
    IFS_MIN = "ifs_min"
    MIX = "mix"


@dataclass(frozen=True)
class PredictionOutcome:
    """One source-to-target run: predictions plus their evaluation."""

    source_name: str
    target_name: str
    method: Method
    predicted: np.ndarray
    probabilities: np.ndarray | None
    confusion: ConfusionMatrix
    precision: float
    recall: float
    f_measure: float
    model: Model | None = None

    def __post_init__(self) -> None:
        predicted = np.asarray(self.predicted, dtype=np.int8)
        if not np.all((predicted == 0) | (predicted == 1)):
            raise ValueError("predictions must be binary")
        predicted.setflags(write=False)
        object.__setattr__(self, "predicted", predicted)
        if self.probabilities is not None:
            probabilities = np.asarray(self.probabilities, dtype=float)
            if probabilities.shape != predicted.shape:
                raise ValueError("probabilities must align with predictions")
            probabilities.setflags(write=False)
            object.__setattr__(self, "probabilities", probabilities)


def _train_and_classify(
    source_matrix: np.ndarray,
    source_labels: np.ndarray,
    target_matrix: np.ndarray,
    target_labels: np.ndarray,
    feature_names: Sequence[str],
    method: Method,
    source_name: str,
    target_name: str,
    preprocessing: PreprocessConfig,
    params: LearnerParams,
) -> PredictionOutcome:
    # Each side is transformed against its own column statistics; target
    # scaling must not leak into training and vice versa.
    source_ready, _ = preprocess_matrix(source_matrix, preprocessing)
    target_ready, _ = preprocess_matrix(target_matrix, preprocessing)
    model = train(source_ready, source_labels, feature_names, params)
    probabilities = predict_proba(model, target_ready)
    predicted = classify(model, target_ready)
    confusion = ConfusionMatrix.from_predictions(target_labels, predicted)
    precision, recall, f_measure = prf(confusion)
    return PredictionOutcome(
        source_name=source_name,
        target_name=target_name,
        method=method,
        predicted=predicted,
        probabilities=probabilities,
        confusion=confusion,
        precision=precision,
        recall=recall,
        f_measure=f_measure,
        model=model,
    )


def _require_distinct(source: Project, target: Project) -> None:
    if source.name == target.name:
        raise ValueError("source and target must be distinct projects")


def run_cpdp_pure(
    source: Project,
    target: Project,
    preprocessing: PreprocessConfig = PreprocessConfig(),
    params: LearnerParams = LearnerParams(),
) -> PredictionOutcome:
    """Train on the source metrics directly; schemas must match exactly.

    Target columns are aligned to the source's canonical feature order, so
    column layout in the files does not matter.
    """
    _require_distinct(source, target)
    source_canon = source.schema.canonical_names()
    target_canon = target.schema.canonical_names()
    if set(source_canon) != set(target_canon):
        raise ValueError("feature sets differ; use an IFS method")
    target_index = {name: i for i, name in enumerate(target_canon)}
    target_cols = [target_index[name] for name in source_canon]
    return _train_and_classify(
        source.matrix,
        source.labels,
        target.matrix[:, target_cols],
        target.labels,
        source.schema.feature_names,
        Method.CPDP_PURE,
        source.name,
        target.name,
        preprocessing,
        params,
    )


def run_ifs_min(
    source: Project,
    target: Project,
    preprocessing: PreprocessConfig = PreprocessConfig(),
    params: LearnerParams = LearnerParams(),
) -> PredictionOutcome:
    """Restrict both projects to their shared metrics, then train directly."""
    _require_distinct(source, target)
    source_common, target_common = intersect_features(source, target)
    return _train_and_classify(
        source_common.matrix,
        source_common.labels,
        target_common.matrix,
        target_common.labels,
        source_common.schema.feature_names,
        Method.IFS_MIN,
        source.name,
        target.name,
        preprocessing,
        params,
    )


def run_ifs_our(
    source: Project,
    target: Project,
    preprocessing: PreprocessConfig = PreprocessConfig(),
    params: LearnerParams = LearnerParams(),
) -> PredictionOutcome:
    """Profile both projects into the 16 indicators, then train on those.

    The preprocessing config is applied to each project's raw metrics before
    profiling; the indicator columns are then normalized (never log
    filtered, since several indicators are signed) on the way into training.
    """
    _require_distinct(source, target)
    source_profiled = characterize_project(source, preprocessing)
    target_profiled = characterize_project(target, preprocessing)
    indicator_config = PreprocessConfig(log_filter=False, normalize=preprocessing.normalize)
    return _train_and_classify(
        source_profiled.matrix,
        source_profiled.labels,
        target_profiled.matrix,
        target_profiled.labels,
        INDICATOR_NAMES,
        Method.IFS_OUR,
        source.name,
        target.name,
        indicator_config,
        params,
    )


def run_mix(
    pure_outcome: PredictionOutcome,
    profile_outcome: PredictionOutcome,
    target_labels: np.ndarray,
) -> PredictionOutcome:
    """Fuse a pure and a profile run: defective when either says defective.

    The two runs may come from different sources but must score the same
    target. Probabilities are not defined for the fused prediction.
    """
    if pure_outcome.method is not Method.CPDP_PURE:
        raise ValueError("first argument must be a cpdp_pure outcome")
    if profile_outcome.method is not Method.IFS_OUR:
        raise ValueError("second argument must be an ifs_our outcome")
    if pure_outcome.target_name != profile_outcome.target_name:
        raise ValueError("mix requires outcomes for the same target")
    if pure_outcome.predicted.shape != profile_outcome.predicted.shape:
        raise ValueError("mix requires predictions over the same instances")
    labels = np.asarray(target_labels, dtype=np.int8)
    if labels.shape != pure_outcome.predicted.shape:
        raise ValueError("target labels must align with the predictions")

    fused = np.maximum(pure_outcome.predicted, profile_outcome.predicted)
    confusion = ConfusionMatrix.from_predictions(labels, fused)
    precision, recall, f_measure = prf(confusion)
    return PredictionOutcome(
        source_name=f"{pure_outcome.source_name}+{profile_outcome.source_name}",
        target_name=pure_outcome.target_name,
        method=Method.MIX,
        predicted=fused,
        probabilities=None,
        confusion=confusion,
        precision=precision,
        recall=recall,
        f_measure=f_measure,
        model=None,
    )


@dataclass(frozen=True)
class PairPlan:
    source_name: str
    target_name: str
    method: Method


def enumerate_pairs(projects: Sequence[Project], method: Method) -> tuple[PairPlan, ...]:
    """All ordered source/target pairs a method applies to.

    Pure prediction pairs projects within one data set family (shared
    schema); the IFS methods pair projects across families. ``mix`` is not
    enumerable: it is derived from the pure and profile results per target.
    """
    names = [p.name for p in projects]
    if len(set(names)) != len(names):
        raise ValueError("project names must be unique")
    if method is Method.MIX:
        raise ValueError("mix pairs are derived from cpdp_pure and ifs_our results")

    plans = []
    for source in projects:
        for target in projects:
            if source.name == target.name:
                continue
            same_family = source.dataset_family == target.dataset_family
            if method is Method.CPDP_PURE and not same_family:
                continue
            if method in (Method.IFS_OUR, Method.IFS_MIN) and same_family:
                continue
            plans.append(PairPlan(source.name, target.name, method))
    return tuple(plans)
