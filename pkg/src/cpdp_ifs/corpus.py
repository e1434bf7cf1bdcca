"""Loading, validation and schema handling for defect data sets.

Supports the two formats the public defect corpora ship in: plain CSV with a
header row, and a dense subset of the attribute-relation (ARFF) format.
Metric names are canonicalized (alias map, then lowercase) so that projects
collected by different groups can be compared by feature identity.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np


class DataFormatError(ValueError):
    """A data set file or schema violates the expected format."""


class NoCommonMetricsError(ValueError):
    """Two projects share no metric names; intersection methods cannot run."""


_TRUE_TOKENS = {"true", "yes", "y", "buggy", "defective", "bug", "defect"}
_FALSE_TOKENS = {"false", "no", "n", "clean", "non-defective", "nondefective", "nonbuggy"}


def binarize_label(token: str) -> int:
    """Map a raw label cell to 0/1.

    Numeric values use the count>0 rule (defect counts stay two-class);
    textual values go through a small truthy/falsy token table.
    """
    tok = str(token).strip().strip("'\"")
    try:
        value = float(tok)
    except ValueError:
        low = tok.lower()
        if low in _TRUE_TOKENS:
            return 1
        if low in _FALSE_TOKENS:
            return 0
        raise DataFormatError(f"unknown value token {token!r} in label column") from None
    if not math.isfinite(value):
        raise DataFormatError(f"non-finite label value {token!r}")
    return 1 if value > 0 else 0


@dataclass(frozen=True)
class FeatureSchema:
    """Feature identity of a project: metric names, label column, alias map.

    ``feature_names`` may be empty when the schema is used as a loader
    config, meaning "every non-label column in the file". The alias map
    translates local metric names to canonical ones before the lowercase
    comparison used everywhere else.
    """

    feature_names: tuple[str, ...] = ()
    label_column: str = "bug"
    alias_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        aliases = {str(k).strip().lower(): str(v).strip().lower() for k, v in self.alias_map.items()}
        object.__setattr__(self, "alias_map", aliases)
        canon = self.canonical_names()
        if len(set(canon)) != len(canon):
            raise DataFormatError("duplicate feature names after canonicalization")
        if self.canonical(self.label_column) in canon:
            raise DataFormatError(f"label column {self.label_column!r} listed among feature names")

    def canonical(self, name: str) -> str:
        low = str(name).strip().lower()
        return self.alias_map.get(low, low)

    def canonical_names(self) -> tuple[str, ...]:
        return tuple(self.canonical(n) for n in self.feature_names)


@dataclass(frozen=True)
class Project:
    """An immutable defect data set: feature matrix plus binary labels."""

    name: str
    dataset_family: str
    schema: FeatureSchema
    matrix: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        labels = np.array(self.labels, dtype=np.int8)
        if matrix.ndim != 2:
            raise DataFormatError("feature matrix must be two-dimensional")
        m, n = matrix.shape
        if m < 1 or n < 1:
            raise DataFormatError("a project needs at least one instance and one feature")
        if labels.shape != (m,):
            raise DataFormatError(f"label count {labels.shape} does not match {m} instances")
        if not np.all(np.isfinite(matrix)):
            raise DataFormatError("feature matrix contains non-finite values")
        if not np.all((labels == 0) | (labels == 1)):
            raise DataFormatError("labels must be binary")
        if len(self.schema.feature_names) != n:
            raise DataFormatError(
                f"schema lists {len(self.schema.feature_names)} features, matrix has {n} columns"
            )
        matrix.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "labels", labels)

    @property
    def n_instances(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_features(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class DatasetSummary:
    instance_count: int
    defect_count: int
    defect_ratio: float
    metric_count: int


def summarize(project: Project) -> DatasetSummary:
    """Instance/defect counts and the defect ratio of a project."""
    m = project.n_instances
    defects = int(np.sum(project.labels))
    return DatasetSummary(
        instance_count=m,
        defect_count=defects,
        defect_ratio=defects / m,
        metric_count=project.n_features,
    )


def _read_rows(path: Path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        return [row for row in csv.reader(handle) if row and any(cell.strip() for cell in row)]


def _parse_feature_cell(cell: str, row_no: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DataFormatError(
            f"non-numeric feature cell {cell!r} at data row {row_no}, column {column!r}"
        ) from None
    if not math.isfinite(value):
        raise DataFormatError(f"non-finite feature cell at data row {row_no}, column {column!r}")
    return value


def _select_columns(
    header: list[str], schema: FeatureSchema, origin: str
) -> tuple[list[int], int, list[str]]:
    """Resolve the label index and the feature column indices for a file header."""
    canon_header = [schema.canonical(h) for h in header]
    label_canon = schema.canonical(schema.label_column)
    if label_canon not in canon_header:
        raise DataFormatError(f"{origin}: label column {schema.label_column!r} not found")
    label_idx = canon_header.index(label_canon)

    if schema.feature_names:
        indices = []
        for canon in schema.canonical_names():
            if canon not in canon_header:
                raise DataFormatError(f"{origin}: feature column {canon!r} not found")
            indices.append(canon_header.index(canon))
    else:
        indices = [i for i in range(len(header)) if i != label_idx]
        selected = [canon_header[i] for i in indices]
        if len(set(selected)) != len(selected):
            dupes = sorted({n for n in selected if selected.count(n) > 1})
            raise DataFormatError(f"{origin}: duplicate feature names {dupes}")
    names = [header[i].strip() for i in indices]
    return indices, label_idx, names


def load_csv(
    path: str | Path,
    schema_config: FeatureSchema,
    *,
    name: str | None = None,
    family: str = "default",
) -> Project:
    """Load a header-first CSV file into a Project.

    Labels are binarized with :func:`binarize_label`; every feature cell must
    parse as a finite number (no imputation).
    """
    path = Path(path)
    rows = _read_rows(path)
    if not rows:
        raise DataFormatError(f"empty file: {path}")
    header = [h.strip() for h in rows[0]]
    feature_idx, label_idx, feature_names = _select_columns(header, schema_config, str(path))
    data_rows = rows[1:]
    if not data_rows:
        raise DataFormatError(f"empty file (header only): {path}")

    matrix = np.empty((len(data_rows), len(feature_idx)))
    labels = np.empty(len(data_rows), dtype=np.int8)
    for r, row in enumerate(data_rows):
        if len(row) != len(header):
            raise DataFormatError(
                f"{path}: data row {r + 1} has {len(row)} cells, expected {len(header)}"
            )
        for c, idx in enumerate(feature_idx):
            matrix[r, c] = _parse_feature_cell(row[idx], r + 1, header[idx])
        labels[r] = binarize_label(row[label_idx])

    schema = FeatureSchema(
        feature_names=tuple(feature_names),
        label_column=schema_config.label_column,
        alias_map=schema_config.alias_map,
    )
    return Project(
        name=name or path.stem,
        dataset_family=family,
        schema=schema,
        matrix=matrix,
        labels=labels,
    )


def _parse_attribute_line(line: str, path: Path) -> tuple[str, str, tuple[str, ...]]:
    """Parse one ``@attribute`` declaration into (name, kind, nominal_values)."""
    rest = line[len("@attribute"):].strip()
    if not rest:
        raise DataFormatError(f"{path}: malformed attribute declaration {line!r}")
    if rest[0] in "'\"":
        quote = rest[0]
        end = rest.find(quote, 1)
        if end < 0:
            raise DataFormatError(f"{path}: malformed attribute declaration {line!r}")
        attr_name = rest[1:end]
        type_spec = rest[end + 1:].strip()
    else:
        parts = rest.split(None, 1)
        if len(parts) != 2:
            raise DataFormatError(f"{path}: malformed attribute declaration {line!r}")
        attr_name, type_spec = parts[0], parts[1].strip()
    if not attr_name or not type_spec:
        raise DataFormatError(f"{path}: malformed attribute declaration {line!r}")

    if type_spec.startswith("{"):
        if not type_spec.endswith("}"):
            raise DataFormatError(f"{path}: malformed attribute declaration {line!r}")
        values = tuple(v.strip().strip("'\"") for v in type_spec[1:-1].split(","))
        if not all(values):
            raise DataFormatError(f"{path}: malformed attribute declaration {line!r}")
        return attr_name, "nominal", values
    if type_spec.lower() in ("numeric", "real", "integer"):
        return attr_name, "numeric", ()
    raise DataFormatError(
        f"{path}: unsupported attribute type {type_spec!r} (only numeric and nominal)"
    )


def load_arff(
    path: str | Path,
    schema_config: FeatureSchema,
    *,
    name: str | None = None,
    family: str = "default",
) -> Project:
    """Load a dense ARFF file (numeric attributes, nominal class) into a Project."""
    path = Path(path)
    attributes: list[tuple[str, str, tuple[str, ...]]] = []
    data_lines: list[str] = []
    saw_relation = False
    in_data = False
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            low = line.lower()
            if in_data:
                data_lines.append(line)
            elif low.startswith("@relation"):
                saw_relation = True
            elif low.startswith("@attribute"):
                attributes.append(_parse_attribute_line(line, path))
            elif low.startswith("@data"):
                in_data = True
            else:
                raise DataFormatError(f"{path}: unexpected line before @data: {line!r}")
    if not saw_relation:
        raise DataFormatError(f"{path}: missing @relation declaration")
    if not in_data:
        raise DataFormatError(f"{path}: missing @data section")
    if not attributes:
        raise DataFormatError(f"{path}: no @attribute declarations")
    if not data_lines:
        raise DataFormatError(f"empty file (no data rows): {path}")

    header = [a[0] for a in attributes]
    kinds = {a[0]: a[1] for a in attributes}
    nominal_values = {a[0]: set(a[2]) for a in attributes if a[1] == "nominal"}
    feature_idx, label_idx, feature_names = _select_columns(header, schema_config, str(path))
    for i in feature_idx:
        if kinds[header[i]] == "nominal":
            raise DataFormatError(
                f"{path}: nominal attribute {header[i]!r} cannot be used as a feature"
            )

    matrix = np.empty((len(data_lines), len(feature_idx)))
    labels = np.empty(len(data_lines), dtype=np.int8)
    for r, line in enumerate(data_lines):
        if line.startswith("{"):
            raise DataFormatError(f"{path}: sparse ARFF data is not supported (row {r + 1})")
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(header):
            raise DataFormatError(
                f"{path}: row arity mismatch at data row {r + 1}: "
                f"{len(cells)} values for {len(header)} attributes"
            )
        if any(c == "?" for c in cells):
            raise DataFormatError(f"{path}: missing value ('?') at data row {r + 1}")
        for c, idx in enumerate(feature_idx):
            matrix[r, c] = _parse_feature_cell(cells[idx], r + 1, header[idx])
        label_cell = cells[label_idx].strip().strip("'\"")
        if kinds[header[label_idx]] == "nominal" and label_cell not in nominal_values[header[label_idx]]:
            raise DataFormatError(
                f"{path}: unknown value token {label_cell!r} at data row {r + 1} "
                f"(declared: {sorted(nominal_values[header[label_idx]])})"
            )
        labels[r] = binarize_label(label_cell)

    schema = FeatureSchema(
        feature_names=tuple(feature_names),
        label_column=schema_config.label_column,
        alias_map=schema_config.alias_map,
    )
    return Project(
        name=name or path.stem,
        dataset_family=family,
        schema=schema,
        matrix=matrix,
        labels=labels,
    )


def intersect_features(a: Project, b: Project) -> tuple[Project, Project]:
    """Restrict both projects to their common canonical feature names.

    The shared columns come out in ``a``'s schema order in both results, so
    position i refers to the same canonical metric on each side. Each result
    keeps its own local metric names. Raises :class:`NoCommonMetricsError`
    when the canonical name sets are disjoint.
    """
    a_canon = a.schema.canonical_names()
    b_canon = b.schema.canonical_names()
    b_index = {cname: i for i, cname in enumerate(b_canon)}
    common = [cname for cname in a_canon if cname in b_index]
    if not common:
        raise NoCommonMetricsError(
            f"no common metrics between {a.name!r} ({a.dataset_family}) "
            f"and {b.name!r} ({b.dataset_family})"
        )
    a_index = {cname: i for i, cname in enumerate(a_canon)}
    a_cols = [a_index[cname] for cname in common]
    b_cols = [b_index[cname] for cname in common]

    def restricted(project: Project, cols: list[int]) -> Project:
        schema = FeatureSchema(
            feature_names=tuple(project.schema.feature_names[i] for i in cols),
            label_column=project.schema.label_column,
            alias_map=project.schema.alias_map,
        )
        return Project(
            name=project.name,
            dataset_family=project.dataset_family,
            schema=schema,
            matrix=project.matrix[:, cols],
            labels=project.labels,
        )

    return restricted(a, a_cols), restricted(b, b_cols)
