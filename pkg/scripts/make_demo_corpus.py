#!/usr/bin/env python3
"""Generate a synthetic demo corpus plus a ready-to-run experiment config.

Creates three data set families with partially overlapping metric names.
Defective instances get a subset of their metrics inflated, so every
prediction route has real signal to find. One project is written as ARFF to
exercise both loaders; the rest are CSV.

Usage:
    python3 scripts/make_demo_corpus.py --out demo_corpus
    cpdp-ifs run --config demo_corpus/config.json
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np

# Each family shares these column names with the others, so the
# intersection route stays applicable across families.
SHARED_METRICS = ("loc", "cbo")

FAMILY_LAYOUT = (
    # family, projects, metrics, base instance count
    ("kit", 3, 8, 150),
    ("forge", 3, 6, 120),
    ("loom", 2, 10, 90),
)


def planted_matrix(
    rng: np.random.Generator, n_instances: int, n_features: int, defect_rate: float, signal: float
) -> tuple[np.ndarray, np.ndarray]:
    matrix = rng.gamma(2.0, 1.5, size=(n_instances, n_features))
    labels = (rng.random(n_instances) < defect_rate).astype(int)
    if labels.sum() == 0:
        labels[0] = 1
    if labels.sum() == n_instances:
        labels[0] = 0
    planted = rng.choice(n_features, size=max(1, n_features // 3), replace=False)
    matrix[np.ix_(labels == 1, planted)] *= 1.0 + signal
    return matrix, labels


def write_csv(path: Path, names: tuple[str, ...], matrix: np.ndarray, labels: np.ndarray) -> None:
    lines = [",".join(names + ("bug",))]
    for row, label in zip(matrix, labels):
        lines.append(",".join(f"{v:.9f}" for v in row) + f",{int(label)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_arff(
    path: Path, relation: str, names: tuple[str, ...], matrix: np.ndarray, labels: np.ndarray
) -> None:
    lines = [f"@relation {relation}", ""]
    lines.extend(f"@attribute {name} numeric" for name in names)
    lines.append("@attribute bug {clean,buggy}")
    lines.extend(["", "@data"])
    for row, label in zip(matrix, labels):
        token = "buggy" if label else "clean"
        lines.append(",".join(f"{v:.9f}" for v in row) + f",{token}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="demo_corpus", help="output directory")
    parser.add_argument("--seed", type=int, default=7, help="generator seed")
    parser.add_argument(
        "--signal", type=float, default=2.0, help="metric inflation factor on defective rows"
    )
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)

    specs = []
    arff_written = False
    for family, count, n_features, base in FAMILY_LAYOUT:
        names = SHARED_METRICS + tuple(
            f"{family}_m{i}" for i in range(n_features - len(SHARED_METRICS))
        )
        for k in range(count):
            name = f"{family}_p{k}"
            matrix, labels = planted_matrix(
                rng, base + 15 * k, n_features, defect_rate=0.2 + 0.05 * k, signal=args.signal
            )
            if not arff_written:
                file_name = f"{name}.arff"
                write_arff(out / file_name, name, names, matrix, labels)
                arff_written = True
            else:
                file_name = f"{name}.csv"
                write_csv(out / file_name, names, matrix, labels)
            specs.append({"name": name, "path": file_name, "family": family})
            print(f"wrote {out / file_name} ({matrix.shape[0]} instances, {n_features} metrics)")

    config = {
        "datasets": specs,
        "methods": ["cpdp_pure", "ifs_our", "ifs_min", "mix"],
        "workers": 2,
        "output_dir": str(out / "report"),
    }
    config_path = out / "config.json"
    config_path.write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {config_path}")
    print(f"next: cpdp-ifs run --config {config_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
