#!/usr/bin/env python3
"""Rank the 16 indicators by how much trained profile models lean on them.

Runs every cross-family profile prediction the config allows, collects the
absolute model weight of each indicator (the matrices are z-scored before
training, so magnitudes are comparable), and prints the indicators ranked by
their mean absolute weight.

Usage:
    python3 scripts/indicator_weights.py --config demo_corpus/config.json
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict

import numpy as np

from cpdp_ifs.experiment import ConfigError, DataError, load_config, load_projects
from cpdp_ifs.learner import DegenerateTrainingError, coefficient_magnitudes
from cpdp_ifs.predictors import Method, enumerate_pairs, run_ifs_our
from cpdp_ifs.profiles import INDICATOR_NAMES


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--config", required=True, help="experiment config (JSON)")
    parser.add_argument(
        "--top", type=int, default=len(INDICATOR_NAMES), help="how many indicators to print"
    )
    args = parser.parse_args()

    try:
        config = load_config(args.config)
        projects = load_projects(config)
    except (ConfigError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    by_name = {p.name: p for p in projects}
    plans = enumerate_pairs(projects, Method.IFS_OUR)
    if not plans:
        print("error: no cross-family pairs in this corpus", file=sys.stderr)
        return 1

    magnitudes: dict[str, list[float]] = defaultdict(list)
    completed = 0
    for plan in plans:
        try:
            outcome = run_ifs_our(
                by_name[plan.source_name],
                by_name[plan.target_name],
                preprocessing=config.preprocessing,
                params=config.learner,
            )
        except DegenerateTrainingError as exc:
            print(f"skipped {plan.source_name}->{plan.target_name}: {exc}", file=sys.stderr)
            continue
        for name, magnitude in coefficient_magnitudes(outcome.model):
            magnitudes[name].append(magnitude)
        completed += 1

    if completed == 0:
        print("error: every pair failed to train", file=sys.stderr)
        return 1

    print(f"models trained: {completed}")
    print(f"{'indicator':<24} {'mean |weight|':>14} {'sd':>10}")
    ranked = sorted(
        INDICATOR_NAMES, key=lambda name: float(np.mean(magnitudes[name])), reverse=True
    )
    for name in ranked[: args.top]:
        values = np.array(magnitudes[name])
        print(f"{name:<24} {values.mean():>14.4f} {values.std(ddof=1):>10.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
