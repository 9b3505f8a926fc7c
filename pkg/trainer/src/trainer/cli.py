"""Command-line entry point: train on one directory, predict on another."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import TrainerError
from .features import collect_feature_files
from .pipeline import DEFAULT_THRESHOLD, DEFAULT_TREES, TrainConfig, train_and_predict


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densekit-train",
        description="Fit a random-forest membership predictor on labeled feature CSVs "
        "and emit prediction CSVs per test graph.",
    )
    parser.add_argument("--train-dir", required=True, help="directory of labeled feature CSVs")
    parser.add_argument("--test-dir", required=True, help="directory of feature CSVs to score")
    parser.add_argument("--out-dir", required=True, help="where model, predictions, metrics go")
    parser.add_argument("--trees", type=int, default=DEFAULT_TREES, help="forest size")
    parser.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                        help="score cutoff used by the metrics report")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = TrainConfig(
            train_files=collect_feature_files(args.train_dir),
            test_files=collect_feature_files(args.test_dir),
            trees=args.trees,
            threshold=args.threshold,
            seed=args.seed,
        )
        result = train_and_predict(cfg, args.out_dir)
    except (TrainerError, OSError) as exc:
        print(f"densekit-train: {exc}", file=sys.stderr)
        return 1
    summary = {
        "model": str(result.model_path),
        "predictions": len(result.prediction_paths),
        "metrics": str(result.metrics_path),
        "accuracy": result.metrics["accuracy"],
    }
    print(json.dumps(summary, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
