"""Random-forest membership predictor for the densest-subgraph toolkit.

Consumes the toolkit's labeled feature CSVs (one per graph), fits a forest
on (degree, avg_neighbor_degree, graph_n), and emits prediction CSVs the
toolkit's solvers and benchmark accept directly. All coupling to the main
package goes through those two CSV formats and its command line; nothing
here imports it.
"""

from __future__ import annotations

from .errors import FormatError, SingleClassError, TrainerError
from .features import FeatureTable, collect_feature_files, prediction_name, read_feature_csv
from .pipeline import (
    DEFAULT_THRESHOLD,
    DEFAULT_TREES,
    TrainConfig,
    TrainResult,
    train_and_predict,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_THRESHOLD",
    "DEFAULT_TREES",
    "FeatureTable",
    "FormatError",
    "SingleClassError",
    "TrainConfig",
    "TrainResult",
    "TrainerError",
    "collect_feature_files",
    "prediction_name",
    "read_feature_csv",
    "train_and_predict",
    "__version__",
]
