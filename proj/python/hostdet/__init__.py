"""Fake-news and hostile-post text classification.

Thin wrapper over the C++ core. Evaluation reports come back as dicts.
"""

import json as _json

from . import _hostdet
from ._hostdet import (
    DatasetError,
    LinearModel,
    ModelError,
    SpecError,
    TextClassifier,
    Vocabulary,
    fine_grained_f1,
    ngrams,
    normalize,
    parse_dataset,
    run_cli,
    sgns_pair_loss,
    train_linear_svm,
)

__all__ = [
    "DatasetError",
    "LinearModel",
    "ModelError",
    "SpecError",
    "TextClassifier",
    "Vocabulary",
    "evaluate_binary",
    "evaluate_multilabel",
    "fine_grained_f1",
    "ngrams",
    "normalize",
    "parse_dataset",
    "run_cli",
    "sgns_pair_loss",
    "train_linear_svm",
]


def evaluate_binary(actual, predicted):
    """Task-a report for parallel lists of `real` / `fake` labels."""
    return _json.loads(_hostdet.evaluate_binary(list(actual), list(predicted)))


def evaluate_multilabel(actual, predicted):
    """Task-b report for parallel lists of comma-separated label fields."""
    return _json.loads(_hostdet.evaluate_multilabel(list(actual), list(predicted)))
