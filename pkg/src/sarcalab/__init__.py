"""sarcalab: train, evaluate and explain binary sarcasm classifiers."""

from . import (
    blackbox,
    classifiers,
    corpus,
    evaluation,
    features,
    kernels,
    lime,
    pipeline,
    preprocess,
)

__version__ = "0.1.0"

__all__ = [
    "blackbox",
    "classifiers",
    "corpus",
    "evaluation",
    "features",
    "kernels",
    "lime",
    "pipeline",
    "preprocess",
    "__version__",
]
