"""Digit classification by competing local class signals.

For a test image the 5 nearest training images of every digit are found,
the 10 one-vs-rest signals are fitted on those 50 points alone, and the
digit whose signal is strongest at the test image wins.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from ..classifier import argmax_lowest
from ..errors import LengthMismatch
from ..kernel import KernelConfig, LabeledPointSet, evaluate_signal, fit_signal
from .augment import augment
from .features import N_CLASSES, FeatureMatrix, LocalProblem, NeighborIndex, normalize
from .idx import MnistSet

log = logging.getLogger(__name__)

MNIST_CONFIG = KernelConfig(gamma=1.0, alpha=1.5)


def local_signal_values(problem: LocalProblem, config: KernelConfig = MNIST_CONFIG) -> np.ndarray:
    signal = fit_signal(LabeledPointSet(problem.candidates, problem.one_hot), config)
    return evaluate_signal(signal, problem.query[None, :])[0]


def classify_digit(train: FeatureMatrix, query, config: KernelConfig = MNIST_CONFIG,
                   k: int = 5, index: NeighborIndex | None = None):
    """Return ``(digit, signal_values)`` for one normalized query vector."""
    index = index or NeighborIndex(train)
    problem = index.per_class(query, k)[0]
    values = local_signal_values(problem, config)
    return int(argmax_lowest(values[None, :])[0]), values


def classify_digits(index: NeighborIndex, queries, config: KernelConfig = MNIST_CONFIG,
                    k: int = 5, block: int = 256) -> tuple[np.ndarray, np.ndarray]:
    queries = np.asarray(queries, dtype=float)
    digits = np.empty(len(queries), dtype=int)
    values = np.empty((len(queries), N_CLASSES))
    for start in range(0, len(queries), block):
        for j, problem in enumerate(index.per_class(queries[start:start + block], k)):
            values[start + j] = local_signal_values(problem, config)
        digits[start:start + block] = argmax_lowest(values[start:start + block])
        log.debug("classified %d/%d", min(start + block, len(queries)), len(queries))
    return digits, values


@dataclass
class RunResult:
    accuracy: float
    confusion: np.ndarray

    def to_dict(self) -> dict:
        return {"accuracy": self.accuracy, "confusion": self.confusion.tolist()}


def evaluate_run(predictions, truth, n_classes: int = N_CLASSES) -> RunResult:
    """Accuracy and confusion matrix; row = true digit, column = assigned label."""
    predictions = np.asarray(predictions, dtype=int)
    truth = np.asarray(truth, dtype=int)
    if predictions.shape != truth.shape:
        raise LengthMismatch(f"{len(predictions)} predictions for {len(truth)} labels")
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(confusion, (truth, predictions), 1)
    accuracy = float(np.trace(confusion) / len(truth)) if len(truth) else 0.0
    return RunResult(accuracy, confusion)


@dataclass
class MnistReport:
    accuracy: float
    confusion: np.ndarray
    config: dict
    timings: dict = field(default_factory=dict)
    nn_accuracy: float | None = None
    nn_confusion: np.ndarray | None = None

    def to_dict(self, timings: bool = True) -> dict:
        doc = {"accuracy": self.accuracy, "confusion": self.confusion.tolist(),
               "config": self.config}
        if self.nn_accuracy is not None:
            doc["nn_baseline"] = {"accuracy": self.nn_accuracy,
                                  "confusion": self.nn_confusion.tolist()}
        if timings:
            doc["timings"] = self.timings
        return doc


def build_training_features(train: MnistSet, use_augmentation: bool = True) -> FeatureMatrix:
    return normalize(augment(train) if use_augmentation else train)


def run_mnist(train: MnistSet, test: MnistSet, config: KernelConfig = MNIST_CONFIG, k: int = 5,
              use_augmentation: bool = True, limit_test: int | None = None,
              with_nn_baseline: bool = False) -> MnistReport:
    timings = {}
    t0 = time.perf_counter()
    features = build_training_features(train, use_augmentation)
    index = NeighborIndex(features)
    timings["prepare_s"] = time.perf_counter() - t0

    if limit_test is not None:
        test = test.head(limit_test)
    queries = normalize(test).vectors
    t0 = time.perf_counter()
    digits, _ = classify_digits(index, queries, config, k)
    timings["classify_s"] = time.perf_counter() - t0
    result = evaluate_run(digits, test.labels)

    report = MnistReport(result.accuracy, result.confusion, {
        "alpha": config.alpha, "gamma": config.gamma, "k": k,
        "augment": use_augmentation, "train_size": len(features), "test_size": len(test)},
        timings)
    if with_nn_baseline:
        t0 = time.perf_counter()
        idx, _ = index.nearest(queries)
        nn = evaluate_run(features.labels[idx], test.labels)
        timings["nn_s"] = time.perf_counter() - t0
        report.nn_accuracy, report.nn_confusion = nn.accuracy, nn.confusion
    return report
