"""One-vs-rest signal classification.

Each class gets the signal fitted to the characteristic vector of that
class on the shared set of centers; a query is assigned to the class with
the strongest signal there. All class signals share one system matrix, so
their sum is the signal of the whole point set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import DimensionMismatch, SingleClass
from .kernel import KernelConfig, LabeledPointSet, Signal, evaluate_signal, fit_signal

# values within this relative distance of the row max count as tied
TIE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ClassifierModel:
    class_labels: tuple
    signal: Signal

    def __post_init__(self):
        labels = tuple(self.class_labels)
        if len(labels) < 2:
            raise SingleClass("a classifier needs at least two classes")
        if len(set(labels)) != len(labels):
            raise ValueError("class labels must be distinct")
        if self.signal.n_outputs != len(labels):
            raise DimensionMismatch(
                f"{self.signal.n_outputs} signal columns for {len(labels)} classes")
        object.__setattr__(self, "class_labels", labels)

    @property
    def config(self) -> KernelConfig:
        return self.signal.config

    @property
    def n_classes(self) -> int:
        return len(self.class_labels)

    @property
    def dim(self) -> int:
        return self.signal.dim


def one_hot(labels: Sequence[Hashable], class_labels: Sequence[Hashable]) -> np.ndarray:
    index = {label: i for i, label in enumerate(class_labels)}
    try:
        cols = np.array([index[label] for label in labels], dtype=int)
    except KeyError as exc:
        raise ValueError(f"label {exc.args[0]!r} not among the class labels") from None
    out = np.zeros((len(cols), len(class_labels)))
    out[np.arange(len(cols)), cols] = 1.0
    return out


def fit_classifier(points, labels: Sequence[Hashable], config: KernelConfig = KernelConfig(),
                   class_labels: Sequence[Hashable] | None = None) -> ClassifierModel:
    """Fit the N one-vs-rest signals in a single solve.

    Classes are ordered by first appearance in ``labels`` unless
    ``class_labels`` fixes the order.
    """
    labels = list(np.asarray(labels).tolist()) if isinstance(labels, np.ndarray) else list(labels)
    if class_labels is None:
        class_labels = list(dict.fromkeys(labels))
    else:
        class_labels = list(class_labels)
        missing = set(class_labels) - set(labels)
        if missing:
            raise SingleClass(f"classes without members: {sorted(map(str, missing))}")
    if len(class_labels) < 2:
        raise SingleClass("need at least two distinct labels")
    data = LabeledPointSet(points, one_hot(labels, class_labels))
    return ClassifierModel(tuple(class_labels), fit_signal(data, config))


def argmax_lowest(values: np.ndarray, rtol: float = TIE_RTOL) -> np.ndarray:
    """Row-wise argmax; near-ties go to the lowest column index.

    Exact ties in exact arithmetic rarely survive the solve bit-for-bit, so
    entries within ``rtol`` (relative to the row's largest magnitude) of
    the maximum are treated as tied.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[0] == 0:
        return np.zeros(0, dtype=int)
    best = values.max(axis=1, keepdims=True)
    scale = np.abs(values).max(axis=1, keepdims=True)
    return np.argmax(values >= best - rtol * scale, axis=1)


def signal_values(model: ClassifierModel, queries) -> np.ndarray:
    """Per-class signal strengths, a (q, N) matrix in ``class_labels`` order.

    Far from all centers every column decays towards zero; callers that care
    about such outliers should threshold the row maximum themselves.
    """
    queries = np.asarray(queries, dtype=float)
    if queries.size == 0:
        return np.zeros((0, model.n_classes))
    return evaluate_signal(model.signal, queries)


def decision_boundary_indicator(model: ClassifierModel, queries) -> np.ndarray:
    """Index of the winning class per query."""
    return argmax_lowest(signal_values(model, queries))


def predict(model: ClassifierModel, queries) -> list:
    return [model.class_labels[i] for i in decision_boundary_indicator(model, queries)]
