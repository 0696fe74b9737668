"""JSON model files.

Layout::

    {"format_version": 1, "dim": d, "gamma": g, "alpha": a,
     "class_labels": [...],            # classifiers only
     "centers": [[...], ...],          # m rows of d numbers
     "coefficients": [[...], ...]}     # m rows of n numbers

Matrices are row-major, one point per row. Floats are written with 17
significant digits so a load reproduces the saved bits.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .classifier import ClassifierModel
from .errors import DataError, IoError
from .kernel import KernelConfig, Signal, build_gram

FORMAT_VERSION = 1


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _matrix(a: np.ndarray, indent: str) -> str:
    rows = ("[" + ", ".join(_num(v) for v in row) + "]" for row in a)
    return "[\n" + ",\n".join(indent + "  " + r for r in rows) + "\n" + indent + "]"


def dumps_model(model: Signal | ClassifierModel) -> str:
    signal = model.signal if isinstance(model, ClassifierModel) else model
    parts = [
        f'  "format_version": {FORMAT_VERSION}',
        f'  "dim": {signal.dim}',
        f'  "gamma": {_num(signal.config.gamma)}',
        f'  "alpha": {_num(signal.config.alpha)}',
    ]
    if isinstance(model, ClassifierModel):
        parts.append(f'  "class_labels": {json.dumps(list(model.class_labels))}')
    parts.append(f'  "centers": {_matrix(signal.centers, "  ")}')
    parts.append(f'  "coefficients": {_matrix(signal.coefficients, "  ")}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def loads_model(text: str) -> Signal | ClassifierModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"model file is not valid JSON: {exc}") from exc
    try:
        if doc["format_version"] != FORMAT_VERSION:
            raise DataError(f"unsupported model format_version {doc['format_version']}")
        config = KernelConfig(gamma=doc["gamma"], alpha=doc["alpha"])
        centers = np.array(doc["centers"], dtype=float).reshape(-1, int(doc["dim"]))
        coefficients = np.array(doc["coefficients"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DataError):
            raise
        raise DataError(f"malformed model file: {exc}") from exc
    if coefficients.ndim != 2:
        raise DataError("coefficients must be a matrix")
    # values at the centers are not stored; M @ lam recovers them
    fitted = build_gram(centers, config) @ coefficients
    signal = Signal(centers, coefficients, config, fitted)
    labels = doc.get("class_labels")
    if labels is not None:
        return ClassifierModel(tuple(labels), signal)
    return signal


def save_model(model: Signal | ClassifierModel, path) -> None:
    try:
        Path(path).write_text(dumps_model(model), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoError(f"cannot write model to {path}: {exc}") from exc


def load_model(path) -> Signal | ClassifierModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read model {path}: {exc}") from exc
    return loads_model(text)
