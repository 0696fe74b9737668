"""Laplace-kernel data signals for approximation and classification."""

__version__ = "0.1.0"

from .classifier import (ClassifierModel, decision_boundary_indicator, fit_classifier, predict,
                         signal_values)
from .kernel import (KernelConfig, LabeledPointSet, Signal, build_gram, evaluate_signal,
                     fit_signal, laplace_kernel, normalizing_constant_log, sum_signals)
from .persistence import load_model, save_model

__all__ = [
    "ClassifierModel", "KernelConfig", "LabeledPointSet", "Signal", "build_gram",
    "decision_boundary_indicator", "evaluate_signal", "fit_classifier", "fit_signal",
    "laplace_kernel", "load_model", "normalizing_constant_log", "predict", "save_model",
    "signal_values", "sum_signals",
]
