"""Laplace-kernel signals: Gram assembly, the regularized solve, evaluation.

A signal fitted to the data ``(X, Y)`` is

    u(x) = sum_j lam_j * exp(-2*pi*|x - x_j| / gamma)

where the coefficients solve ``(alpha*I + M) lam = Y`` and ``M`` is the
Gram matrix of the kernel on ``X``. The values at the data points are then
``u(X) = Y - alpha*lam``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.spatial.distance import cdist, pdist, squareform

from .errors import DimensionMismatch, IncompatibleSignals, SingularSystem

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
RESIDUAL_RTOL = 1e-10
# rows of queries x centers evaluated per block; depends only on the center count
_EVAL_BLOCK_ENTRIES = 1 << 22


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class KernelConfig:
    """Bandwidth ``gamma`` (kernel ``exp(-2*pi*r/gamma)``) and regularization ``alpha``."""

    gamma: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be positive and finite, got {self.gamma}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be nonnegative and finite, got {self.alpha}")
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "alpha", float(self.alpha))


@dataclass(frozen=True, eq=False)
class LabeledPointSet:
    """Points (m x d, one per row) with values (m x n).

    A 1-D ``values`` array is taken as a single column.
    """

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        values = np.array(self.values, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if values.ndim == 1:
            values = values[:, None]
        if points.ndim != 2 or values.ndim != 2:
            raise DimensionMismatch("points and values must be matrices")
        if points.shape[0] < 1 or points.shape[1] < 1:
            raise DimensionMismatch(f"need at least one point of dimension >= 1, got {points.shape}")
        if values.shape[0] != points.shape[0]:
            raise DimensionMismatch(
                f"{values.shape[0]} value rows for {points.shape[0]} points")
        if not (np.isfinite(points).all() and np.isfinite(values).all()):
            raise SingularSystem("non-finite coordinates or values")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "values", _frozen(values))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class Signal:
    centers: np.ndarray
    coefficients: np.ndarray
    config: KernelConfig
    fitted_values: np.ndarray = field(repr=False)

    def __post_init__(self):
        centers = np.array(self.centers, dtype=float)
        coefficients = np.array(self.coefficients, dtype=float)
        fitted = np.array(self.fitted_values, dtype=float)
        if coefficients.ndim == 1:
            coefficients = coefficients[:, None]
        if fitted.ndim == 1:
            fitted = fitted[:, None]
        if centers.ndim != 2 or coefficients.shape[0] != centers.shape[0]:
            raise DimensionMismatch("coefficient rows must match centers")
        if fitted.shape != coefficients.shape:
            raise DimensionMismatch("fitted_values must have the coefficient shape")
        object.__setattr__(self, "centers", _frozen(centers))
        object.__setattr__(self, "coefficients", _frozen(coefficients))
        object.__setattr__(self, "fitted_values", _frozen(fitted))

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.coefficients.shape[1]

    def column(self, j: int) -> "Signal":
        """The single-output signal formed by coefficient column ``j``."""
        return Signal(self.centers, self.coefficients[:, [j]], self.config,
                      self.fitted_values[:, [j]])

    def columns(self) -> list["Signal"]:
        return [self.column(j) for j in range(self.n_outputs)]

    def __call__(self, queries) -> np.ndarray:
        return evaluate_signal(self, queries)


def laplace_kernel(r, config: KernelConfig = KernelConfig()):
    """``exp(-2*pi*r/gamma)``; scalar in, scalar out, arrays elementwise."""
    return np.exp(-TWO_PI * np.asarray(r, dtype=float) / config.gamma)


def normalizing_constant_log(d: int) -> float:
    """Natural log of ``Gamma(d+1) / pi**((d+1)/2)``.

    Only the log is exposed: the constant itself overflows doubles for
    MNIST-sized ``d``. It never enters the linear system.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return math.lgamma(d + 1) - 0.5 * (d + 1) * math.log(math.pi)


def build_gram(points, config: KernelConfig = KernelConfig()) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise DimensionMismatch("points must be an m x d matrix")
    if points.shape[0] == 1:
        return np.ones((1, 1))
    gram = laplace_kernel(squareform(pdist(points)), config)
    np.fill_diagonal(gram, 1.0)
    return gram


def _has_duplicate_rows(points: np.ndarray) -> bool:
    return np.unique(points, axis=0).shape[0] < points.shape[0]


def _residual(system: np.ndarray, lam: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.max(np.abs(system @ lam - rhs), initial=0.0))


def solve_system(system: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve the SPD system with Cholesky, falling back to a pivoted symmetric solve.

    One factorization serves every right-hand side column. A couple of
    refinement sweeps bring the residual under ``1e-10 * max(1, |rhs|_inf)``;
    failing that the system is reported singular.
    """
    try:
        factor = scipy.linalg.cho_factor(system, lower=True, check_finite=True)
        solve = lambda b: scipy.linalg.cho_solve(factor, b)  # noqa: E731
    except (np.linalg.LinAlgError, ValueError):
        log.debug("Cholesky failed; using symmetric indefinite solve")

        def solve(b):
            try:
                return scipy.linalg.solve(system, b, assume_a="sym")
            except (np.linalg.LinAlgError, ValueError) as exc:
                raise SingularSystem(f"symmetric solve failed: {exc}") from exc

    lam = solve(rhs)
    tol = RESIDUAL_RTOL * max(1.0, float(np.max(np.abs(rhs), initial=0.0)))
    res = _residual(system, lam, rhs)
    for _ in range(3):
        if res <= tol:
            break
        lam = lam + solve(rhs - system @ lam)
        res = _residual(system, lam, rhs)
    if not np.all(np.isfinite(lam)) or res > tol:
        raise SingularSystem(f"residual {res:.3e} exceeds tolerance {tol:.3e}")
    return lam


def fit_signal(data: LabeledPointSet, config: KernelConfig = KernelConfig()) -> Signal:
    """Fit all value columns of ``data`` against one factorization of ``alpha*I + M``."""
    if config.alpha == 0 and _has_duplicate_rows(data.points):
        raise SingularSystem("duplicate points cannot be interpolated exactly (alpha=0)")
    system = build_gram(data.points, config)
    system[np.diag_indices_from(system)] += config.alpha
    lam = solve_system(system, data.values)
    return Signal(data.points, lam, config, data.values - config.alpha * lam)


def evaluate_signal(signal: Signal, queries) -> np.ndarray:
    """Evaluate at each query row; returns a (q, n) matrix."""
    queries = np.asarray(queries, dtype=float)
    if queries.ndim == 1 and signal.dim > 1 and queries.shape[0] == signal.dim:
        queries = queries[None, :]
    if queries.ndim == 1 and signal.dim == 1:
        queries = queries[:, None]
    if queries.ndim != 2 or (queries.shape[0] and queries.shape[1] != signal.dim):
        raise DimensionMismatch(
            f"queries of shape {queries.shape} for a signal in dimension {signal.dim}")
    out = np.empty((queries.shape[0], signal.n_outputs))
    block = max(1, _EVAL_BLOCK_ENTRIES // signal.centers.shape[0])
    for start in range(0, queries.shape[0], block):
        stop = start + block
        weights = laplace_kernel(cdist(queries[start:stop], signal.centers), signal.config)
        out[start:stop] = weights @ signal.coefficients
    return out


def sum_signals(signals: Sequence[Signal]) -> Signal:
    """Add signals defined on the same centers with the same configuration."""
    if not signals:
        raise IncompatibleSignals("nothing to sum")
    first = signals[0]
    for other in signals[1:]:
        if other.config != first.config:
            raise IncompatibleSignals("kernel configurations differ")
        if other.centers.shape != first.centers.shape or not np.array_equal(
                other.centers, first.centers):
            raise IncompatibleSignals(
                "signals on different center sets do not add up to a signal")
        if other.n_outputs != first.n_outputs:
            raise IncompatibleSignals("output counts differ")
    coefficients = np.sum([s.coefficients for s in signals], axis=0)
    fitted = np.sum([s.fitted_values for s in signals], axis=0)
    return Signal(first.centers, coefficients, first.config, fitted)
