"""Planar test sets on the box B = [-1, 1]^2.

Three reference shapes (a disk, a diamond and a four-petal annulus), regular
grids, random label corruption, uniform and Gaussian samplers, and the
circle-vs-cross two-class sets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRate, NotSPD
from .kernel import LabeledPointSet

SHAPES = ("disk", "diamond", "flower")


@dataclass(frozen=True)
class Shape2D:
    kind: str

    def __post_init__(self):
        if self.kind not in SHAPES:
            raise ValueError(f"unknown shape {self.kind!r}; expected one of {SHAPES}")

    def contains(self, points) -> np.ndarray:
        """Boolean membership, boundary inclusive."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        x, y = p[:, 0], p[:, 1]
        if self.kind == "disk":
            return np.hypot(x, y) <= 0.6
        if self.kind == "diamond":
            return np.abs(x) + np.abs(y) <= 0.7
        r = np.hypot(x, y)
        theta = np.arctan2(y, x)
        return (r >= 0.4) & (r <= 0.6 + 0.1 * np.cos(4 * theta))

    def outline(self, n: int = 256) -> list[np.ndarray]:
        """Closed boundary polylines (first vertex repeated at the end)."""
        t = np.linspace(0.0, 2 * math.pi, n + 1)
        circle = np.column_stack([np.cos(t), np.sin(t)])
        if self.kind == "disk":
            return [0.6 * circle]
        if self.kind == "diamond":
            corners = np.array([[0.7, 0], [0, 0.7], [-0.7, 0], [0, -0.7], [0.7, 0]])
            return [corners]
        outer = (0.6 + 0.1 * np.cos(4 * t))[:, None] * circle
        return [outer, 0.4 * circle]


@dataclass(frozen=True, eq=False)
class Grid2D:
    """The m x m grid ``(k*h - 1, l*h - 1)`` with ``h = 2/(m-1)``, row index ``k*m + l``."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("grid side count must be >= 2")

    @property
    def h(self) -> float:
        return 2.0 / (self.m - 1)

    @property
    def points(self) -> np.ndarray:
        k, l = np.meshgrid(np.arange(self.m), np.arange(self.m), indexing="ij")
        return np.column_stack([k.ravel() * self.h - 1, l.ravel() * self.h - 1])


def characteristic_dataset(shape: Shape2D, grid) -> LabeledPointSet:
    """Values 1 inside ``shape`` and 0 outside, on the grid (or any point array)."""
    points = grid.points if isinstance(grid, Grid2D) else np.asarray(grid, dtype=float)
    return LabeledPointSet(points, shape.contains(points).astype(float))


def corrupt_labels(data: LabeledPointSet, rate: float, seed: int) -> LabeledPointSet:
    """Flip each 0/1 label independently with probability ``rate``."""
    if not (0.0 <= rate <= 1.0):
        raise InvalidRate(f"corruption rate must lie in [0, 1], got {rate}")
    values = data.values
    if values.shape[1] != 1 or not np.isin(values, (0.0, 1.0)).all():
        raise ValueError("label corruption needs a single column of 0/1 values")
    flips = np.random.default_rng(seed).random(len(data)) < rate
    out = values[:, 0].copy()
    out[flips] = 1.0 - out[flips]
    return LabeledPointSet(data.points, out)


def sample_uniform(count: int, seed: int) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be >= 1")
    return np.random.default_rng(seed).uniform(-1.0, 1.0, size=(count, 2))


def gaussian_classes(means, covariances, counts, seed: int):
    """Draw ``counts[l]`` points from N(means[l], covariances[l]) for each class.

    Returns ``(points, labels)`` with integer labels 0..N-1 in class order.
    """
    if not (len(means) == len(covariances) == len(counts)):
        raise ValueError("means, covariances and counts must have equal length")
    rng = np.random.default_rng(seed)
    points, labels = [], []
    for label, (mean, cov, count) in enumerate(zip(means, covariances, counts)):
        cov = np.asarray(cov, dtype=float)
        if cov.shape != (2, 2) or not np.allclose(cov, cov.T):
            raise NotSPD(f"covariance {label} is not a symmetric 2x2 matrix")
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise NotSPD(f"covariance {label} is not positive definite") from exc
        z = rng.standard_normal((int(count), 2))
        points.append(np.asarray(mean, dtype=float) + z @ chol.T)
        labels.append(np.full(int(count), label))
    return np.concatenate(points), np.concatenate(labels)


# Sampling densities for the circle/cross pair. The reference figures give no
# counts; these are picked to look alike and are not canonical.
CIRCLE_SEGMENT_DENSITIES = {1: (64, 16), 2: (32, 40)}
CIRCLE_RADIUS = 0.7
CROSS_HALF_LENGTH = 0.35


def circle_and_cross(k: int):
    """Points on a circle (label 0) and on two crossing segments (label 1).

    ``k`` selects one of two samplings of the same pair of curves, with
    different relative densities.
    """
    n_circle, n_arm = CIRCLE_SEGMENT_DENSITIES[k]
    t = 2 * math.pi * np.arange(n_circle) / n_circle
    circle = CIRCLE_RADIUS * np.column_stack([np.cos(t), np.sin(t)])
    s = np.linspace(-CROSS_HALF_LENGTH, CROSS_HALF_LENGTH, n_arm)
    horizontal = np.column_stack([s, np.zeros_like(s)])
    # the vertical arm skips the crossing point already on the horizontal one
    s = s[np.abs(s) > 1e-12] if n_arm % 2 else s
    vertical = np.column_stack([np.zeros_like(s), s])
    cross = np.concatenate([horizontal, vertical])
    points = np.concatenate([circle, cross])
    labels = np.concatenate([np.zeros(len(circle), int), np.ones(len(cross), int)])
    return points, labels
