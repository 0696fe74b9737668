"""Named planar experiments rendered as SVG figures.

Experiment ids:

* ``<shape>-m16``, ``<shape>-m32``: characteristic function of a shape
  (disk, diamond or flower) on an m x m grid; 20/50/80% level lines.
* ``<shape>-m16-noise2``, ``<shape>-m32-noise5`` (any m/rate pairing):
  the same with 2% or 5% of labels flipped; 50% level line only.
* ``<shape>-sampled1024``: 1024 uniform random points; 20/50/80% lines.
* ``circle-segments-k1``, ``circle-segments-k2``: circle vs. cross, the 50%
  level line of each class signal and the decision boundary.
* ``gaussians``: three Gaussian classes and their decision regions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .classifier import fit_classifier
from .contour import (DEFAULT_RESOLUTION, decision_boundary_2d, extract_contour,
                      field_on_grid, level_lines, region_boundaries)
from .errors import UsageError
from .geometry import (SHAPES, Grid2D, Shape2D, characteristic_dataset, circle_and_cross,
                       corrupt_labels, gaussian_classes, sample_uniform)
from .kernel import KernelConfig, LabeledPointSet, fit_signal
from .svg import BLUE, CLASS_COLORS, MAGENTA, Figure, gray_for

LEVELS = (0.2, 0.5, 0.8)

# three-class Gaussian setup with diagonal covariances; not canonical
GAUSSIAN_MEANS = ((-0.4, -0.3), (0.4, -0.3), (0.0, 0.45))
GAUSSIAN_COVS = (np.diag([0.04, 0.02]), np.diag([0.02, 0.05]), np.diag([0.05, 0.03]))
GAUSSIAN_COUNTS = (100, 100, 100)

_GRID_RE = re.compile(rf"^({'|'.join(SHAPES)})-m(16|32)(?:-noise([25]))?$")
_SAMPLED_RE = re.compile(rf"^({'|'.join(SHAPES)})-sampled1024$")
_CS_RE = re.compile(r"^circle-segments-k([12])$")


@dataclass(frozen=True)
class Experiment:
    id: str
    kind: str           # grid | sampled | circle-segments | gaussians
    shape: str | None = None
    m: int | None = None
    noise_percent: int = 0
    k: int | None = None


def experiment_ids() -> list[str]:
    ids = []
    for shape in SHAPES:
        for m in (16, 32):
            ids.append(f"{shape}-m{m}")
            ids.extend(f"{shape}-m{m}-noise{r}" for r in (2, 5))
        ids.append(f"{shape}-sampled1024")
    ids += ["circle-segments-k1", "circle-segments-k2", "gaussians"]
    return ids


def parse_experiment(experiment_id: str) -> Experiment:
    if match := _GRID_RE.match(experiment_id):
        shape, m, noise = match.groups()
        return Experiment(experiment_id, "grid", shape, int(m), int(noise or 0))
    if match := _SAMPLED_RE.match(experiment_id):
        return Experiment(experiment_id, "sampled", match.group(1))
    if match := _CS_RE.match(experiment_id):
        return Experiment(experiment_id, "circle-segments", k=int(match.group(1)))
    if experiment_id == "gaussians":
        return Experiment(experiment_id, "gaussians")
    raise UsageError(f"unknown experiment id {experiment_id!r}; known ids: "
                     + ", ".join(experiment_ids()))


def _value_colors(values) -> list[str]:
    return [BLUE if v >= 0.5 else MAGENTA for v in np.ravel(values)]


def build_figure(experiment_id: str, alpha: float = 1.0, seed: int = 0,
                 gamma: float = 1.0, resolution: int = DEFAULT_RESOLUTION) -> Figure:
    exp = parse_experiment(experiment_id)
    config = KernelConfig(gamma=gamma, alpha=alpha)
    fig = Figure(title=f"{experiment_id} alpha={alpha:g} seed={seed}")

    if exp.kind in ("grid", "sampled"):
        shape = Shape2D(exp.shape)
        if exp.kind == "grid":
            data = characteristic_dataset(shape, Grid2D(exp.m))
            if exp.noise_percent:
                data = corrupt_labels(data, exp.noise_percent / 100, seed)
        else:
            data = characteristic_dataset(shape, sample_uniform(1024, seed))
        raster = field_on_grid(fit_signal(data, config), resolution)
        fig.add_points(data.points, _value_colors(data.values))
        fig.outlines.extend(shape.outline())
        fractions = (0.5,) if exp.noise_percent else LEVELS
        for frac, contour in zip(fractions, level_lines(raster, fractions)):
            fig.add_contour(contour, gray_for(frac))
        return fig

    if exp.kind == "circle-segments":
        points, labels = circle_and_cross(exp.k)
        model = fit_classifier(points, labels, config, class_labels=[0, 1])
        fig.add_points(points, [CLASS_COLORS[l] for l in labels])
        for l in range(2):
            raster = field_on_grid(model.signal, resolution, column=l)
            fig.add_contour(extract_contour(raster, 0.5 * raster.max), CLASS_COLORS[l], 0.006)
        fig.add_contour(decision_boundary_2d(model, resolution), "#000000", 0.01)
        return fig

    points, labels = gaussian_classes(GAUSSIAN_MEANS, GAUSSIAN_COVS, GAUSSIAN_COUNTS, seed)
    model = fit_classifier(points, labels, config, class_labels=[0, 1, 2])
    fig.add_points(points, [CLASS_COLORS[l] for l in labels], radius=0.01)
    for contour in region_boundaries(model, resolution):
        fig.add_contour(contour, "#000000", 0.008)
    for l, mean in enumerate(GAUSSIAN_MEANS):
        fig.markers.append((np.asarray(mean, dtype=float), CLASS_COLORS[l], 0.04))
    return fig
