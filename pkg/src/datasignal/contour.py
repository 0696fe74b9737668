"""Rasterized signals and marching-squares level lines."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classifier import ClassifierModel
from .errors import DimensionMismatch, WrongClassCount
from .kernel import Signal, evaluate_signal

DEFAULT_RESOLUTION = 256


@dataclass(frozen=True, eq=False)
class Raster:
    """Samples ``values[i, j]`` of a field at ``(x[j], y[i])``."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(y), len(x)):
            raise DimensionMismatch(f"values {values.shape} vs axes {(len(y), len(x))}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "values", values)

    @property
    def max(self) -> float:
        return float(self.values.max())

    @property
    def points(self) -> np.ndarray:
        """Sample locations, row-major matching ``values.ravel()``."""
        xx, yy = np.meshgrid(self.x, self.y)
        return np.column_stack([xx.ravel(), yy.ravel()])

    @property
    def spacing(self) -> float:
        return float(max(np.diff(self.x).max(initial=0), np.diff(self.y).max(initial=0)))


@dataclass
class ContourSet:
    level: float
    polylines: list = field(default_factory=list)
    closed: list = field(default_factory=list)

    def __len__(self):
        return len(self.polylines)

    def vertices(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.concatenate(self.polylines)

    def length(self) -> float:
        return float(sum(np.linalg.norm(np.diff(p, axis=0), axis=1).sum()
                         for p in self.polylines))


def cell_centers(resolution: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    step = (hi - lo) / resolution
    return lo + (np.arange(resolution) + 0.5) * step


def field_on_grid(signal: Signal, resolution: int = DEFAULT_RESOLUTION, column: int = 0) -> Raster:
    """Evaluate one output of a planar signal at the cell centers of a raster on B."""
    if signal.dim != 2:
        raise DimensionMismatch(f"need a planar signal, got dimension {signal.dim}")
    axis = cell_centers(resolution)
    xx, yy = np.meshgrid(axis, axis)
    values = evaluate_signal(signal, np.column_stack([xx.ravel(), yy.ravel()]))[:, column]
    return Raster(axis, axis, values.reshape(resolution, resolution))


# Cell corners: a=(i,j) b=(i,j+1) c=(i+1,j+1) d=(i+1,j), bits 1,2,4,8 when
# the corner is at or above the level. Edges: 0 bottom a-b, 1 right b-c,
# 2 top d-c, 3 left a-d.
_SEGMENTS = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 6: [(0, 2)], 7: [(3, 2)],
    8: [(2, 3)], 9: [(2, 0)], 11: [(2, 1)], 12: [(1, 3)], 13: [(1, 0)], 14: [(0, 3)],
}
# saddles, keyed by (case, center at or above level)
_SADDLES = {
    (5, True): [(0, 1), (2, 3)], (5, False): [(3, 0), (1, 2)],
    (10, True): [(3, 0), (1, 2)], (10, False): [(0, 1), (2, 3)],
}


def _edge_key(i: int, j: int, edge: int) -> tuple:
    if edge == 0:
        return ("h", i, j)
    if edge == 1:
        return ("v", i, j + 1)
    if edge == 2:
        return ("h", i + 1, j)
    return ("v", i, j)


def _edge_point(raster: Raster, key: tuple, level: float) -> tuple:
    kind, i, j = key
    v = raster.values
    if kind == "h":
        v0, v1 = v[i, j], v[i, j + 1]
        t = min(1.0, max(0.0, (level - v0) / (v1 - v0)))
        return (raster.x[j] + t * (raster.x[j + 1] - raster.x[j]), raster.y[i])
    v0, v1 = v[i, j], v[i + 1, j]
    t = min(1.0, max(0.0, (level - v0) / (v1 - v0)))
    return (raster.x[j], raster.y[i] + t * (raster.y[i + 1] - raster.y[i]))


def extract_contour(raster, level: float) -> ContourSet:
    """Polylines where the field crosses ``level``.

    Crossing points are linearly interpolated along cell edges; ambiguous
    (saddle) cells are resolved by comparing the mean of the four corners
    with the level. A plain 2-D array is accepted with index coordinates.
    """
    if not isinstance(raster, Raster):
        values = np.asarray(raster, dtype=float)
        raster = Raster(np.arange(values.shape[1]), np.arange(values.shape[0]), values)
    v = raster.values
    if not np.isfinite(v).all():
        raise ValueError("field contains non-finite values")
    above = v >= level
    case = (above[:-1, :-1] * 1 + above[:-1, 1:] * 2 + above[1:, 1:] * 4 + above[1:, :-1] * 8)

    segments: list[tuple] = []
    for i, j in zip(*np.nonzero((case > 0) & (case < 15))):
        c = int(case[i, j])
        if c in (5, 10):
            center = v[i:i + 2, j:j + 2].mean() >= level
            pairs = _SADDLES[(c, bool(center))]
        else:
            pairs = _SEGMENTS[c]
        for e0, e1 in pairs:
            segments.append((_edge_key(i, j, e0), _edge_key(i, j, e1)))
    return ContourSet(level, *_stitch(raster, segments, level))


def _stitch(raster: Raster, segments: list, level: float):
    incident: dict = {}
    for n, (k0, k1) in enumerate(segments):
        incident.setdefault(k0, []).append(n)
        incident.setdefault(k1, []).append(n)

    used = [False] * len(segments)

    def walk(start_seg: int, start_key: tuple) -> list:
        keys = [start_key]
        seg, key = start_seg, start_key
        while True:
            used[seg] = True
            k0, k1 = segments[seg]
            key = k1 if key == k0 else k0
            keys.append(key)
            nxt = [s for s in incident[key] if not used[s]]
            if not nxt:
                return keys
            seg = nxt[0]

    chains = []
    # open chains first, starting from their free ends
    for n, (k0, k1) in enumerate(segments):
        if used[n]:
            continue
        for key in (k0, k1):
            if len(incident[key]) == 1:
                chains.append((walk(n, key), False))
                break
    for n, (k0, _) in enumerate(segments):
        if not used[n]:
            keys = walk(n, k0)
            chains.append((keys, keys[0] == keys[-1]))

    polylines, closed = [], []
    for keys, is_closed in chains:
        polylines.append(np.array([_edge_point(raster, k, level) for k in keys]))
        closed.append(bool(is_closed))
    return polylines, closed


def level_lines(raster: Raster, fractions=(0.2, 0.5, 0.8)) -> list[ContourSet]:
    """Contours at fractions of the raster maximum."""
    peak = raster.max
    return [extract_contour(raster, f * peak) for f in fractions]


def decision_boundary_2d(model: ClassifierModel, resolution: int = DEFAULT_RESOLUTION) -> ContourSet:
    """Zero set of ``u_1 - u_2`` for a planar two-class model."""
    if model.n_classes != 2:
        raise WrongClassCount(f"decision boundary needs 2 classes, got {model.n_classes}")
    s = model.signal
    diff = Signal(s.centers, s.coefficients[:, [0]] - s.coefficients[:, [1]], s.config,
                  s.fitted_values[:, [0]] - s.fitted_values[:, [1]])
    return extract_contour(field_on_grid(diff, resolution), 0.0)


def region_boundaries(model: ClassifierModel, resolution: int = DEFAULT_RESOLUTION) -> list[ContourSet]:
    """For each class, the zero set of its signal minus the strongest competitor."""
    if model.dim != 2:
        raise DimensionMismatch("region boundaries need a planar model")
    axis = cell_centers(resolution)
    xx, yy = np.meshgrid(axis, axis)
    values = evaluate_signal(model.signal, np.column_stack([xx.ravel(), yy.ravel()]))
    out = []
    for l in range(model.n_classes):
        others = np.delete(values, l, axis=1).max(axis=1)
        margin = (values[:, l] - others).reshape(resolution, resolution)
        out.append(extract_contour(Raster(axis, axis, margin), 0.0))
    return out
