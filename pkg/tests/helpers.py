"""Measurements shared by the contour and acceptance tests."""
import numpy as np

from datasignal.contour import field_on_grid


def raster_agreement(signal, shape, resolution=128):
    """Fraction of raster cells where ``u >= 0.5 * max`` agrees with membership in ``shape``."""
    raster = field_on_grid(signal, resolution)
    predicted = raster.values.ravel() >= 0.5 * raster.max
    return float(np.mean(predicted == shape.contains(raster.points)))


def inside_polygon(points, polygon):
    """Even-odd ray casting against a closed polyline."""
    points = np.asarray(points, dtype=float)
    x, y = points[:, 0], points[:, 1]
    inside = np.zeros(len(points), dtype=bool)
    for (x0, y0), (x1, y1) in zip(polygon[:-1], polygon[1:]):
        crosses = (y0 > y) != (y1 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        inside ^= crosses & (x < xc)
    return inside
