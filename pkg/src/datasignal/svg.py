"""Minimal deterministic SVG 1.1 writer for planar figures.

The drawing area is fixed to [-1.1, 1.1]^2 with y pointing up. Each
contour set becomes one ``<path>`` element; data points are ``<circle>``
elements and reference outlines dashed ``<polyline>`` elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .contour import ContourSet
from .errors import IoError

VIEW = 1.1
SIZE_PX = 480
BLUE = "#1f4fd8"
MAGENTA = "#d01fb0"
CLASS_COLORS = (BLUE, MAGENTA, "#1c9a3c", "#e07b00", "#7a3fc2", "#0f9fa8")


def _f(v: float) -> str:
    # round before adding 0.0 so tiny negatives do not print as -0.0000
    return f"{round(float(v), 4) + 0.0:.4f}"


def _xy(p) -> str:
    return f"{_f(p[0])},{_f(-p[1])}"


def gray_for(fraction: float) -> str:
    """Darker strokes for higher levels."""
    g = int(round(200 * (1.0 - min(max(fraction, 0.0), 1.0))))
    return f"#{g:02x}{g:02x}{g:02x}"


@dataclass
class Figure:
    title: str = ""
    points: list = field(default_factory=list)      # (xy array, color, radius)
    contours: list = field(default_factory=list)    # (ContourSet, stroke, width)
    outlines: list = field(default_factory=list)    # polyline arrays, dashed black
    markers: list = field(default_factory=list)     # (xy, color, radius)

    def add_points(self, xy, colors, radius=0.012):
        xy = np.asarray(xy, dtype=float).reshape(-1, 2)
        if isinstance(colors, str):
            colors = [colors] * len(xy)
        for p, c in zip(xy, colors):
            self.points.append((p, c, radius))

    def add_contour(self, contour: ContourSet, stroke="#000000", width=0.008):
        self.contours.append((contour, stroke, width))


def render_svg(figure: Figure) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE_PX}" '
        f'height="{SIZE_PX}" viewBox="{_f(-VIEW)} {_f(-VIEW)} {_f(2 * VIEW)} {_f(2 * VIEW)}">',
    ]
    if figure.title:
        out.append(f"<title>{_escape(figure.title)}</title>")
    out.append('<g id="axes" fill="none" stroke="#bbbbbb" stroke-width="0.004">')
    out.append('<rect x="-1.0000" y="-1.0000" width="2.0000" height="2.0000"/>')
    out.append('<line x1="-1.0000" y1="0.0000" x2="1.0000" y2="0.0000"/>')
    out.append('<line x1="0.0000" y1="-1.0000" x2="0.0000" y2="1.0000"/>')
    out.append("</g>")
    if figure.points:
        out.append('<g id="data" stroke="none">')
        for p, color, r in figure.points:
            out.append(f'<circle cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(r)}" fill="{color}"/>')
        out.append("</g>")
    if figure.outlines:
        out.append('<g id="reference" fill="none" stroke="#000000" stroke-width="0.006" '
                   'stroke-dasharray="0.03,0.02">')
        for line in figure.outlines:
            out.append('<polyline points="' + " ".join(_xy(p) for p in line) + '"/>')
        out.append("</g>")
    if figure.contours:
        out.append('<g id="contours" fill="none" stroke-linejoin="round">')
        for contour, stroke, width in figure.contours:
            out.append(f'<path stroke="{stroke}" stroke-width="{_f(width)}" '
                       f'data-level="{contour.level:.6g}" d="{_path_data(contour)}"/>')
        out.append("</g>")
    if figure.markers:
        out.append('<g id="markers" stroke="#000000" stroke-width="0.006">')
        for p, color, r in figure.markers:
            out.append(f'<circle cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(r)}" fill="{color}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _path_data(contour: ContourSet) -> str:
    parts = []
    for line, closed in zip(contour.polylines, contour.closed):
        pts = line[:-1] if closed else line
        d = "M" + " L".join(_xy(p) for p in pts)
        parts.append(d + (" Z" if closed else ""))
    return " ".join(parts)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg(figure: Figure, path) -> Path:
    path = Path(path)
    try:
        path.write_text(render_svg(figure), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path
