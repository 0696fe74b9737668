import os
import re
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from datasignal.contour import ContourSet
from datasignal.errors import IoError
from datasignal.figures import build_figure
from datasignal.svg import Figure, emit_svg, gray_for, render_svg

NS = "{http://www.w3.org/2000/svg}"
GOLDEN = Path(__file__).parent / "data" / "disk-m16-r64.svg"


def _parse(text):
    return ET.fromstring(text.encode("utf-8"))


def test_empty_figure_has_axes_only():
    root = _parse(render_svg(Figure()))
    assert root.tag == NS + "svg"
    assert root.get("viewBox") == "-1.1000 -1.1000 2.2000 2.2000"
    assert [g.get("id") for g in root.iter(NS + "g")] == ["axes"]
    assert not list(root.iter(NS + "path"))


def test_one_contour_one_path():
    fig = Figure()
    fig.add_contour(ContourSet(0.5, [np.array([[0.0, 0.0], [0.5, 0.5]])], [False]))
    paths = list(_parse(render_svg(fig)).iter(NS + "path"))
    assert len(paths) == 1
    assert paths[0].get("d") == "M0.0000,0.0000 L0.5000,-0.5000"


def test_closed_polyline_uses_close_command():
    square = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], dtype=float)
    fig = Figure()
    fig.add_contour(ContourSet(1.0, [square], [True]))
    d = next(_parse(render_svg(fig)).iter(NS + "path")).get("d")
    assert d.endswith("Z") and d.count("L") == 3


def test_y_axis_points_up():
    fig = Figure()
    fig.add_points([[0.25, 0.75]], "#000000")
    circle = next(_parse(render_svg(fig)).iter(NS + "circle"))
    assert (circle.get("cx"), circle.get("cy")) == ("0.2500", "-0.7500")


def test_no_negative_zero():
    fig = Figure()
    fig.add_points([[0.0, 0.0], [-1e-9, 1e-9]], "#000000")
    assert "-0.0000" not in render_svg(fig)


def test_title_escaped():
    assert "<title>a &lt; b</title>" in render_svg(Figure(title="a < b"))


def test_gray_levels_darken():
    assert gray_for(0.2) > gray_for(0.5) > gray_for(0.8)


def test_emit_writes_file(tmp_path):
    path = emit_svg(Figure(), tmp_path / "f.svg")
    assert path.read_bytes() == render_svg(Figure()).encode("utf-8")


def test_emit_to_missing_directory(tmp_path):
    with pytest.raises(IoError):
        emit_svg(Figure(), tmp_path / "nope" / "f.svg")


def test_golden_snapshot():
    text = render_svg(build_figure("disk-m16", alpha=1.0, resolution=64))
    if os.environ.get("DATASIGNAL_REGEN_GOLDEN") == "1":
        GOLDEN.parent.mkdir(exist_ok=True)
        GOLDEN.write_text(text, encoding="utf-8", newline="\n")
    assert text == GOLDEN.read_text(encoding="utf-8")


def test_disk_figure_structure():
    root = _parse(render_svg(build_figure("disk-m16", resolution=64)))
    paths = list(root.iter(NS + "path"))
    assert len(paths) == 3
    levels = [float(p.get("data-level")) for p in paths]
    assert levels == sorted(levels)
    assert len(list(root.iter(NS + "circle"))) == 256
    assert len(list(root.iter(NS + "polyline"))) == 1


def test_figure_numbers_have_four_decimals():
    text = render_svg(build_figure("circle-segments-k1", resolution=48))
    coords = re.findall(r'(?:cx|cy|r)="([^"]+)"', text)
    assert coords and all(re.fullmatch(r"-?\d+\.\d{4}", c) for c in coords)
