"""Training-set expansion: small rotations and shifts of each digit image."""
from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from .idx import MnistSet

ROTATIONS = (10.0, -10.0)
SHIFTS = ((2, 0), (-2, 0), (0, 2), (0, -2))   # (columns, rows)
VARIANTS = ("orig", "rot+10", "rot-10", "dx+2", "dx-2", "dy+2", "dy-2")


def rotate_images(images: np.ndarray, degrees: float) -> np.ndarray:
    """Rotate counterclockwise (as displayed) about the image center.

    Bilinear resampling, zero outside the frame, rounded back to bytes.
    """
    images = np.asarray(images)
    n, rows, cols = images.shape
    theta = math.radians(degrees)
    c, s = math.cos(theta), math.sin(theta)
    # output (row, col) -> input (row, col), rows pointing down
    rot = np.array([[c, s], [-s, c]])
    center = np.array([(rows - 1) / 2, (cols - 1) / 2])
    matrix = np.eye(3)
    matrix[1:, 1:] = rot
    offset = np.concatenate([[0.0], center - rot @ center])
    out = ndimage.affine_transform(images.astype(np.float64), matrix, offset=offset,
                                   order=1, mode="grid-constant", cval=0.0, prefilter=False)
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def shift_images(images: np.ndarray, dx: int, dy: int) -> np.ndarray:
    """Move content ``dx`` columns right and ``dy`` rows down, zero fill."""
    images = np.asarray(images)
    out = np.zeros_like(images)
    _, rows, cols = images.shape
    src_r = slice(max(0, -dy), rows - max(0, dy))
    dst_r = slice(max(0, dy), rows - max(0, -dy))
    src_c = slice(max(0, -dx), cols - max(0, dx))
    dst_c = slice(max(0, dx), cols - max(0, -dx))
    out[:, dst_r, dst_c] = images[:, src_r, src_c]
    return out


def augment(data: MnistSet) -> MnistSet:
    """Original images plus 2 rotations and 4 shifts of each; 7x the input.

    Variants are not composed. The output is grouped by variant (all
    originals first, in input order), so index ``i < len(data)`` is still
    the i-th input image.
    """
    blocks = [data.images]
    blocks += [rotate_images(data.images, deg) for deg in ROTATIONS]
    blocks += [shift_images(data.images, dx, dy) for dx, dy in SHIFTS]
    n = len(data)
    return MnistSet(
        np.concatenate(blocks),
        np.tile(data.labels, len(blocks)),
        np.tile(data.source_index, len(blocks)),
        np.repeat(np.arange(len(blocks), dtype=np.uint8), n),
    )
