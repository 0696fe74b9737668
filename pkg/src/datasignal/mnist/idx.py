"""IDX containers (the MNIST distribution format).

Big-endian header: a 4-byte magic number (0x00000803 for 3-D unsigned
byte tensors, 0x00000801 for byte vectors) followed by one 4-byte size per
dimension, then the raw payload. Gzipped files are read transparently.
"""
from __future__ import annotations

import gzip
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import BadMagic, DimensionMismatch, IdxFormatError, IoError, TruncatedFile

IMAGE_MAGIC = 0x00000803
LABEL_MAGIC = 0x00000801


@dataclass(frozen=True, eq=False)
class MnistSet:
    """Byte images (count x 28 x 28) with digit labels.

    ``source_index`` and ``variant`` record where each image came from when
    the set was produced by augmentation.
    """

    images: np.ndarray
    labels: np.ndarray
    source_index: np.ndarray | None = None
    variant: np.ndarray | None = None

    def __post_init__(self):
        images = np.asarray(self.images, dtype=np.uint8)
        labels = np.asarray(self.labels, dtype=np.uint8)
        if images.ndim != 3 or labels.ndim != 1 or images.shape[0] != labels.shape[0]:
            raise DimensionMismatch(
                f"{images.shape[0] if images.ndim else 0} images vs {labels.shape[0]} labels")
        if labels.size and labels.max() > 9:
            raise IdxFormatError("labels must be digits 0-9")
        n = len(labels)
        src = np.arange(n) if self.source_index is None else np.asarray(self.source_index)
        var = np.zeros(n, dtype=np.uint8) if self.variant is None else np.asarray(self.variant)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "source_index", src)
        object.__setattr__(self, "variant", var)

    def __len__(self):
        return len(self.labels)

    def head(self, n: int) -> "MnistSet":
        return MnistSet(self.images[:n], self.labels[:n], self.source_index[:n], self.variant[:n])


def _read_bytes(path) -> bytes:
    try:
        raw = Path(path).read_bytes()
        if raw[:2] == b"\x1f\x8b":
            raw = gzip.decompress(raw)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return raw


def parse_idx(raw: bytes, magic: int) -> np.ndarray:
    if len(raw) < 4:
        raise TruncatedFile("file shorter than the IDX magic number")
    (found,) = struct.unpack(">I", raw[:4])
    if found != magic:
        raise BadMagic(f"magic 0x{found:08x}, expected 0x{magic:08x}")
    ndim = magic & 0xFF
    header = 4 + 4 * ndim
    if len(raw) < header:
        raise TruncatedFile("IDX header is truncated")
    shape = struct.unpack(f">{ndim}I", raw[4:header])
    expected = int(np.prod(shape, dtype=np.int64))
    payload = len(raw) - header
    if payload < expected:
        raise TruncatedFile(f"payload has {payload} bytes, header promises {expected}")
    if payload > expected:
        raise IdxFormatError(f"{payload - expected} unexpected trailing bytes")
    return np.frombuffer(raw, dtype=np.uint8, offset=header).reshape(shape)


def load_idx_images(path) -> np.ndarray:
    return parse_idx(_read_bytes(path), IMAGE_MAGIC)


def load_idx_labels(path) -> np.ndarray:
    return parse_idx(_read_bytes(path), LABEL_MAGIC)


def load_mnist(images_path, labels_path) -> MnistSet:
    images = load_idx_images(images_path)
    labels = load_idx_labels(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise DimensionMismatch(f"{images.shape[0]} images but {labels.shape[0]} labels")
    return MnistSet(images, labels)


def idx_bytes(array: np.ndarray) -> bytes:
    """Serialize a uint8 array (1-D labels or 3-D images) as IDX."""
    array = np.ascontiguousarray(array, dtype=np.uint8)
    magic = {1: LABEL_MAGIC, 3: IMAGE_MAGIC}[array.ndim]
    return struct.pack(f">I{array.ndim}I", magic, *array.shape) + array.tobytes()
