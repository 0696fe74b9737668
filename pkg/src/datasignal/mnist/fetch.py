"""Download-once cache for the four MNIST files."""
from __future__ import annotations

import gzip
import hashlib
import logging
import os
import urllib.error
import urllib.request
from pathlib import Path

from ..errors import ChecksumMismatch, NetworkError

log = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://ossci-datasets.s3.amazonaws.com/mnist/"
CACHE_ENV = "DATASIGNAL_CACHE"

# name -> (uncompressed length, sha256 of the uncompressed file)
FILES = {
    "train-images-idx3-ubyte": (
        47_040_016, "ba891046e6505d7aadcbbe25680a0738ad16aec93bde7f9b65e87a2fc25776db"),
    "train-labels-idx1-ubyte": (
        60_008, "65a50cbbf4e906d70832878ad85ccda5333a97f0f4c3dd2ef09a8a9eef7101c5"),
    "t10k-images-idx3-ubyte": (
        7_840_016, "0fa7898d509279e482958e8ce81c8e77db3f2f8254e26661ceb7762c4d494ce7"),
    "t10k-labels-idx1-ubyte": (
        10_008, "ff7bcfd416de33731a308c3f266cc351222c34898ecbeaf847f06e48f7ec33f2"),
}
KEYS = {
    "train_images": "train-images-idx3-ubyte",
    "train_labels": "train-labels-idx1-ubyte",
    "test_images": "t10k-images-idx3-ubyte",
    "test_labels": "t10k-labels-idx1-ubyte",
}


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "datasignal" / "mnist"


def _valid(path: Path, name: str) -> bool:
    length, digest = FILES[name]
    if not path.is_file() or path.stat().st_size != length:
        return False
    return hashlib.sha256(path.read_bytes()).hexdigest() == digest


def _download(url: str, timeout: float) -> bytes:
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            return response.read()
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise NetworkError(f"cannot download {url}: {exc}") from exc


def fetch_mnist(cache_dir=None, base_url: str = DEFAULT_BASE_URL,
                timeout: float = 30.0) -> dict[str, Path]:
    """Return paths of the four uncompressed IDX files, downloading any missing.

    A warm cache is verified (length and SHA-256) and never touches the
    network. Downloads fetch ``<base_url><name>.gz``.
    """
    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    paths = {}
    for key, name in KEYS.items():
        path = cache / name
        if not _valid(path, name):
            url = base_url.rstrip("/") + "/" + name + ".gz"
            log.info("downloading %s", url)
            payload = _download(url, timeout)
            try:
                payload = gzip.decompress(payload)
            except (OSError, EOFError) as exc:
                raise ChecksumMismatch(f"{url} is not a valid gzip stream") from exc
            length, digest = FILES[name]
            if len(payload) != length:
                raise ChecksumMismatch(f"{name}: {len(payload)} bytes, expected {length}")
            if hashlib.sha256(payload).hexdigest() != digest:
                raise ChecksumMismatch(f"{name}: SHA-256 mismatch")
            cache.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".part")
            tmp.write_bytes(payload)
            tmp.replace(path)
        paths[key] = path
    return paths
