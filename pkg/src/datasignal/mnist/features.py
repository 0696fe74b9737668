"""Unit-norm feature vectors and exact nearest-neighbor retrieval."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, InsufficientClassMembers, ZeroImage
from .idx import MnistSet

N_CLASSES = 10
# candidates whose expanded squared distance is within this of the k-th best
# are re-ranked with directly computed distances
_RERANK_SLACK = 1e-9
_NORMALIZE_BLOCK = 16384
_QUERY_BLOCK = 64


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    vectors: np.ndarray          # (count, 784) float64, unit rows
    labels: np.ndarray
    source_index: np.ndarray
    variant: np.ndarray

    def __len__(self):
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def normalize(data: MnistSet) -> FeatureMatrix:
    """Flatten and scale every image to unit Euclidean norm."""
    n = len(data)
    flat = data.images.reshape(n, -1)
    vectors = np.empty(flat.shape, dtype=np.float64)
    for start in range(0, n, _NORMALIZE_BLOCK):
        block = flat[start:start + _NORMALIZE_BLOCK].astype(np.float64)
        norms = np.sqrt(np.einsum("ij,ij->i", block, block))
        zero = np.flatnonzero(norms == 0)
        if zero.size:
            raise ZeroImage(f"image {start + zero[0]} is blank and cannot be normalized")
        vectors[start:start + len(block)] = block / norms[:, None]
    vectors.setflags(write=False)
    return FeatureMatrix(vectors, data.labels, data.source_index, data.variant)


@dataclass(frozen=True, eq=False)
class LocalProblem:
    """The k nearest training vectors of every class around one query.

    Rows are grouped by class (class 0 first), nearest first within a class.
    """

    query: np.ndarray
    candidates: np.ndarray
    candidate_labels: np.ndarray
    candidate_indices: np.ndarray
    distances: np.ndarray

    @property
    def one_hot(self) -> np.ndarray:
        out = np.zeros((len(self.candidate_labels), N_CLASSES))
        out[np.arange(len(out)), self.candidate_labels] = 1.0
        return out


def _exact_distances(vectors: np.ndarray, rows: np.ndarray, query: np.ndarray) -> np.ndarray:
    diff = vectors[rows] - query
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def _rank(vectors, rows, approx_sq, query, k):
    """The ``k`` best of ``rows`` by exact distance, ties to the lower index."""
    if len(rows) > k:
        kth = np.partition(approx_sq, k - 1)[k - 1]
        keep = approx_sq <= kth + _RERANK_SLACK
        rows = rows[keep]
    dist = _exact_distances(vectors, rows, query)
    order = np.lexsort((rows, dist))[:k]
    return rows[order], dist[order]


class NeighborIndex:
    """Exact search over a fixed FeatureMatrix.

    Distances are screened in blocks with a matrix product and the short
    list is re-ranked with directly computed distances, so results do not
    depend on BLAS blocking or threading.
    """

    def __init__(self, train: FeatureMatrix):
        self.train = train
        self.sq_norms = np.einsum("ij,ij->i", train.vectors, train.vectors)
        self.class_rows = [np.flatnonzero(train.labels == c) for c in range(N_CLASSES)]

    def _check(self, queries: np.ndarray) -> np.ndarray:
        queries = np.asarray(queries, dtype=np.float64)
        if queries.ndim == 1:
            queries = queries[None, :]
        if queries.ndim != 2 or queries.shape[1] != self.train.dim:
            raise DimensionMismatch(
                f"queries of width {queries.shape[-1]}, training vectors of width {self.train.dim}")
        return queries

    def _approx_sq(self, queries: np.ndarray) -> np.ndarray:
        q_sq = np.einsum("ij,ij->i", queries, queries)
        out = queries @ self.train.vectors.T
        out *= -2.0
        out += self.sq_norms[None, :]
        out += q_sq[:, None]
        return out

    def per_class(self, queries, k: int = 5) -> list[LocalProblem]:
        queries = self._check(queries)
        for c, rows in enumerate(self.class_rows):
            if len(rows) < k:
                raise InsufficientClassMembers(f"class {c} has {len(rows)} members, need {k}")
        out = []
        for start in range(0, len(queries), _QUERY_BLOCK):
            block = queries[start:start + _QUERY_BLOCK]
            approx = self._approx_sq(block)
            for q, row_sq in zip(block, approx):
                idx, dist = [], []
                for rows in self.class_rows:
                    r, d = _rank(self.train.vectors, rows, row_sq[rows], q, k)
                    idx.append(r)
                    dist.append(d)
                idx = np.concatenate(idx)
                out.append(LocalProblem(q, self.train.vectors[idx], self.train.labels[idx].astype(int),
                                        idx, np.concatenate(dist)))
        return out

    def nearest(self, queries) -> tuple[np.ndarray, np.ndarray]:
        """Index and distance of the single nearest training vector per query."""
        queries = self._check(queries)
        all_rows = np.arange(len(self.train))
        idx = np.empty(len(queries), dtype=np.int64)
        dist = np.empty(len(queries))
        for start in range(0, len(queries), _QUERY_BLOCK):
            block = queries[start:start + _QUERY_BLOCK]
            approx = self._approx_sq(block)
            for j, (q, row_sq) in enumerate(zip(block, approx)):
                r, d = _rank(self.train.vectors, all_rows, row_sq, q, 1)
                idx[start + j], dist[start + j] = r[0], d[0]
        return idx, dist


def knn_per_class(train: FeatureMatrix, query, k: int = 5,
                  index: NeighborIndex | None = None) -> LocalProblem:
    index = index or NeighborIndex(train)
    return index.per_class(query, k)[0]


def nn_baseline(train: FeatureMatrix, query, index: NeighborIndex | None = None) -> int:
    """Label of the nearest training vector."""
    index = index or NeighborIndex(train)
    idx, _ = index.nearest(query)
    return int(train.labels[idx[0]])
