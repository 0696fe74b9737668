"""Slow reference implementations the library is checked against.

None of these call into datasignal or LAPACK.
"""
import math

import numpy as np


def gram_loop(points, gamma=1.0):
    m = len(points)
    out = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            out[i, j] = math.exp(-2 * math.pi * math.dist(points[i], points[j]) / gamma)
    return out


def gauss_solve(a, b):
    """Gaussian elimination with partial pivoting, column by column."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    if b.ndim == 1:
        b = b[:, None]
    n = len(a)
    aug = np.hstack([a, b])
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(aug[col:, col])))
        aug[[col, pivot]] = aug[[pivot, col]]
        for row in range(col + 1, n):
            factor = aug[row, col] / aug[col, col]
            aug[row, col:] -= factor * aug[col, col:]
    x = np.zeros_like(b)
    for row in range(n - 1, -1, -1):
        x[row] = (aug[row, n:] - aug[row, row + 1:n] @ x[row + 1:]) / aug[row, row]
    return x


def naive_fit(points, values, alpha, gamma=1.0):
    system = gram_loop(points, gamma) + alpha * np.eye(len(points))
    return gauss_solve(system, values)


def direct_sum(points, coefficients, queries, gamma=1.0):
    """u(z) = sum_j lam_j exp(-2 pi |z - x_j| / gamma), one query at a time."""
    coefficients = np.asarray(coefficients, dtype=float).reshape(len(points), -1)
    out = np.zeros((len(queries), coefficients.shape[1]))
    for q, z in enumerate(queries):
        for x, lam in zip(points, coefficients):
            out[q] += lam * math.exp(-2 * math.pi * math.dist(z, x) / gamma)
    return out


def per_class_neighbors_scan(vectors, labels, query, k):
    """Sort every training row by (distance, index) and keep k per class."""
    dist = [math.sqrt(float(np.sum((v - query) ** 2))) for v in vectors]
    order = sorted(range(len(vectors)), key=lambda i: (dist[i], i))
    picked = {c: [] for c in range(10)}
    for i in order:
        c = int(labels[i])
        if len(picked[c]) < k:
            picked[c].append(i)
    return [i for c in range(10) for i in picked[c]]


def nearest_scan(vectors, query, chunk=8192):
    """1-NN by direct differences over row chunks; lowest index wins ties."""
    best, best_d = -1, math.inf
    for start in range(0, len(vectors), chunk):
        diff = vectors[start:start + chunk] - query
        d = np.sqrt((diff * diff).sum(axis=1))
        j = int(np.argmin(d))
        if d[j] < best_d:
            best, best_d = start + j, float(d[j])
    return best, best_d
