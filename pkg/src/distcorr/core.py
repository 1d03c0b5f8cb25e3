"""Empirical distance covariance/correlation and Pearson correlation.

Two evaluation strategies are provided for the squared distance covariance:

* a matrix-materializing path that builds the N x N double-centered
  distance matrices explicitly, and
* a streaming path that makes two passes over row blocks and never holds
  more than O(block * N) floats, for large N.

``dcov_sq`` picks between them automatically based on a memory budget.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DataQualityError
from .samples import Sample, as_sample, check_same_n

# Auto-dispatch threshold: materialize N x N matrices only if they fit.
DEFAULT_MEMORY_BUDGET = 1 << 30  # 1 GiB

# Rows per block in the streaming path.  Fixed by configuration, not by
# scheduling, so results are deterministic.
STREAM_BLOCK_ROWS = 512


@dataclass(frozen=True)
class DistanceMatrix:
    """Pairwise Euclidean distances: symmetric, zero diagonal."""

    entries: np.ndarray
    n: int


@dataclass(frozen=True)
class CenteredMatrix:
    """Double-centered distance matrix with its centering means cached."""

    entries: np.ndarray
    n: int
    row_mean: np.ndarray
    col_mean: np.ndarray
    grand_mean: float


@dataclass(frozen=True)
class PairStats:
    """Computed statistics for one (x, y) pair."""

    n: int
    dcov_sq: float
    dvar_x: float
    dvar_y: float
    dcor: float
    pearson: float | None  # only when both samples are scalar


def pairwise_distances(x) -> DistanceMatrix:
    """Euclidean distance matrix of a sample's rows."""
    s = as_sample(x)
    d = cdist(s.data, s.data)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(entries=d, n=s.n)


def double_center(d: DistanceMatrix) -> CenteredMatrix:
    """A_kl = a_kl - rowmean_k - colmean_l + grandmean."""
    a = d.entries
    row = a.mean(axis=1)
    col = a.mean(axis=0)
    grand = float(row.mean())
    centered = a - row[:, None] - col[None, :] + grand
    return CenteredMatrix(
        entries=centered, n=d.n, row_mean=row, col_mean=col, grand_mean=grand
    )


def _clamp_nonnegative(val: float, scale: float) -> float:
    if val < -1e-12 * max(scale, 1.0):
        raise DataQualityError(
            f"distance covariance came out significantly negative ({val}); "
            "this indicates corrupted input or an internal error"
        )
    return max(val, 0.0)


def dcov_sq_materialized(x, y) -> float:
    """Squared empirical distance covariance via explicit centered matrices."""
    xs, ys = as_sample(x), as_sample(y)
    n = check_same_n(xs, ys)
    a = double_center(pairwise_distances(xs)).entries
    b = double_center(pairwise_distances(ys)).entries
    prod = a * b
    val = float(prod.sum()) / (n * n)
    scale = float(np.abs(prod).mean())
    return _clamp_nonnegative(val, scale)


def dcov_sq_streaming(x, y, block_rows: int = STREAM_BLOCK_ROWS) -> float:
    """Squared empirical distance covariance in O(block * N) memory.

    Pass 1 accumulates the row means and grand means of both distance
    matrices; pass 2 recomputes distances blockwise and accumulates
    sum(A_kl * B_kl) without ever materializing an N x N matrix.
    """
    xs, ys = as_sample(x), as_sample(y)
    n = check_same_n(xs, ys)

    a_row = np.empty(n)
    b_row = np.empty(n)
    for i0 in range(0, n, block_rows):
        i1 = min(i0 + block_rows, n)
        a_row[i0:i1] = cdist(xs.data[i0:i1], xs.data).mean(axis=1)
        b_row[i0:i1] = cdist(ys.data[i0:i1], ys.data).mean(axis=1)
    a_grand = float(a_row.mean())
    b_grand = float(b_row.mean())

    total = 0.0
    abs_total = 0.0
    for i0 in range(0, n, block_rows):
        i1 = min(i0 + block_rows, n)
        da = cdist(xs.data[i0:i1], xs.data)
        db = cdist(ys.data[i0:i1], ys.data)
        # distance matrices are symmetric, so column means equal row means
        a_blk = da - a_row[i0:i1, None] - a_row[None, :] + a_grand
        b_blk = db - b_row[i0:i1, None] - b_row[None, :] + b_grand
        prod = a_blk * b_blk
        total += float(prod.sum())
        abs_total += float(np.abs(prod).sum())

    val = total / (n * n)
    return _clamp_nonnegative(val, abs_total / (n * n))


def dcov_sq(x, y, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> float:
    """Squared empirical distance covariance, Eq.-(4)-style.

    Materializes the N x N matrices when they fit in ``memory_budget``
    bytes, otherwise falls back to the streaming path.
    """
    xs = as_sample(x)
    if 8 * xs.n * xs.n <= memory_budget:
        return dcov_sq_materialized(xs, y)
    return dcov_sq_streaming(xs, y)


def dcor(x, y, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PairStats:
    """Distance correlation plus the underlying covariance/variance terms.

    The degenerate convention applies: if either distance variance is
    zero, the correlation is 0.  Pearson is filled only for scalar pairs
    (and left as None there too if either side is constant).
    """
    xs, ys = as_sample(x), as_sample(y)
    n = check_same_n(xs, ys)
    vxy = dcov_sq(xs, ys, memory_budget)
    dvar_x = np.sqrt(dcov_sq(xs, xs, memory_budget))
    dvar_y = np.sqrt(dcov_sq(ys, ys, memory_budget))
    if dvar_x <= 0.0 or dvar_y <= 0.0:
        r = 0.0
    else:
        r = float(np.sqrt(vxy) / np.sqrt(dvar_x * dvar_y))
        if r > 1.0 + 1e-12:
            raise DataQualityError(f"distance correlation exceeded 1 by too much: {r}")
        r = min(r, 1.0)
    p = None
    if xs.is_scalar and ys.is_scalar and n >= 2 and not (_is_constant(xs) or _is_constant(ys)):
        p = pearson(xs, ys)
    return PairStats(
        n=n, dcov_sq=vxy, dvar_x=float(dvar_x), dvar_y=float(dvar_y), dcor=r, pearson=p
    )


def _is_constant(s: Sample) -> bool:
    return bool(np.all(s.data == s.data[0]))


def pearson(x, y) -> float:
    """Empirical Pearson correlation of two scalar samples.

    Raises DegenerateVarianceError for constant input: the formula
    divides by zero there and no convention is adopted (unlike dcor,
    which has an explicit degenerate-case rule of 0).
    """
    from .errors import DegenerateVarianceError

    xs, ys = as_sample(x), as_sample(y)
    n = check_same_n(xs, ys)
    if not (xs.is_scalar and ys.is_scalar):
        raise DataQualityError("pearson requires scalar samples (dim = 1)")
    if n < 2:
        raise DegenerateVarianceError("pearson requires at least 2 observations")
    xd = xs.data[:, 0] - xs.data[:, 0].mean()
    yd = ys.data[:, 0] - ys.data[:, 0].mean()
    sx = float(np.sqrt(np.sum(xd * xd)))
    sy = float(np.sqrt(np.sum(yd * yd)))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateVarianceError("pearson is undefined for constant samples")
    r = float(np.sum(xd * yd)) / (sx * sy)
    return float(np.clip(r, -1.0, 1.0))
