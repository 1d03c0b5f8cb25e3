"""Sample container and validation.

A Sample is an N x d matrix of finite reals, one observation per row.
Scalar samples have d = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataQualityError, DimensionMismatchError


@dataclass(frozen=True)
class Sample:
    data: np.ndarray  # shape (n, dim), float64, all finite

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    @property
    def is_scalar(self) -> bool:
        return self.dim == 1


def as_sample(x) -> Sample:
    """Coerce array-like input (1-D or 2-D) to a validated Sample.

    1-D input is treated as a scalar sample (column vector).
    """
    if isinstance(x, Sample):
        return x
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DataQualityError(f"sample must be 1-D or 2-D, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DataQualityError(f"sample must have n >= 1 and dim >= 1, got shape {arr.shape}")
    finite = np.isfinite(arr)
    if not finite.all():
        bad_row = int(np.argwhere(~finite)[0, 0])
        raise DataQualityError(f"non-finite value in sample at row {bad_row}")
    return Sample(arr)


def check_same_n(x: Sample, y: Sample) -> int:
    if x.n != y.n:
        raise DimensionMismatchError(
            f"samples must have equal observation counts, got {x.n} and {y.n}"
        )
    return x.n
