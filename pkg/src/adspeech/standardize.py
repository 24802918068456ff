"""z-score standardization fit on training rows only."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STD_GUARD = 1e-12


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.mean)


def fit(rows: np.ndarray) -> Standardizer:
    """Per-dimension mean and population std over the rows.

    Any std below 1e-12 is replaced by 1 so that zero-variance columns pass
    through centered rather than exploding.
    """
    X = np.asarray(rows, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ValueError("fit needs a non-empty 2-D row matrix")
    mean = X.mean(axis=0)
    std = X.std(axis=0)  # population
    std = np.where(std < STD_GUARD, 1.0, std)
    return Standardizer(mean=mean, std=std)


def transform(s: Standardizer, v: np.ndarray) -> np.ndarray:
    """(v - mean) / std elementwise; accepts a vector or a row matrix."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape[-1] != s.dim:
        raise ValueError(f"dimension mismatch: vector has {v.shape[-1]}, standardizer has {s.dim}")
    return (v - s.mean) / s.std
