"""Collapse each LLD contour into 21 statistical functionals.

60 contours x 21 functionals = one 1260-dimensional vector per recording
(or per segment). Percentiles use the nearest-rank rule
sorted[ceil(p*n)] (1-based), which is integer-exact; standard deviation is
the population one; skewness/excess kurtosis of a constant contour are
defined as 0.

Pitch-family contours (f0, jitter, shimmer and their deltas) are evaluated
over voiced frames only; a fully unvoiced clip yields 21 zeros for each.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .lld import VOICED_ONLY, LldMatrix, descriptor_names

FUNCTIONAL_NAMES = (
    "mean",
    "stddev",
    "skewness",
    "kurtosis",
    "min",
    "max",
    "range",
    "relminpos",
    "relmaxpos",
    "quartile1",
    "median",
    "quartile3",
    "iqr12",
    "iqr23",
    "iqr13",
    "pctl1",
    "pctl99",
    "range991",
    "slope",
    "offset",
    "quaderr",
)

N_FUNCTIONALS = len(FUNCTIONAL_NAMES)


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    names: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.values)


def feature_names() -> tuple[str, ...]:
    """The 1260 '<lld>__<functional>' names, fixed order."""
    return tuple(f"{lld}__{fn}" for lld in descriptor_names() for fn in FUNCTIONAL_NAMES)


def linreg(contour) -> tuple[float, float, float]:
    """Least squares of c_t against t = 0..n-1: (slope, offset, mean sq residual).

    A length-1 contour maps to (0, c_0, 0).
    """
    c = np.asarray(contour, dtype=np.float64)
    n = len(c)
    if n == 0:
        raise ValueError("linreg of empty contour")
    if n == 1:
        return 0.0, float(c[0]), 0.0
    t = np.arange(n, dtype=np.float64)
    t_mean = t.mean()
    c_mean = c.mean()
    denom = float(np.sum((t - t_mean) ** 2))
    slope = float(np.sum((t - t_mean) * (c - c_mean)) / denom)
    offset = float(c_mean - slope * t_mean)
    resid = c - (slope * t + offset)
    return slope, offset, float(np.mean(resid**2))


def nearest_rank(sorted_values: np.ndarray, p: float) -> float:
    """Nearest-rank percentile: sorted[ceil(p*n)] with a 1-based rank."""
    n = len(sorted_values)
    rank = max(1, int(np.ceil(p * n)))
    return float(sorted_values[rank - 1])


def contour_functionals(contour) -> np.ndarray:
    """The 21 functionals of one contour, in FUNCTIONAL_NAMES order."""
    c = np.asarray(contour, dtype=np.float64)
    n = len(c)
    if n == 0:
        raise ValueError("functionals of empty contour")

    mean = float(np.mean(c))
    centered = c - mean
    m2 = float(np.mean(centered**2))
    stddev = float(np.sqrt(m2))
    cmin = float(np.min(c))
    cmax = float(np.max(c))
    if cmax == cmin or stddev == 0.0:
        skewness = 0.0
        kurtosis = 0.0
    else:
        # standardize before the powers so tiny contours cannot underflow
        z = centered / stddev
        skewness = float(np.mean(z**3))
        kurtosis = float(np.mean(z**4)) - 3.0
    relmin = float(np.argmin(c)) / (n - 1) if n > 1 else 0.0
    relmax = float(np.argmax(c)) / (n - 1) if n > 1 else 0.0

    s = np.sort(c)
    q1 = nearest_rank(s, 0.25)
    q2 = nearest_rank(s, 0.50)
    q3 = nearest_rank(s, 0.75)
    p1 = nearest_rank(s, 0.01)
    p99 = nearest_rank(s, 0.99)

    slope, offset, quaderr = linreg(c)

    return np.array(
        [
            mean,
            stddev,
            skewness,
            kurtosis,
            cmin,
            cmax,
            cmax - cmin,
            relmin,
            relmax,
            q1,
            q2,
            q3,
            q2 - q1,
            q3 - q2,
            q3 - q1,
            p1,
            p99,
            p99 - p1,
            slope,
            offset,
            quaderr,
        ]
    )


def _is_voiced_only(name: str) -> bool:
    base = name[:-3] if name.endswith("_de") else name
    return base in VOICED_ONLY


def apply_functionals(llds: LldMatrix) -> FeatureVector:
    """One FeatureVector per LldMatrix; length 60 * 21 = 1260."""
    if llds.n_frames < 1:
        raise ValueError("need at least one frame")
    voiced = llds.voiced_mask
    out = np.empty(len(llds.descriptor_names) * N_FUNCTIONALS)
    for j, name in enumerate(llds.descriptor_names):
        contour = llds.values[:, j]
        if _is_voiced_only(name):
            contour = contour[voiced]
            if len(contour) == 0:
                out[j * N_FUNCTIONALS : (j + 1) * N_FUNCTIONALS] = 0.0
                continue
        out[j * N_FUNCTIONALS : (j + 1) * N_FUNCTIONALS] = contour_functionals(contour)
    return FeatureVector(values=out, names=feature_names())


def write_feature_csv(path, rows: list[tuple[str, int, FeatureVector]]) -> None:
    """Feature CSV: header utt_id,segment_index,<1260 names>.

    segment_index -1 means the whole recording.
    """
    names = feature_names()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("utt_id", "segment_index") + names)
        for utt_id, seg_index, vec in rows:
            if vec.names != names:
                raise ValueError(f"feature vector for {utt_id!r} does not match the registry")
            writer.writerow([utt_id, seg_index] + [repr(v) for v in vec.values.tolist()])


def read_feature_csv(path) -> list[tuple[str, int, FeatureVector]]:
    names = feature_names()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != ("utt_id", "segment_index") + names:
            raise ValueError(f"{path}: feature CSV header does not match the is10mini-v1 registry")
        rows = []
        for row in reader:
            utt_id, seg_index = row[0], int(row[1])
            values = np.array([float(v) for v in row[2:]])
            if len(values) != len(names):
                raise ValueError(f"{path}: row for {utt_id!r} has {len(values)} values, expected {len(names)}")
            rows.append((utt_id, seg_index, FeatureVector(values=values, names=names)))
    if not rows:
        raise ValueError(f"{path}: no feature rows")
    return rows
