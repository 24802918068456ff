"""Deterministic linear SVC (hinge) and SVR (epsilon-insensitive), trained
by dual coordinate descent.

Primal objectives, with the bias handled as an appended constant feature
of value 1 (so the bias is regularized like any other weight):

    svc:  min 0.5 ||u||^2 + c * sum_i max(0, 1 - y_i u.x~_i)
    svr:  min 0.5 ||u||^2 + c * sum_i max(0, |y_i - u.x~_i| - epsilon)

where x~ is the augmented row and u = (w, b). The dual is solved one
coordinate at a time in a per-epoch order drawn from a seeded generator,
stopping when the largest projected-gradient violation over an epoch drops
below tol. The epoch inner loop lives in adspeech._kernels (compiled when
available).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .standardize import Standardizer, transform

DEFAULT_C = 1.0
DEFAULT_EPSILON = 1.0
DEFAULT_TOL = 1e-4
DEFAULT_MAX_EPOCHS = 1000
DEFAULT_SEED = 42

MMSE_MIN = 0.0
MMSE_MAX = 30.0


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    task: str  # "svc" | "svr"
    c: float
    epsilon: float  # unused for svc (kept 0.0)
    standardizer: Standardizer
    feature_schema: str


def _identity_standardizer(dim: int) -> Standardizer:
    return Standardizer(mean=np.zeros(dim), std=np.ones(dim))


def _check_matrix(X: np.ndarray, y: np.ndarray) -> None:
    if X.ndim != 2 or len(X) != len(y):
        raise ValueError("X must be 2-D with one target per row")
    if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
        raise ValueError("non-finite values in training data")


def _solve(X, y, c, seed, max_epochs, tol, task, epsilon=0.0):
    n, d = X.shape
    Xaug = np.ascontiguousarray(np.hstack([X, np.ones((n, 1))]))
    qii = np.einsum("ij,ij->i", Xaug, Xaug)
    dual = np.zeros(n)
    w = np.zeros(d + 1)
    rng = np.random.default_rng(seed)
    for _ in range(max_epochs):
        order = rng.permutation(n).astype(np.int64)
        if task == "svc":
            viol = _kernels.svc_epoch(Xaug, y, qii, dual, w, order, c)
        else:
            viol = _kernels.svr_epoch(Xaug, y, qii, dual, w, order, c, epsilon)
        if viol < tol:
            break
    return w[:-1].copy(), float(w[-1])


def train_svc(
    X,
    y,
    c: float = DEFAULT_C,
    seed: int = DEFAULT_SEED,
    max_epochs: int = DEFAULT_MAX_EPOCHS,
    tol: float = DEFAULT_TOL,
    standardizer: Standardizer | None = None,
    feature_schema: str = "",
) -> LinearModel:
    """Train the hinge-loss classifier on standardized rows; y in {-1, +1}
    with +1 = AD."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_matrix(X, y)
    if not set(np.unique(y)) <= {-1.0, 1.0}:
        raise ValueError("labels must be -1 (CN) or +1 (AD)")
    if len(np.unique(y)) < 2:
        raise ValueError("training data contains a single class")
    weights, bias = _solve(X, y, c, seed, max_epochs, tol, task="svc")
    return LinearModel(
        weights=weights,
        bias=bias,
        task="svc",
        c=c,
        epsilon=0.0,
        standardizer=standardizer or _identity_standardizer(X.shape[1]),
        feature_schema=feature_schema,
    )


def train_svr(
    X,
    y,
    c: float = DEFAULT_C,
    epsilon: float = DEFAULT_EPSILON,
    seed: int = DEFAULT_SEED,
    max_epochs: int = DEFAULT_MAX_EPOCHS,
    tol: float = DEFAULT_TOL,
    standardizer: Standardizer | None = None,
    feature_schema: str = "",
) -> LinearModel:
    """Train the epsilon-insensitive regressor on standardized rows."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_matrix(X, y)
    if len(X) < 2:
        raise ValueError("svr needs at least 2 examples")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    weights, bias = _solve(X, y, c, seed, max_epochs, tol, task="svr", epsilon=epsilon)
    return LinearModel(
        weights=weights,
        bias=bias,
        task="svr",
        c=c,
        epsilon=epsilon,
        standardizer=standardizer or _identity_standardizer(X.shape[1]),
        feature_schema=feature_schema,
    )


def decision(model: LinearModel, values, schema: str | None = None) -> float:
    """Score a raw (un-standardized) feature vector.

    svc: signed margin, label AD iff score >= 0.
    svr: MMSE prediction clamped to [0, 30].
    """
    if schema is not None and schema != model.feature_schema:
        raise ValueError(f"feature schema {schema!r} does not match model {model.feature_schema!r}")
    v = np.asarray(values, dtype=np.float64)
    score = float(np.dot(model.weights, transform(model.standardizer, v)) + model.bias)
    if model.task == "svr":
        return min(max(score, MMSE_MIN), MMSE_MAX)
    return score


def label_for_score(score: float) -> str:
    return "AD" if score >= 0 else "CN"


def primal_objective_svc(X, y, weights, bias, c) -> float:
    """Primal value with the augmented-bias regularization (0.5 b^2 term)."""
    margins = y * (X @ weights + bias)
    hinge = np.maximum(0.0, 1.0 - margins)
    return 0.5 * (np.dot(weights, weights) + bias * bias) + c * float(np.sum(hinge))


def primal_objective_svr(X, y, weights, bias, c, epsilon) -> float:
    resid = np.abs(y - (X @ weights + bias))
    loss = np.maximum(0.0, resid - epsilon)
    return 0.5 * (np.dot(weights, weights) + bias * bias) + c * float(np.sum(loss))
