"""Two fully connected layers over pre-trained segment embeddings.

Classification and regression share the architecture; only the output
layer width differs (2 class scores vs 1 value). The hidden layer is a
rectifier. Training is plain seeded mini-batch gradient descent on
cross-entropy or mean-squared error, with analytic gradients that are
validated against central finite differences by grad_check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

DEFAULT_HIDDEN = 64
DEFAULT_LR = 1e-3
DEFAULT_EPOCHS = 50
DEFAULT_BATCH = 16
DEFAULT_SEED = 42


@dataclass(frozen=True)
class MlpModel:
    w1: np.ndarray  # (hidden, input)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (out, hidden)
    b2: np.ndarray  # (out,)
    out_units: int  # 2 = classifier, 1 = regressor

    @property
    def input_dim(self) -> int:
        return self.w1.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.w1.shape[0]


@dataclass(frozen=True)
class TrainConfig:
    lr: float = DEFAULT_LR
    epochs: int = DEFAULT_EPOCHS
    batch: int = DEFAULT_BATCH
    seed: int = DEFAULT_SEED


def init(input_dim: int, hidden_dim: int, out_units: int, seed: int = DEFAULT_SEED) -> MlpModel:
    """Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases."""
    if input_dim <= 0 or hidden_dim <= 0:
        raise ValueError("dims must be positive")
    if out_units not in (1, 2):
        raise ValueError(f"out_units must be 1 or 2, got {out_units}")
    rng = np.random.default_rng(seed)
    lim1 = np.sqrt(6.0 / (input_dim + hidden_dim))
    lim2 = np.sqrt(6.0 / (hidden_dim + out_units))
    return MlpModel(
        w1=rng.uniform(-lim1, lim1, size=(hidden_dim, input_dim)),
        b1=np.zeros(hidden_dim),
        w2=rng.uniform(-lim2, lim2, size=(out_units, hidden_dim)),
        b2=np.zeros(out_units),
        out_units=out_units,
    )


def n_parameters(m: MlpModel) -> int:
    return m.w1.size + m.b1.size + m.w2.size + m.b2.size


def forward(m: MlpModel, x: np.ndarray) -> np.ndarray:
    """Class log-scores (out_units=2) or scalar outputs (out_units=1).

    Accepts a single vector or a batch of rows; output keeps the batch shape.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    X = x[None, :] if single else x
    if X.shape[1] != m.input_dim:
        raise ValueError(f"input dim {X.shape[1]} != model dim {m.input_dim}")
    h = np.maximum(0.0, X @ m.w1.T + m.b1)
    out = h @ m.w2.T + m.b2
    return out[0] if single else out


def softmax(scores: np.ndarray) -> np.ndarray:
    z = scores - np.max(scores, axis=-1, keepdims=True)
    e = np.exp(z)
    return e / np.sum(e, axis=-1, keepdims=True)


def _loss_and_grads(m: MlpModel, X: np.ndarray, y: np.ndarray):
    """Mean loss over the batch and gradients for every parameter.

    Classification (out_units=2): softmax cross-entropy, y = class indices
    (0 = CN, 1 = AD). Regression (out_units=1): mean squared error.
    """
    n = len(X)
    h_pre = X @ m.w1.T + m.b1
    h = np.maximum(0.0, h_pre)
    out = h @ m.w2.T + m.b2

    if m.out_units == 2:
        z = out - np.max(out, axis=1, keepdims=True)
        log_probs = z - np.log(np.sum(np.exp(z), axis=1, keepdims=True))
        idx = y.astype(int)
        loss = -float(np.mean(log_probs[np.arange(n), idx]))
        dout = np.exp(log_probs)
        dout[np.arange(n), idx] -= 1.0
        dout /= n
    else:
        pred = out[:, 0]
        resid = pred - y
        loss = float(np.mean(resid**2))
        dout = (2.0 * resid / n)[:, None]

    dw2 = dout.T @ h
    db2 = dout.sum(axis=0)
    dh = dout @ m.w2
    dh_pre = dh * (h_pre > 0)
    dw1 = dh_pre.T @ X
    db1 = dh_pre.sum(axis=0)
    return loss, (dw1, db1, dw2, db2)


def train(m: MlpModel, X, y, config: TrainConfig | None = None):
    """Mini-batch gradient descent; returns (trained model, per-epoch losses).

    The per-epoch loss is the mean of the batch losses seen during that
    epoch. Shuffling is driven by the config seed, so identical inputs give
    identical trajectories.
    """
    if config is None:
        config = TrainConfig()
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(X) == 0:
        raise ValueError("empty training data")
    if X.ndim != 2 or len(X) != len(y):
        raise ValueError("X must be 2-D with one target per row")

    rng = np.random.default_rng(config.seed)
    w1, b1, w2, b2 = m.w1.copy(), m.b1.copy(), m.w2.copy(), m.b2.copy()
    cur = replace(m, w1=w1, b1=b1, w2=w2, b2=b2)
    losses: list[float] = []
    n = len(X)
    for _ in range(config.epochs):
        order = rng.permutation(n)
        batch_losses = []
        for start in range(0, n, config.batch):
            idx = order[start : start + config.batch]
            loss, (dw1, db1, dw2, db2) = _loss_and_grads(cur, X[idx], y[idx])
            w1 -= config.lr * dw1
            b1 -= config.lr * db1
            w2 -= config.lr * dw2
            b2 -= config.lr * db2
            batch_losses.append(loss)
        losses.append(float(np.mean(batch_losses)))
    return cur, losses


def grad_check(m: MlpModel, x, y, h: float = 1e-5) -> float:
    """Max relative error between analytic and central-difference gradients
    over every parameter, for the loss matching m.out_units."""
    X = np.asarray(x, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))

    cur = replace(
        m, w1=m.w1.copy(), b1=m.b1.copy(), w2=m.w2.copy(), b2=m.b2.copy()
    )
    _, grads = _loss_and_grads(cur, X, y)
    params = [cur.w1, cur.b1, cur.w2, cur.b2]

    worst = 0.0
    for param, grad in zip(params, grads):
        flat = param.reshape(-1)
        for k in range(flat.size):
            orig = flat[k]
            flat[k] = orig + h
            lp, _ = _loss_and_grads(cur, X, y)
            flat[k] = orig - h
            lm, _ = _loss_and_grads(cur, X, y)
            flat[k] = orig
            fd = (lp - lm) / (2.0 * h)
            ga = grad.reshape(-1)[k]
            denom = max(abs(ga), abs(fd), 1e-8)
            err = abs(ga - fd) / denom if (ga != 0.0 or fd != 0.0) else 0.0
            if err > worst:
                worst = err
    return worst
