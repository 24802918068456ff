"""Versioned JSON model files for both the linear and the FC models.

One document schema covers every task:

    {"schema_version": 1, "task": "svc"|"svr"|"mlp_cls"|"mlp_reg",
     "feature_schema": "...", "standardizer": {"mean": [...], "std": [...]},
     ...task-specific arrays...}

Floats are serialized through Python's shortest-repr JSON encoding, which
round-trips float64 exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .mlp import MlpModel
from .standardize import Standardizer
from .svm import LinearModel

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class MlpBundle:
    """An FC model plus the preprocessing it was trained with."""

    model: MlpModel
    standardizer: Standardizer
    feature_schema: str
    task: str  # "mlp_cls" | "mlp_reg"


def save_model(path, model: LinearModel | MlpBundle) -> None:
    if isinstance(model, LinearModel):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "task": model.task,
            "feature_schema": model.feature_schema,
            "c": model.c,
            "epsilon": model.epsilon,
            "standardizer": {
                "mean": model.standardizer.mean.tolist(),
                "std": model.standardizer.std.tolist(),
            },
            "weights": model.weights.tolist(),
            "bias": model.bias,
        }
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "task": model.task,
            "feature_schema": model.feature_schema,
            "standardizer": {
                "mean": model.standardizer.mean.tolist(),
                "std": model.standardizer.std.tolist(),
            },
            "out_units": model.model.out_units,
            "w1": model.model.w1.tolist(),
            "b1": model.model.b1.tolist(),
            "w2": model.model.w2.tolist(),
            "b2": model.model.b2.tolist(),
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_model(path) -> LinearModel | MlpBundle:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"{path}: unsupported model schema_version {version!r}")
    std = Standardizer(
        mean=np.asarray(doc["standardizer"]["mean"], dtype=np.float64),
        std=np.asarray(doc["standardizer"]["std"], dtype=np.float64),
    )
    task = doc["task"]
    if task in ("svc", "svr"):
        return LinearModel(
            weights=np.asarray(doc["weights"], dtype=np.float64),
            bias=float(doc["bias"]),
            task=task,
            c=float(doc["c"]),
            epsilon=float(doc["epsilon"]),
            standardizer=std,
            feature_schema=doc["feature_schema"],
        )
    if task in ("mlp_cls", "mlp_reg"):
        model = MlpModel(
            w1=np.asarray(doc["w1"], dtype=np.float64),
            b1=np.asarray(doc["b1"], dtype=np.float64),
            w2=np.asarray(doc["w2"], dtype=np.float64),
            b2=np.asarray(doc["b2"], dtype=np.float64),
            out_units=int(doc["out_units"]),
        )
        return MlpBundle(model=model, standardizer=std, feature_schema=doc["feature_schema"], task=task)
    raise ValueError(f"{path}: unknown task {task!r}")
