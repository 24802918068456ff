import json

import numpy as np
import pytest

from adspeech.mlp import init
from adspeech.model_io import MlpBundle, load_model, save_model
from adspeech.standardize import Standardizer
from adspeech.svm import LinearModel, train_svc


def linear_fixture():
    rng = np.random.default_rng(6)
    return LinearModel(
        weights=rng.normal(size=5),
        bias=float(rng.normal()),
        task="svr",
        c=2.5,
        epsilon=0.75,
        standardizer=Standardizer(mean=rng.normal(size=5), std=rng.uniform(0.5, 2, 5)),
        feature_schema="is10mini-v1",
    )


def test_linear_model_roundtrip_is_exact(tmp_path):
    model = linear_fixture()
    path = tmp_path / "model.json"
    save_model(path, model)
    back = load_model(path)
    assert isinstance(back, LinearModel)
    np.testing.assert_array_equal(back.weights, model.weights)
    assert back.bias == model.bias
    assert back.task == "svr"
    assert back.c == 2.5 and back.epsilon == 0.75
    np.testing.assert_array_equal(back.standardizer.mean, model.standardizer.mean)
    np.testing.assert_array_equal(back.standardizer.std, model.standardizer.std)
    assert back.feature_schema == "is10mini-v1"


def test_trained_model_roundtrip_bit_identical(tmp_path):
    X = np.array([[-1.0], [1.0], [-2.0], [2.0]])
    y = np.array([-1.0, 1.0, -1.0, 1.0])
    model = train_svc(X, y, feature_schema="s")
    path = tmp_path / "svc.json"
    save_model(path, model)
    back = load_model(path)
    np.testing.assert_array_equal(back.weights, model.weights)
    assert back.bias == model.bias


def test_mlp_bundle_roundtrip(tmp_path):
    m = init(7, 4, 2, seed=3)
    bundle = MlpBundle(
        model=m,
        standardizer=Standardizer(mean=np.zeros(7), std=np.ones(7)),
        feature_schema="aeb-d7",
        task="mlp_cls",
    )
    path = tmp_path / "mlp.json"
    save_model(path, bundle)
    back = load_model(path)
    assert isinstance(back, MlpBundle)
    assert back.task == "mlp_cls"
    assert back.model.out_units == 2
    np.testing.assert_array_equal(back.model.w1, m.w1)
    np.testing.assert_array_equal(back.model.w2, m.w2)
    np.testing.assert_array_equal(back.model.b1, m.b1)
    np.testing.assert_array_equal(back.model.b2, m.b2)
    assert back.feature_schema == "aeb-d7"


def test_save_is_deterministic_bytes(tmp_path):
    model = linear_fixture()
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_model(p1, model)
    save_model(p2, model)
    assert p1.read_bytes() == p2.read_bytes()


def test_unsupported_version_rejected(tmp_path):
    path = tmp_path / "old.json"
    save_model(path, linear_fixture())
    doc = json.loads(path.read_text())
    doc["schema_version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="schema_version"):
        load_model(path)


def test_unknown_task_rejected(tmp_path):
    path = tmp_path / "odd.json"
    save_model(path, linear_fixture())
    doc = json.loads(path.read_text())
    doc["task"] = "forest"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="unknown task"):
        load_model(path)


def test_document_layout_is_versioned_json(tmp_path):
    path = tmp_path / "m.json"
    save_model(path, linear_fixture())
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == 1
    assert set(doc) == {
        "schema_version", "task", "feature_schema", "c", "epsilon",
        "standardizer", "weights", "bias",
    }
    assert set(doc["standardizer"]) == {"mean", "std"}
