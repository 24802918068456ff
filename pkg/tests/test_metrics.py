import math

import pytest
from hypothesis import given, settings, strategies as st

from adspeech.metrics import (
    ConfusionMatrix,
    classification_report,
    f1_from_pr,
    format_regression_report,
    format_report,
    rmse,
)

# published (precision, recall, f1) rows for the AD-positive classification task
PUBLISHED_PRF = [
    (0.7273, 0.6667, 0.6957),
    (0.6923, 0.75, 0.72),
    (0.75, 0.625, 0.6818),
    (0.8333, 0.4167, 0.5556),
    (0.5429, 0.7917, 0.6441),
]


@pytest.mark.parametrize("precision,recall,f1", PUBLISHED_PRF)
def test_f1_reproduces_published_rows(precision, recall, f1):
    assert f1_from_pr(precision, recall) == pytest.approx(f1, abs=5e-4)


def test_f1_zero_when_both_zero():
    assert f1_from_pr(0.0, 0.0) == 0.0


@given(st.floats(0, 1), st.floats(0, 1))
def test_f1_bounded_by_min_and_harmonic(p, r):
    f1 = f1_from_pr(p, r)
    assert 0.0 <= f1 <= 1.0
    assert f1 <= 2 * min(p, r) + 1e-12
    assert f1_from_pr(r, p) == pytest.approx(f1, rel=1e-12, abs=1e-12)


def test_perfect_predictions():
    truths = {"a": "AD", "b": "CN", "c": "AD"}
    rep = classification_report(dict(truths), truths)
    assert rep.accuracy == rep.precision == rep.recall == rep.f1 == 1.0
    assert rep.counts == ConfusionMatrix(tp=2, fp=0, fn=0, tn=1)
    assert rep.degenerate == ()


def test_counts_with_ad_positive():
    truths = {"a": "AD", "b": "AD", "c": "CN", "d": "CN"}
    preds = {"a": "AD", "b": "CN", "c": "AD", "d": "CN"}
    rep = classification_report(preds, truths)
    assert rep.counts == ConfusionMatrix(tp=1, fp=1, fn=1, tn=1)
    assert rep.accuracy == 0.5
    assert rep.precision == 0.5
    assert rep.recall == 0.5


def test_all_cn_predictions_flag_degenerate_precision():
    truths = {"a": "AD", "b": "CN"}
    preds = {"a": "CN", "b": "CN"}
    rep = classification_report(preds, truths)
    assert rep.precision == 0.0
    assert rep.recall == 0.0
    assert rep.f1 == 0.0
    assert set(rep.degenerate) == {"precision", "f1"}


def test_no_positive_truths_flag_degenerate_recall():
    truths = {"a": "CN", "b": "CN"}
    preds = {"a": "CN", "b": "CN"}
    rep = classification_report(preds, truths)
    assert rep.accuracy == 1.0
    assert "recall" in rep.degenerate


def test_id_mismatch_is_an_error():
    with pytest.raises(ValueError, match="id mismatch"):
        classification_report({"a": "AD"}, {"a": "AD", "b": "CN"})
    with pytest.raises(ValueError, match="id mismatch"):
        rmse({"a": 1.0, "b": 2.0}, {"a": 1.0})


def test_bad_label_is_an_error():
    with pytest.raises(ValueError, match="labels must be AD or CN"):
        classification_report({"a": "ad"}, {"a": "AD"})


def test_empty_set_is_an_error():
    with pytest.raises(ValueError, match="empty"):
        classification_report({}, {})
    with pytest.raises(ValueError, match="empty"):
        rmse({}, {})


@given(
    st.dictionaries(
        st.text(st.characters(whitelist_categories=("Ll",)), min_size=1, max_size=4),
        st.tuples(st.sampled_from(["AD", "CN"]), st.sampled_from(["AD", "CN"])),
        min_size=1,
        max_size=30,
    )
)
@settings(max_examples=80)
def test_swapping_positive_class_transposes_counts(assignments):
    truths = {k: t for k, (t, _) in assignments.items()}
    preds = {k: p for k, (_, p) in assignments.items()}
    rep = classification_report(preds, truths)
    flip = {"AD": "CN", "CN": "AD"}
    swapped = classification_report(
        {k: flip[v] for k, v in preds.items()}, {k: flip[v] for k, v in truths.items()}
    )
    assert swapped.counts.tp == rep.counts.tn
    assert swapped.counts.fp == rep.counts.fn
    assert swapped.counts.fn == rep.counts.fp
    assert swapped.counts.tn == rep.counts.tp
    assert swapped.accuracy == pytest.approx(rep.accuracy, rel=1e-12)


def test_rmse_examples():
    assert rmse({"a": 0.0, "b": 0.0}, {"a": 3.0, "b": 4.0}) == pytest.approx(
        math.sqrt(12.5), rel=1e-12
    )
    assert rmse({"a": 5.0}, {"a": 5.0}) == 0.0


@given(
    st.dictionaries(
        st.integers(0, 50).map(str), st.floats(0, 30), min_size=1, max_size=20
    ),
    st.floats(-5, 5),
)
@settings(max_examples=60)
def test_rmse_of_constant_offset(truths, offset):
    preds = {k: v + offset for k, v in truths.items()}
    assert rmse(preds, truths) == pytest.approx(abs(offset), abs=1e-9)


def test_format_report_stable_layout():
    rep = classification_report(
        {"a": "AD", "b": "CN", "c": "AD"}, {"a": "AD", "b": "CN", "c": "CN"}
    )
    text = format_report(rep)
    lines = text.splitlines()
    assert lines[0] == "schema=adspeech-report-v1"
    assert "n=3" in lines
    assert "tp=1" in lines and "fp=1" in lines and "fn=0" in lines and "tn=1" in lines
    assert any(line.startswith("accuracy=0.6667") for line in lines)
    assert text.endswith("\n")
    assert format_report(rep) == text


def test_format_regression_report():
    text = format_regression_report(4.78812, 23)
    assert text == "schema=adspeech-report-v1\nn=23\nrmse=4.7881\n"
