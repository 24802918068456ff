"""Per-recording decisions from per-segment predictions.

Classification uses the majority vote of all segments (a segment votes AD
iff its signed score is >= 0); vote ties break on the sign of the summed
scores. Regression uses the mean segment value clamped to the MMSE range.
"""

from __future__ import annotations

from dataclasses import dataclass

MMSE_MIN = 0.0
MMSE_MAX = 30.0


@dataclass(frozen=True)
class SegmentPrediction:
    parent_id: str
    index: int
    label_score: float | None = None  # signed margin / log-odds difference, AD positive
    value: float | None = None  # MMSE


def _check(preds: list[SegmentPrediction]) -> None:
    if not preds:
        raise ValueError("empty prediction list")
    parents = {p.parent_id for p in preds}
    if len(parents) > 1:
        raise ValueError(f"mixed parents in one aggregation: {sorted(parents)}")
    indices = [p.index for p in preds]
    if len(set(indices)) != len(indices):
        raise ValueError("duplicate segment indices")


def vote(preds: list[SegmentPrediction]) -> str:
    """Majority label over segments, ties broken by summed scores (>= 0 -> AD)."""
    _check(preds)
    scores = [p.label_score for p in preds]
    if any(s is None for s in scores):
        raise ValueError("vote requires label_score on every prediction")
    ad = sum(1 for s in scores if s >= 0)
    cn = len(scores) - ad
    if ad > cn:
        return "AD"
    if cn > ad:
        return "CN"
    return "AD" if sum(scores) >= 0 else "CN"


def mean_value(preds: list[SegmentPrediction]) -> float:
    """Mean segment MMSE, clamped to [0, 30]."""
    _check(preds)
    values = [p.value for p in preds]
    if any(v is None for v in values):
        raise ValueError("mean_value requires value on every prediction")
    return min(max(sum(values) / len(values), MMSE_MIN), MMSE_MAX)
