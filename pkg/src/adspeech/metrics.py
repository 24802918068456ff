"""Evaluation: confusion matrix, accuracy/precision/recall/F1 (AD positive),
and RMSE for the MMSE regression.

0/0 metric cases come back as 0.0 with a degenerate flag instead of NaN so
report files stay machine-readable. Rounding happens only at presentation
(4 decimals); internal math is full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

REPORT_SCHEMA = "adspeech-report-v1"


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    counts: ConfusionMatrix
    rmse: float | None = None
    degenerate: tuple[str, ...] = field(default_factory=tuple)


def f1_from_pr(precision: float, recall: float) -> float:
    """Harmonic mean 2PR/(P+R); 0 when both are 0."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _align(preds: dict[str, object], truths: dict[str, object]):
    missing = sorted(set(truths) - set(preds))
    extra = sorted(set(preds) - set(truths))
    if missing or extra:
        raise ValueError(f"id mismatch between predictions and truths (missing={missing}, extra={extra})")
    return sorted(truths)


def classification_report(preds: dict[str, str], truths: dict[str, str]) -> EvalReport:
    """Confusion counts and the four Table-style metrics, AD positive."""
    if not truths:
        raise ValueError("empty evaluation set")
    ids = _align(preds, truths)
    tp = fp = fn = tn = 0
    for utt_id in ids:
        truth = truths[utt_id]
        pred = preds[utt_id]
        if truth not in ("AD", "CN") or pred not in ("AD", "CN"):
            raise ValueError(f"{utt_id}: labels must be AD or CN")
        if truth == "AD":
            if pred == "AD":
                tp += 1
            else:
                fn += 1
        else:
            if pred == "AD":
                fp += 1
            else:
                tn += 1
    counts = ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)

    degenerate: list[str] = []
    accuracy = (tp + tn) / counts.total
    if tp + fp == 0:
        precision = 0.0
        degenerate.append("precision")
    else:
        precision = tp / (tp + fp)
    if tp + fn == 0:
        recall = 0.0
        degenerate.append("recall")
    else:
        recall = tp / (tp + fn)
    if precision + recall == 0:
        degenerate.append("f1")
    f1 = f1_from_pr(precision, recall)
    return EvalReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        counts=counts,
        degenerate=tuple(degenerate),
    )


def rmse(preds: dict[str, float], truths: dict[str, float]) -> float:
    """sqrt(mean((pred - truth)^2)) over aligned ids."""
    if not truths:
        raise ValueError("empty evaluation set")
    ids = _align(preds, truths)
    sq = [(preds[i] - truths[i]) ** 2 for i in ids]
    return math.sqrt(sum(sq) / len(sq))


def format_report(report: EvalReport) -> str:
    """Versioned key/value text document, stable key order, 4-decimal display."""
    lines = [f"schema={REPORT_SCHEMA}"]
    lines.append(f"n={report.counts.total}")
    lines.append(f"tp={report.counts.tp}")
    lines.append(f"fp={report.counts.fp}")
    lines.append(f"fn={report.counts.fn}")
    lines.append(f"tn={report.counts.tn}")
    lines.append(f"accuracy={report.accuracy:.4f}")
    lines.append(f"precision={report.precision:.4f}")
    lines.append(f"recall={report.recall:.4f}")
    lines.append(f"f1={report.f1:.4f}")
    if report.rmse is not None:
        lines.append(f"rmse={report.rmse:.4f}")
    lines.append(f"degenerate={','.join(report.degenerate)}")
    return "\n".join(lines) + "\n"


def format_regression_report(rmse_value: float, n: int) -> str:
    lines = [f"schema={REPORT_SCHEMA}", f"n={n}", f"rmse={rmse_value:.4f}"]
    return "\n".join(lines) + "\n"
