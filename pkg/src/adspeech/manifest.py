"""Dataset manifests: which recordings exist, their labels and MMSE scores.

The manifest is a UTF-8 CSV with header ``id,path,label,mmse,split``.
One row per recording. Empty ``label``/``mmse`` cells mean "not known";
train rows must carry both because they feed the trainers.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

LABELS = ("AD", "CN")
SPLITS = ("train", "test")

HEADER = ("id", "path", "label", "mmse", "split")


class ManifestError(ValueError):
    """Malformed manifest content; message carries the offending line number."""


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    audio_path: str
    label: str | None  # "AD" | "CN"
    mmse: float | None  # in [0, 30]
    split: str  # "train" | "test"


@dataclass(frozen=True)
class Manifest:
    entries: tuple[ManifestEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def ids(self) -> list[str]:
        return [e.id for e in self.entries]


def parse_manifest(csv_text: str) -> Manifest:
    """Parse manifest CSV text, rejecting malformed rows with their line number.

    Line numbers are 1-based file lines; the header is line 1.
    """
    reader = csv.reader(io.StringIO(csv_text))
    rows = list(reader)
    if not rows:
        raise ManifestError("empty manifest: missing header")
    if tuple(cell.strip() for cell in rows[0]) != HEADER:
        raise ManifestError(
            f"line 1: expected header {','.join(HEADER)!r}, got {','.join(rows[0])!r}"
        )

    entries: list[ManifestEntry] = []
    seen: dict[str, int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if len(row) != len(HEADER):
            raise ManifestError(f"line {lineno}: expected {len(HEADER)} fields, got {len(row)}")
        rid, path, label_s, mmse_s, split = (cell.strip() for cell in row)
        if rid == "":
            raise ManifestError(f"line {lineno}: empty id")
        if rid in seen:
            raise ManifestError(f"line {lineno}: duplicate id {rid!r} (first seen on line {seen[rid]})")
        seen[rid] = lineno

        label = None
        if label_s != "":
            if label_s not in LABELS:
                raise ManifestError(f"line {lineno}: unknown label {label_s!r} (expected AD or CN)")
            label = label_s

        mmse = None
        if mmse_s != "":
            try:
                mmse = float(mmse_s)
            except ValueError:
                raise ManifestError(f"line {lineno}: malformed mmse {mmse_s!r}") from None
            if not (0.0 <= mmse <= 30.0):
                raise ManifestError(f"line {lineno}: mmse {mmse} outside [0, 30]")

        if split not in SPLITS:
            raise ManifestError(f"line {lineno}: unknown split {split!r} (expected train or test)")
        if split == "train" and (label is None or mmse is None):
            raise ManifestError(f"line {lineno}: train entry {rid!r} must carry label and mmse")

        entries.append(ManifestEntry(id=rid, audio_path=path, label=label, mmse=mmse, split=split))

    if not entries:
        raise ManifestError("manifest has no data rows")
    return Manifest(entries=tuple(entries))


def serialize_manifest(manifest: Manifest) -> str:
    """Inverse of parse_manifest; parse(serialize(m)) == m."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for e in manifest.entries:
        mmse = "" if e.mmse is None else repr(e.mmse)
        writer.writerow([e.id, e.audio_path, e.label or "", mmse, e.split])
    return out.getvalue()


def split(manifest: Manifest, which: str) -> Manifest:
    """Entries whose split matches, original order. May be empty."""
    if which not in SPLITS:
        raise ValueError(f"unknown split {which!r}")
    return Manifest(entries=tuple(e for e in manifest.entries if e.split == which))


def load_manifest(path) -> Manifest:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return parse_manifest(fh.read())
