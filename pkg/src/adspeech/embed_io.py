"""The ".aeb" segment-embedding interchange format.

Byte layout, little-endian throughout:

    bytes 0-3   magic "AEB1"
    bytes 4-7   u32 dim
    bytes 8-11  u32 n_segments
    then        n_segments * dim IEEE-754 float32 values, row-major

File size is exactly 12 + 4 * dim * n_segments. One file per utterance;
the utterance id is the file stem. This format is the sole contract with
the embedding-export bridge.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAGIC = b"AEB1"
HEADER_SIZE = 12


class AebFormatError(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddingSet:
    utt_id: str
    vectors: np.ndarray  # (n_segments, dim) float32

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def n_segments(self) -> int:
        return self.vectors.shape[0]


def write(path, emb: EmbeddingSet) -> None:
    vectors = np.asarray(emb.vectors, dtype="<f4")
    if vectors.ndim != 2:
        raise AebFormatError("vectors must be a 2-D matrix")
    n, dim = vectors.shape
    if n < 1 or dim < 1:
        raise AebFormatError(f"need n_segments >= 1 and dim >= 1, got {n} x {dim}")
    if not np.all(np.isfinite(vectors)):
        raise AebFormatError("non-finite embedding values")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", dim, n))
        fh.write(vectors.tobytes(order="C"))


def read(path) -> EmbeddingSet:
    path = Path(path)
    data = path.read_bytes()
    if len(data) < HEADER_SIZE or data[:4] != MAGIC:
        raise AebFormatError(f"{path.name}: bad magic (not an AEB1 file)")
    dim, n = struct.unpack_from("<II", data, 4)
    if dim < 1 or n < 1:
        raise AebFormatError(f"{path.name}: invalid shape {n} x {dim}")
    expected = HEADER_SIZE + 4 * dim * n
    if len(data) != expected:
        raise AebFormatError(
            f"{path.name}: truncated or padded payload (expected {expected} bytes, got {len(data)})"
        )
    vectors = np.frombuffer(data, dtype="<f4", offset=HEADER_SIZE).reshape(n, dim)
    if not np.all(np.isfinite(vectors)):
        raise AebFormatError(f"{path.name}: non-finite embedding values")
    return EmbeddingSet(utt_id=path.stem, vectors=vectors.copy())
