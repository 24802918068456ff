"""WAV decoding, resampling to the 16 kHz pipeline rate, and segmentation.

Only RIFF/WAVE PCM16 input is supported; anything else must be converted
upstream. Decoded samples are float64 in [-1, 1] (int16 value v -> v/32768),
stereo is averaged to mono.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np
from scipy.signal import resample_poly

PIPELINE_RATE = 16000


class WavFormatError(ValueError):
    pass


@dataclass(frozen=True)
class AudioClip:
    samples: np.ndarray  # float64, mono
    sample_rate: int
    id: str = ""

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class Segment:
    samples: np.ndarray
    sample_rate: int
    parent_id: str
    index: int


def decode_wav(data: bytes, clip_id: str = "") -> AudioClip:
    """Decode a RIFF/WAVE PCM16 byte string (mono or stereo) to a mono clip."""
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE file")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (chunk_size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + chunk_size]
        if len(body) < chunk_size:
            raise WavFormatError(
                f"truncated {chunk_id.decode('ascii', 'replace')!r} chunk: "
                f"declared {chunk_size} bytes, got {len(body)}"
            )
        if chunk_id == b"fmt ":
            if chunk_size < 16:
                raise WavFormatError("fmt chunk too short")
            audio_format, n_channels, sample_rate, _, _, bits = struct.unpack_from(
                "<HHIIHH", body, 0
            )
            if audio_format != 1:
                raise WavFormatError(f"unsupported codec {audio_format} (PCM only)")
            if bits != 16:
                raise WavFormatError(f"unsupported sample width {bits} bits (16 only)")
            if sample_rate == 0:
                raise WavFormatError("zero sample rate")
            if n_channels not in (1, 2):
                raise WavFormatError(f"unsupported channel count {n_channels}")
            fmt = (n_channels, sample_rate)
        elif chunk_id == b"data":
            payload = body
        # chunks are word-aligned
        pos += 8 + chunk_size + (chunk_size & 1)

    if fmt is None:
        raise WavFormatError("missing fmt chunk")
    if payload is None:
        raise WavFormatError("missing data chunk")
    n_channels, sample_rate = fmt
    if len(payload) % (2 * n_channels) != 0:
        raise WavFormatError("data chunk length not a multiple of the frame size")

    raw = np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32768.0
    if n_channels == 2:
        raw = raw.reshape(-1, 2).mean(axis=1)
    return AudioClip(samples=raw, sample_rate=sample_rate, id=clip_id)


def encode_wav(clip: AudioClip) -> bytes:
    """Encode a mono clip as canonical PCM16 WAV. Inverse of decode_wav for
    full-scale-safe mono signals."""
    pcm = np.clip(np.rint(clip.samples * 32768.0), -32768, 32767).astype("<i2")
    payload = pcm.tobytes()
    header = b"RIFF" + struct.pack("<I", 36 + len(payload)) + b"WAVE"
    fmt = b"fmt " + struct.pack(
        "<IHHIIHH", 16, 1, 1, clip.sample_rate, clip.sample_rate * 2, 2, 16
    )
    data = b"data" + struct.pack("<I", len(payload)) + payload
    return header + fmt + data


def load_wav(path, clip_id: str = "") -> AudioClip:
    with open(path, "rb") as fh:
        return decode_wav(fh.read(), clip_id=clip_id)


def resample(clip: AudioClip, target_rate: int) -> AudioClip:
    """Band-limited polyphase resampling; identity when rates already match."""
    if target_rate <= 0:
        raise ValueError("target_rate must be positive")
    if target_rate == clip.sample_rate:
        return clip
    import math

    g = math.gcd(target_rate, clip.sample_rate)
    up, down = target_rate // g, clip.sample_rate // g
    out = resample_poly(clip.samples, up, down)
    return AudioClip(samples=out, sample_rate=target_rate, id=clip.id)


def segment(clip: AudioClip, segment_seconds: float, min_tail_fraction: float = 0.5) -> list[Segment]:
    """Cut a clip into consecutive non-overlapping fixed-length windows.

    The final partial window is kept iff its duration is at least
    ``min_tail_fraction * segment_seconds``; otherwise it is dropped.
    """
    if segment_seconds <= 0:
        raise ValueError("segment_seconds must be positive")
    if not 0.0 <= min_tail_fraction <= 1.0:
        raise ValueError("min_tail_fraction must be in [0, 1]")
    if len(clip.samples) == 0:
        raise ValueError("cannot segment an empty clip")

    n_seg = int(round(segment_seconds * clip.sample_rate))
    segments: list[Segment] = []
    n = len(clip.samples)
    start = 0
    index = 0
    while start < n:
        chunk = clip.samples[start : start + n_seg]
        if len(chunk) < n_seg and len(chunk) < min_tail_fraction * n_seg:
            break
        segments.append(
            Segment(samples=chunk, sample_rate=clip.sample_rate, parent_id=clip.id, index=index)
        )
        index += 1
        start += n_seg
    return segments


def segment_count(n_samples: int, sample_rate: int, segment_seconds: float, min_tail_fraction: float = 0.5) -> int:
    """Number of segments segment() would keep, without materializing them."""
    n_seg = int(round(segment_seconds * sample_rate))
    full, tail = divmod(n_samples, n_seg)
    if tail and tail >= min_tail_fraction * n_seg:
        full += 1
    return full
