"""Frame-level low-level descriptors: the "is10mini-v1" set.

30 base contours per recording -- log-energy, zero-crossing rate,
MFCC 0-14, log-mel bands 0-7, F0, voicing probability, jitter (local and
ddp) and shimmer -- plus first-order deltas of each, 60 columns total.
All math is float64 and deterministic for a given config.

Pipeline per clip: pre-emphasis, 25 ms Hamming frames with 10 ms hop,
512-point DFT magnitude spectrum, 26-band HTK-mel filterbank, type-II
orthonormal DCT for the cepstrum, exhaustive normalized-autocorrelation
pitch search, and run-based jitter/shimmer over the voiced frames.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from . import _kernels

FEATURE_SCHEMA = "is10mini-v1"


@dataclass(frozen=True)
class LldConfig:
    frame_ms: float = 25.0
    hop_ms: float = 10.0
    preemphasis: float = 0.97
    n_fft: int = 512
    n_mel: int = 26
    mel_lo_hz: float = 20.0
    mel_hi_hz: float = 8000.0
    n_mfcc: int = 15  # coefficients 0..14
    n_logmel_out: int = 8  # bands 0..7
    f0_min_hz: float = 55.0
    f0_max_hz: float = 400.0
    voicing_threshold: float = 0.45
    log_floor: float = 1e-10

    def frame_len(self, rate: int) -> int:
        return int(round(self.frame_ms * rate / 1000.0))

    def hop_len(self, rate: int) -> int:
        return int(round(self.hop_ms * rate / 1000.0))


@dataclass(frozen=True)
class LldMatrix:
    values: np.ndarray  # (n_frames, 60)
    descriptor_names: tuple[str, ...]
    voiced_mask: np.ndarray  # (n_frames,) bool

    @property
    def n_frames(self) -> int:
        return self.values.shape[0]

    def contour(self, name: str) -> np.ndarray:
        return self.values[:, self.descriptor_names.index(name)]


BASE_DESCRIPTORS = (
    ("log_energy", "zcr")
    + tuple(f"mfcc_{i}" for i in range(15))
    + tuple(f"logmel_{i}" for i in range(8))
    + ("f0", "voicing_prob", "jitter_local", "jitter_ddp", "shimmer_local")
)

# pitch-family contours: statistics over voiced frames only
VOICED_ONLY = ("f0", "jitter_local", "jitter_ddp", "shimmer_local")


def descriptor_names(config: LldConfig | None = None) -> tuple[str, ...]:
    """The 60 column names: 30 base descriptors plus their '_de' deltas."""
    return BASE_DESCRIPTORS + tuple(f"{n}_de" for n in BASE_DESCRIPTORS)


def pre_emphasis(samples: np.ndarray, coef: float) -> np.ndarray:
    """y[0] = x[0], y[n] = x[n] - coef * x[n-1]."""
    x = np.asarray(samples, dtype=np.float64)
    if len(x) == 0:
        return x.copy()
    y = np.empty_like(x)
    y[0] = x[0]
    y[1:] = x[1:] - coef * x[:-1]
    return y


def frame_count(n_samples: int, frame_len: int, hop_len: int) -> int:
    if n_samples < frame_len:
        return 0
    return (n_samples - frame_len) // hop_len + 1


def frame_signal(samples: np.ndarray, config: LldConfig, rate: int) -> np.ndarray:
    """Pre-emphasized, Hamming-windowed frames, shape (n_frames, frame_len)."""
    frame_len = config.frame_len(rate)
    hop = config.hop_len(rate)
    x = pre_emphasis(samples, config.preemphasis)
    n = frame_count(len(x), frame_len, hop)
    if n == 0:
        raise ValueError(f"clip shorter than one frame ({len(x)} < {frame_len} samples)")
    window = np.hamming(frame_len)
    idx = np.arange(frame_len)[None, :] + hop * np.arange(n)[:, None]
    return x[idx] * window[None, :]


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def mel_filterbank(config: LldConfig, rate: int) -> np.ndarray:
    """Triangular filters evaluated at the DFT bin frequencies, (n_mel, n_fft//2+1).

    Band edges equally spaced on the HTK mel scale between mel_lo_hz and
    mel_hi_hz; triangles are sampled in Hz (no bin quantization).
    """
    edges_hz = mel_to_hz(np.linspace(hz_to_mel(config.mel_lo_hz), hz_to_mel(config.mel_hi_hz), config.n_mel + 2))
    bin_hz = np.arange(config.n_fft // 2 + 1) * (rate / config.n_fft)
    fb = np.zeros((config.n_mel, len(bin_hz)))
    for j in range(config.n_mel):
        lo, mid, hi = edges_hz[j], edges_hz[j + 1], edges_hz[j + 2]
        up = (bin_hz - lo) / (mid - lo)
        down = (hi - bin_hz) / (hi - mid)
        fb[j] = np.maximum(0.0, np.minimum(up, down))
    return fb


def spectral_llds(frames: np.ndarray, config: LldConfig, rate: int):
    """Per-frame log-energy, ZCR, MFCC 0-14 and log-mel 0-7.

    Returns (values, names) with values shaped (n_frames, 2+15+8).
    """
    n = frames.shape[0]
    frame_seconds = config.frame_ms / 1000.0

    log_energy = np.log(np.maximum(np.mean(frames**2, axis=1), config.log_floor))

    sign = np.sign(frames)
    zcr = np.sum(sign[:, :-1] * sign[:, 1:] < 0, axis=1) / frame_seconds

    mag = np.abs(np.fft.rfft(frames, n=config.n_fft, axis=1))
    fb = mel_filterbank(config, rate)
    logmel = np.log(np.maximum(mag @ fb.T, config.log_floor))
    mfcc = dct(logmel, type=2, norm="ortho", axis=1)[:, : config.n_mfcc]

    values = np.empty((n, 2 + config.n_mfcc + config.n_logmel_out))
    values[:, 0] = log_energy
    values[:, 1] = zcr
    values[:, 2 : 2 + config.n_mfcc] = mfcc
    values[:, 2 + config.n_mfcc :] = logmel[:, : config.n_logmel_out]
    names = BASE_DESCRIPTORS[: 2 + config.n_mfcc + config.n_logmel_out]
    return values, names


def raw_frames(samples: np.ndarray, config: LldConfig, rate: int) -> np.ndarray:
    """Frame slices of the untouched signal (no pre-emphasis, no window),
    aligned with frame_signal's rows. Input to the pitch and amplitude
    stages, which need the waveform's periodicity intact."""
    frame_len = config.frame_len(rate)
    hop = config.hop_len(rate)
    x = np.asarray(samples, dtype=np.float64)
    n = frame_count(len(x), frame_len, hop)
    if n == 0:
        raise ValueError(f"clip shorter than one frame ({len(x)} < {frame_len} samples)")
    idx = np.arange(frame_len)[None, :] + hop * np.arange(n)[:, None]
    return x[idx]


def _acf_at_lags(frames: np.ndarray, lags: np.ndarray) -> np.ndarray:
    """Normalized autocorrelation of each frame at its own single lag."""
    n, L = frames.shape
    r = np.zeros(n)
    for lag in np.unique(lags):
        sel = lags == lag
        a = frames[sel, : L - lag]
        b = frames[sel, lag:]
        num = np.einsum("ij,ij->i", a, b)
        den = np.sqrt(np.einsum("ij,ij->i", a, a) * np.einsum("ij,ij->i", b, b))
        r[sel] = np.divide(num, den, out=np.zeros(sel.sum()), where=den > 0.0)
    return r


# A competing peak at an integer multiple of the true period must hold at
# least this fraction of the winner's tapered-ACF value for the octave guard
# to step down. Multiples of a genuine period sit within a fraction of a
# percent of each other; unrelated lags fall far below this.
OCTAVE_GUARD_RATIO = 0.9


def pitch_voicing(frames: np.ndarray, config: LldConfig, rate: int):
    """Normalized-ACF pitch per frame, operating on raw frame slices.

    The candidate lag is the argmax of the normalized autocorrelation of the
    Hamming-tapered frame over [rate/f0_max, rate/f0_min]: the taper decays
    with lag, which mostly resolves the ties a periodic signal produces at
    every multiple of its period in favour of the fundamental. The remaining
    near-ties are settled by an octave guard: whenever an integer division
    of the winning lag holds a peak within OCTAVE_GUARD_RATIO of the
    winner's, the smaller lag takes over. voicing_prob is then the raw-frame
    normalized autocorrelation at the final lag (clipped to [0, 1]), so
    clean periodic frames score close to 1; a frame is voiced iff it reaches
    voicing_threshold, with f0 = rate / lag there, else 0.
    """
    lag_min = max(1, int(np.ceil(rate / config.f0_max_hz)))
    lag_max = int(np.floor(rate / config.f0_min_hz))
    frames = np.ascontiguousarray(frames, dtype=np.float64)
    tapered = np.ascontiguousarray(frames * np.hamming(frames.shape[1])[None, :])
    best_lag, best_r = _kernels.acf_pitch_search(tapered, lag_min, lag_max)

    changed = True
    while changed:
        changed = False
        for k in (2, 3):
            center = np.rint(best_lag / k).astype(np.int64)
            movable = (best_r > 0.0) & (center >= lag_min)
            if not movable.any():
                continue
            base = np.clip(center, lag_min, lag_max)
            cand_r = np.full(len(best_lag), -np.inf)
            cand_lag = base.copy()
            # the division lands between integer lags, so scan its vicinity
            for off in (-2, -1, 0, 1, 2):
                lag_o = np.clip(base + off, lag_min, lag_max)
                r_o = _acf_at_lags(tapered, lag_o)
                better = r_o > cand_r
                cand_r = np.where(better, r_o, cand_r)
                cand_lag = np.where(better, lag_o, cand_lag)
            move = movable & (cand_lag < best_lag) & (cand_r >= OCTAVE_GUARD_RATIO * best_r)
            if move.any():
                best_lag = np.where(move, cand_lag, best_lag)
                best_r = np.where(move, cand_r, best_r)
                changed = True

    voicing_prob = np.clip(_acf_at_lags(frames, best_lag), 0.0, 1.0)
    voiced = voicing_prob >= config.voicing_threshold
    f0 = np.where(voiced, rate / best_lag.astype(np.float64), 0.0)
    return f0, voicing_prob


def frame_peaks(frames_raw: np.ndarray) -> np.ndarray:
    """Per-frame peak amplitude max|x| over raw frame slices."""
    return np.max(np.abs(frames_raw), axis=1)


def voice_quality(f0: np.ndarray, peaks: np.ndarray, voiced_mask: np.ndarray):
    """Frame-level jitter/shimmer over maximal voiced runs.

    With T_i = 1/f0_i and A_i the frame peak amplitude, per run:
      jitter_local_i  = |T_i - T_{i-1}| / mean(T)
      jitter_ddp_i    = |(T_{i+1} - T_i) - (T_i - T_{i-1})| / mean(T)
      shimmer_local_i = |A_i - A_{i-1}| / mean(A)
    Frames lacking the needed neighbours within the run, and all unvoiced
    frames, carry 0.
    """
    n = len(f0)
    jitter_local = np.zeros(n)
    jitter_ddp = np.zeros(n)
    shimmer_local = np.zeros(n)

    for a, b in _voiced_runs(voiced_mask):
        t = 1.0 / f0[a:b]
        amp = peaks[a:b]
        mean_t = float(np.mean(t))
        mean_a = float(np.mean(amp))
        if b - a < 2:
            continue
        dt = np.abs(np.diff(t))
        jitter_local[a + 1 : b] = dt / mean_t
        if mean_a > 0.0:
            shimmer_local[a + 1 : b] = np.abs(np.diff(amp)) / mean_a
        if b - a >= 3:
            jitter_ddp[a + 1 : b - 1] = np.abs(np.diff(t, n=2)) / mean_t
    return jitter_local, jitter_ddp, shimmer_local


def _voiced_runs(mask: np.ndarray):
    runs = []
    start = None
    for i, v in enumerate(mask):
        if v and start is None:
            start = i
        elif not v and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(mask)))
    return runs


def delta(contour: np.ndarray) -> np.ndarray:
    """First-order delta (c[t+1] - c[t-1]) / 2, edges replicated."""
    c = np.asarray(contour, dtype=np.float64)
    if len(c) == 1:
        return np.zeros(1)
    padded = np.concatenate([c[:1], c, c[-1:]])
    return (padded[2:] - padded[:-2]) / 2.0


def extract_llds(clip, config: LldConfig | None = None) -> LldMatrix:
    """Full LLD extraction for an AudioClip or Segment at 16 kHz.

    Output columns follow descriptor_names(): 30 base contours then their
    deltas, with voiced_mask from the pitch stage.
    """
    if config is None:
        config = LldConfig()
    rate = clip.sample_rate
    if rate != 16000:
        raise ValueError(f"LLD extraction expects 16 kHz audio, got {rate} Hz")

    frames = frame_signal(clip.samples, config, rate)
    spec_vals, _ = spectral_llds(frames, config, rate)
    raw = raw_frames(clip.samples, config, rate)
    f0, voicing_prob = pitch_voicing(raw, config, rate)
    voiced_mask = voicing_prob >= config.voicing_threshold
    jitter_local, jitter_ddp, shimmer_local = voice_quality(f0, frame_peaks(raw), voiced_mask)

    base = np.column_stack([spec_vals, f0, voicing_prob, jitter_local, jitter_ddp, shimmer_local])
    deltas = np.column_stack([delta(base[:, j]) for j in range(base.shape[1])])
    values = np.column_stack([base, deltas])
    names = descriptor_names(config)
    assert values.shape[1] == len(names) == 60
    return LldMatrix(values=values, descriptor_names=names, voiced_mask=voiced_mask)
