"""Synthetic toy corpus for smoke tests and demos.

Two acoustic classes: "CN" recordings are clean tones, "AD" recordings are
the same tones under five times the noise floor. Every recording carries a
tone at a per-utterance fundamental swept over [120, 320] Hz, and the MMSE
target is linear in that fundamental, so the classifier has a spectral cue
and the regressor a pitch cue. Audio is written as 16 kHz PCM16 WAV.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .audio import AudioClip, encode_wav
from .manifest import Manifest, ManifestEntry, serialize_manifest

F0_LO = 120.0
F0_HI = 320.0


def mmse_for_f0(f0: float) -> float:
    return (f0 - F0_LO) * 30.0 / (F0_HI - F0_LO)


def make_corpus(
    out_dir,
    n: int = 40,
    seed: int = 42,
    duration: float = 3.0,
    rate: int = 16000,
    test_fraction: float = 0.3,
) -> Path:
    """Generate n WAVs plus a manifest CSV; returns the manifest path.

    Classes alternate by index; the train/test split is stratified, with
    held-out utterances spread evenly across the fundamental sweep so the
    regressor interpolates rather than extrapolates.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    t = np.arange(int(round(duration * rate))) / rate

    per_class = n // 2
    n_test = int(np.ceil(test_fraction * per_class))
    entries = []
    for i in range(n):
        label = "CN" if i % 2 == 0 else "AD"
        f0 = F0_LO + (F0_HI - F0_LO) * i / (n - 1)
        noise_amp = 0.02 if label == "CN" else 0.10
        tone = 0.35 * np.sin(2 * np.pi * f0 * t + rng.uniform(0, 2 * np.pi))
        noise = noise_amp * rng.standard_normal(len(t))
        clip = AudioClip(samples=tone + noise, sample_rate=rate, id=f"u{i:03d}")

        wav_path = out_dir / f"u{i:03d}.wav"
        wav_path.write_bytes(encode_wav(clip))

        rank_in_class = i // 2
        is_test = (rank_in_class * n_test) % per_class < n_test
        split = "test" if is_test else "train"
        entries.append(
            ManifestEntry(
                id=clip.id,
                audio_path=str(wav_path),
                label=label,
                mmse=round(mmse_for_f0(f0), 2),
                split=split,
            )
        )

    manifest_path = out_dir / "manifest.csv"
    manifest_path.write_text(serialize_manifest(Manifest(entries=tuple(entries))), encoding="utf-8")
    return manifest_path


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(description="generate the synthetic demo corpus")
    parser.add_argument("out_dir", help="directory for WAV files and manifest.csv")
    parser.add_argument("--n", type=int, default=40)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--duration", type=float, default=3.0)
    args = parser.parse_args(argv)
    manifest_path = make_corpus(args.out_dir, n=args.n, seed=args.seed, duration=args.duration)
    print(f"wrote {args.n} recordings; manifest at {manifest_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
