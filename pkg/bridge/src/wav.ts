/**
 * Minimal PCM16 WAV decoding and sample-rate conversion.
 *
 * The decoder walks RIFF chunks (word-aligned, unknown chunks skipped) and
 * accepts 16-bit integer PCM only, scaling samples to [-1, 1) by 1/32768.
 * The resampler reproduces the toolkit's output-length rule exactly,
 * ceil(n * up / down) with up/down = reduced rate ratio, so downstream
 * segment counts always agree; sample values come from linear
 * interpolation, which is adequate for feature extraction stand-ins.
 */

export class WavFormatError extends Error {}

export interface AudioClip {
  samples: Float64Array;
  sampleRate: number;
}

export function decodeWav(bytes: Buffer): AudioClip {
  if (bytes.length < 12 || bytes.toString('ascii', 0, 4) !== 'RIFF' || bytes.toString('ascii', 8, 12) !== 'WAVE') {
    throw new WavFormatError('not a RIFF/WAVE file');
  }
  let pos = 12;
  let sampleRate = 0;
  let channels = 0;
  let haveFmt = false;
  let data: Buffer | null = null;
  while (pos + 8 <= bytes.length) {
    const tag = bytes.toString('ascii', pos, pos + 4);
    const size = bytes.readUInt32LE(pos + 4);
    const body = pos + 8;
    if (body + size > bytes.length) {
      throw new WavFormatError(`truncated ${tag.trim()} chunk: declared ${size} bytes, got ${bytes.length - body}`);
    }
    if (tag === 'fmt ') {
      const codec = bytes.readUInt16LE(body);
      if (codec !== 1) {
        throw new WavFormatError(`unsupported codec ${codec}`);
      }
      channels = bytes.readUInt16LE(body + 2);
      sampleRate = bytes.readUInt32LE(body + 4);
      const bits = bytes.readUInt16LE(body + 14);
      if (bits !== 16) {
        throw new WavFormatError(`unsupported sample width ${bits} bits (16 only)`);
      }
      if (sampleRate === 0) {
        throw new WavFormatError('zero sample rate');
      }
      haveFmt = true;
    } else if (tag === 'data') {
      data = bytes.subarray(body, body + size);
    }
    pos = body + size + (size % 2);
  }
  if (!haveFmt || data === null) {
    throw new WavFormatError('missing fmt or data chunk');
  }
  const frames = Math.floor(data.length / (2 * channels));
  const samples = new Float64Array(frames);
  for (let i = 0; i < frames; i++) {
    // average channels down to mono
    let acc = 0;
    for (let c = 0; c < channels; c++) {
      acc += data.readInt16LE((i * channels + c) * 2);
    }
    samples[i] = acc / channels / 32768;
  }
  return { samples, sampleRate };
}

function gcd(a: number, b: number): number {
  while (b !== 0) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function resampledLength(n: number, fromRate: number, toRate: number): number {
  const g = gcd(toRate, fromRate);
  return Math.ceil((n * (toRate / g)) / (fromRate / g));
}

export function resample(clip: AudioClip, targetRate: number): AudioClip {
  if (targetRate <= 0) {
    throw new Error('targetRate must be positive');
  }
  if (targetRate === clip.sampleRate) {
    return clip;
  }
  const n = clip.samples.length;
  const outLen = resampledLength(n, clip.sampleRate, targetRate);
  const out = new Float64Array(outLen);
  const step = clip.sampleRate / targetRate;
  for (let i = 0; i < outLen; i++) {
    const t = i * step;
    const lo = Math.min(Math.floor(t), n - 1);
    const hi = Math.min(lo + 1, n - 1);
    const frac = t - lo;
    out[i] = clip.samples[lo]! * (1 - frac) + clip.samples[hi]! * frac;
  }
  return { samples: out, sampleRate: targetRate };
}
