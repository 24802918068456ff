import { describe, expect, it } from 'vitest';

import { decodeWav, resample, resampledLength, WavFormatError } from '../src/wav.js';
import { wavBytes } from './helpers.js';

describe('decodeWav', () => {
  it('decodes mono PCM16 with the 1/32768 scale', () => {
    const bytes = wavBytes([0, 0.5, -0.5, 1, -1], 16000);
    const { samples, sampleRate } = decodeWav(bytes);
    expect(sampleRate).toBe(16000);
    expect(samples.length).toBe(5);
    expect(samples[0]).toBe(0);
    expect(samples[1]).toBeCloseTo(0.5, 4);
    expect(samples[2]).toBeCloseTo(-0.5, 4);
    expect(samples[3]).toBeCloseTo(32767 / 32768, 10);
    expect(samples[4]).toBe(-1);
  });

  it('averages stereo channels to mono', () => {
    const interleaved = [0.5, -0.5, 0.25, 0.25];
    const { samples } = decodeWav(wavBytes(interleaved, 8000, 2));
    expect(samples.length).toBe(2);
    expect(samples[0]).toBeCloseTo(0, 4);
    expect(samples[1]).toBeCloseTo(0.25, 4);
  });

  it('skips unknown chunks before data', () => {
    const plain = wavBytes([0.1, 0.2], 16000);
    const fmt = plain.subarray(12, 36);
    const data = plain.subarray(36);
    const junk = Buffer.alloc(8 + 5);
    junk.write('LIST', 0, 'ascii');
    junk.writeUInt32LE(5, 4);
    const body = Buffer.concat([fmt, junk, Buffer.from([0]), data]);
    const riff = Buffer.alloc(12);
    riff.write('RIFF', 0, 'ascii');
    riff.writeUInt32LE(4 + body.length, 4);
    riff.write('WAVE', 8, 'ascii');
    const { samples } = decodeWav(Buffer.concat([riff, body]));
    expect(samples.length).toBe(2);
    expect(samples[1]).toBeCloseTo(0.2, 4);
  });

  it('rejects non-RIFF input', () => {
    expect(() => decodeWav(Buffer.from('not audio at all'))).toThrow(/not a RIFF\/WAVE file/);
  });

  it('rejects compressed codecs and non-16-bit widths', () => {
    const mulaw = wavBytes([0.1], 8000);
    mulaw.writeUInt16LE(7, 20);
    expect(() => decodeWav(mulaw)).toThrow(/unsupported codec 7/);

    const eightBit = wavBytes([0.1], 8000);
    eightBit.writeUInt16LE(8, 34);
    expect(() => decodeWav(eightBit)).toThrow(/16 only/);
  });

  it('rejects a data chunk shorter than declared', () => {
    const bytes = wavBytes([0.1, 0.2, 0.3], 16000);
    expect(() => decodeWav(bytes.subarray(0, bytes.length - 2))).toThrow(WavFormatError);
    expect(() => decodeWav(bytes.subarray(0, bytes.length - 2))).toThrow(/truncated/);
  });
});

describe('resampledLength', () => {
  it('uses ceil(n * up / down) after gcd reduction', () => {
    expect(resampledLength(44100, 44100, 16000)).toBe(16000);
    expect(resampledLength(30870, 44100, 16000)).toBe(11200);
    expect(resampledLength(1, 44100, 16000)).toBe(1);
    expect(resampledLength(441, 44100, 16000)).toBe(160);
    expect(resampledLength(442, 44100, 16000)).toBe(161);
    expect(resampledLength(16000, 16000, 16000)).toBe(16000);
    expect(resampledLength(12345, 22050, 16000)).toBe(Math.ceil((12345 * 320) / 441));
  });
});

describe('resample', () => {
  it('returns the input clip unchanged at the same rate', () => {
    const clip = { samples: Float64Array.from([0.1, -0.2, 0.3]), sampleRate: 16000 };
    expect(resample(clip, 16000)).toBe(clip);
  });

  it('produces the promised length', () => {
    for (const [n, from] of [
      [44100, 44100],
      [30870, 44100],
      [22050, 22050],
      [8001, 8000],
    ] as const) {
      const out = resample({ samples: new Float64Array(n), sampleRate: from }, 16000);
      expect(out.sampleRate).toBe(16000);
      expect(out.samples.length).toBe(resampledLength(n, from, 16000));
    }
  });

  it('tracks a slow ramp closely', () => {
    const n = 44100;
    const ramp = new Float64Array(n);
    for (let i = 0; i < n; i++) ramp[i] = i / n;
    const out = resample({ samples: ramp, sampleRate: 44100 }, 16000).samples;
    for (let i = 1; i < out.length - 1; i++) {
      expect(Math.abs(out[i]! - i / out.length)).toBeLessThan(1e-3);
    }
  });
});
