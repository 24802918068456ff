/**
 * Segment encoders. Each maps one audio segment at 16 kHz to a single
 * mean-pooled embedding vector.
 *
 * "spectral" is the built-in deterministic encoder: 25 ms frames every
 * 10 ms, per frame the log power at 32 geometrically spaced analysis
 * frequencies (Goertzel), mean-pooled over the segment's frames. It runs
 * fully offline and reruns are bit-identical, which makes it the default
 * for pipelines and tests.
 *
 * "xlsr" loads a pretrained multilingual speech encoder through
 * @huggingface/transformers when that package and its weights are
 * available, mean-pooling the final hidden states per segment.
 */

import { createHash } from 'node:crypto';

export interface SegmentEncoder {
  name: string;
  dim: number;
  /** Stable identifier of the exact model/configuration, for the export log. */
  modelHash: string;
  encode(segment: Float64Array, sampleRate: number): Float32Array | Promise<Float32Array>;
}

const FRAME_SECONDS = 0.025;
const HOP_SECONDS = 0.01;
const SPECTRAL_DIM = 32;
const F_LO = 50;
const F_HI = 7800;

function hashOf(description: string): string {
  return createHash('sha256').update(description).digest('hex').slice(0, 12);
}

/** Power of the DFT of `frame` at frequency `hz` via the Goertzel recurrence. */
function goertzelPower(frame: Float64Array, start: number, len: number, hz: number, rate: number): number {
  const w = (2 * Math.PI * hz) / rate;
  const coeff = 2 * Math.cos(w);
  let s1 = 0;
  let s2 = 0;
  for (let i = 0; i < len; i++) {
    const s0 = frame[start + i]! + coeff * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

export function createSpectralEncoder(): SegmentEncoder {
  const freqs: number[] = [];
  for (let k = 0; k < SPECTRAL_DIM; k++) {
    freqs.push(F_LO * Math.pow(F_HI / F_LO, k / (SPECTRAL_DIM - 1)));
  }
  return {
    name: 'spectral',
    dim: SPECTRAL_DIM,
    modelHash: hashOf(`spectral-v1 dim=${SPECTRAL_DIM} f=${F_LO}-${F_HI} frame=${FRAME_SECONDS} hop=${HOP_SECONDS}`),
    encode(segment: Float64Array, sampleRate: number): Float32Array {
      const frameLen = Math.round(FRAME_SECONDS * sampleRate);
      const hop = Math.round(HOP_SECONDS * sampleRate);
      const nFrames = segment.length >= frameLen ? Math.floor((segment.length - frameLen) / hop) + 1 : 1;
      const pooled = new Float64Array(SPECTRAL_DIM);
      for (let f = 0; f < nFrames; f++) {
        const start = f * hop;
        const len = Math.min(frameLen, segment.length - start);
        for (let k = 0; k < SPECTRAL_DIM; k++) {
          const p = goertzelPower(segment, start, len, freqs[k]!, sampleRate) / len;
          pooled[k] = pooled[k]! + Math.log(Math.max(p, 1e-10));
        }
      }
      const out = new Float32Array(SPECTRAL_DIM);
      for (let k = 0; k < SPECTRAL_DIM; k++) {
        out[k] = pooled[k]! / nFrames;
      }
      return out;
    },
  };
}

export async function createXlsrEncoder(modelId = 'facebook/wav2vec2-large-xlsr-53'): Promise<SegmentEncoder> {
  let transformers: any;
  try {
    transformers = await import('@huggingface/transformers' as string);
  } catch {
    throw new Error(
      'the xlsr encoder needs the @huggingface/transformers package and local model weights; ' +
        'install it or use --model spectral',
    );
  }
  const extractor = await transformers.pipeline('feature-extraction', modelId);
  const dim = extractor.model.config.hidden_size as number;
  return {
    name: 'xlsr',
    dim,
    modelHash: hashOf(`xlsr ${modelId} dim=${dim}`),
    async encode(segment: Float64Array, _sampleRate: number): Promise<Float32Array> {
      const output = await extractor(Float32Array.from(segment), { pooling: 'mean' });
      return Float32Array.from(output.data as ArrayLike<number>);
    },
  };
}

export async function createEncoder(model: string): Promise<SegmentEncoder> {
  switch (model) {
    case 'spectral':
      return createSpectralEncoder();
    case 'xlsr':
      return createXlsrEncoder();
    case 'text':
      throw new Error('the transcript text encoder is not implemented; use spectral or xlsr');
    default:
      throw new Error(`unknown encoder model ${model}`);
  }
}
