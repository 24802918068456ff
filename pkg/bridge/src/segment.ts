/**
 * Fixed-length segmentation with the adspeech tail rule: consecutive
 * non-overlapping windows of round(segmentSeconds * rate) samples, keeping
 * the final partial window iff it reaches minTailFraction of a full one.
 * The arithmetic matches the toolkit exactly, including Python's
 * round-half-to-even for the window length.
 */

/** Python's round(): banker's rounding, halves go to the even integer. */
export function pythonRound(x: number): number {
  const floor = Math.floor(x);
  const diff = x - floor;
  if (diff > 0.5) return floor + 1;
  if (diff < 0.5) return floor;
  return floor % 2 === 0 ? floor : floor + 1;
}

export function segmentCount(
  nSamples: number,
  sampleRate: number,
  segmentSeconds: number,
  minTailFraction = 0.5,
): number {
  if (segmentSeconds <= 0) {
    throw new Error('segmentSeconds must be positive');
  }
  if (minTailFraction < 0 || minTailFraction > 1) {
    throw new Error('minTailFraction must be in [0, 1]');
  }
  const nSeg = pythonRound(segmentSeconds * sampleRate);
  const full = Math.floor(nSamples / nSeg);
  const tail = nSamples - full * nSeg;
  return tail > 0 && tail >= minTailFraction * nSeg ? full + 1 : full;
}

export function segment(
  samples: Float64Array,
  sampleRate: number,
  segmentSeconds: number,
  minTailFraction = 0.5,
): Float64Array[] {
  if (samples.length === 0) {
    throw new Error('cannot segment an empty clip');
  }
  const count = segmentCount(samples.length, sampleRate, segmentSeconds, minTailFraction);
  const nSeg = pythonRound(segmentSeconds * sampleRate);
  const out: Float64Array[] = [];
  for (let i = 0; i < count; i++) {
    out.push(samples.subarray(i * nSeg, Math.min((i + 1) * nSeg, samples.length)));
  }
  return out;
}
