/**
 * The .aeb embedding container consumed by the adspeech toolkit.
 *
 * Little-endian layout: magic "AEB1", uint32 dim, uint32 nSegments, then
 * nSegments x dim float32 values row-major. File size is exactly
 * 12 + 4 * dim * nSegments bytes.
 */

export class AebFormatError extends Error {}

const MAGIC = 'AEB1';

export function encodeAeb(vectors: Float32Array[], dim: number): Buffer {
  if (dim <= 0) {
    throw new AebFormatError('dim must be positive');
  }
  if (vectors.length === 0) {
    throw new AebFormatError('need at least one segment vector');
  }
  const buf = Buffer.alloc(12 + 4 * dim * vectors.length);
  buf.write(MAGIC, 0, 'ascii');
  buf.writeUInt32LE(dim, 4);
  buf.writeUInt32LE(vectors.length, 8);
  let off = 12;
  for (const vec of vectors) {
    if (vec.length !== dim) {
      throw new AebFormatError(`segment vector has dim ${vec.length}, expected ${dim}`);
    }
    for (const v of vec) {
      if (!Number.isFinite(v)) {
        throw new AebFormatError('non-finite embedding value');
      }
      buf.writeFloatLE(v, off);
      off += 4;
    }
  }
  return buf;
}

export function decodeAeb(bytes: Buffer): { dim: number; nSegments: number; vectors: Float32Array[] } {
  if (bytes.length < 12 || bytes.toString('ascii', 0, 4) !== MAGIC) {
    throw new AebFormatError('not an AEB1 file');
  }
  const dim = bytes.readUInt32LE(4);
  const nSegments = bytes.readUInt32LE(8);
  if (dim === 0 || nSegments === 0) {
    throw new AebFormatError('zero dim or segment count');
  }
  const expected = 12 + 4 * dim * nSegments;
  if (bytes.length !== expected) {
    throw new AebFormatError(`expected ${expected} bytes, got ${bytes.length}`);
  }
  const vectors: Float32Array[] = [];
  for (let s = 0; s < nSegments; s++) {
    const vec = new Float32Array(dim);
    for (let j = 0; j < dim; j++) {
      vec[j] = bytes.readFloatLE(12 + 4 * (s * dim + j));
    }
    vectors.push(vec);
  }
  return { dim, nSegments, vectors };
}
