/**
 * Batch export: manifest in, one .aeb file per recording out.
 *
 * Per recording: decode WAV, resample to 16 kHz, cut into fixed-length
 * segments with the adspeech tail rule, encode each segment, write
 * `<utt_id>.aeb`. Failures never abort the batch; every recording gets one
 * log line `utt_id,status,dim,n_segments,model_hash` and the job reports
 * how many failed.
 */

import { readFileSync, writeFileSync, mkdirSync } from 'node:fs';
import { join } from 'node:path';

import { encodeAeb } from './aeb.js';
import { SegmentEncoder } from './encoder.js';
import { parseManifest } from './manifest.js';
import { segment } from './segment.js';
import { decodeWav, resample } from './wav.js';

export const TARGET_RATE = 16000;
export const LOG_HEADER = 'utt_id,status,dim,n_segments,model_hash';

export interface BridgeJob {
  manifestPath: string;
  outDir: string;
  encoder: SegmentEncoder;
  segmentSeconds: number;
  minTailFraction: number;
}

export interface ExportResult {
  logLines: string[];
  nOk: number;
  nFailed: number;
}

export async function exportEmbeddings(job: BridgeJob): Promise<ExportResult> {
  const entries = parseManifest(readFileSync(job.manifestPath, 'utf-8'));
  mkdirSync(job.outDir, { recursive: true });
  const logLines = [LOG_HEADER];
  let nOk = 0;
  let nFailed = 0;
  for (const entry of entries) {
    let status: string;
    let detail = ',';
    try {
      const clip = resample(decodeWav(readFileSync(entry.audioPath)), TARGET_RATE);
      const segments = segment(clip.samples, clip.sampleRate, job.segmentSeconds, job.minTailFraction);
      if (segments.length === 0) {
        throw new Error(`shorter than ${job.minTailFraction * job.segmentSeconds} s, no segments kept`);
      }
      const vectors: Float32Array[] = [];
      for (const seg of segments) {
        vectors.push(await job.encoder.encode(seg, clip.sampleRate));
      }
      writeFileSync(join(job.outDir, `${entry.id}.aeb`), encodeAeb(vectors, job.encoder.dim));
      status = 'ok';
      detail = `${job.encoder.dim},${vectors.length}`;
      nOk++;
    } catch (err) {
      const code = (err as NodeJS.ErrnoException).code;
      status = code === 'ENOENT' ? 'missing' : 'decode_error';
      console.error(`${entry.id}: ${(err as Error).message}`);
      nFailed++;
    }
    logLines.push(`${entry.id},${status},${detail},${job.encoder.modelHash}`);
  }
  writeFileSync(join(job.outDir, 'export_log.csv'), logLines.join('\n') + '\n');
  return { logLines, nOk, nFailed };
}
