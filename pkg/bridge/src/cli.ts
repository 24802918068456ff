#!/usr/bin/env node
/**
 * Command line entry: adspeech-bridge --manifest m.csv --out-dir emb
 *                       [--model spectral|xlsr] [--segment-seconds 6]
 *                       [--min-tail-fraction 0.5]
 */

import { parseArgs } from 'node:util';

import { createEncoder } from './encoder.js';
import { exportEmbeddings } from './exporter.js';

export async function main(argv: string[]): Promise<number> {
  const { values } = parseArgs({
    args: argv,
    options: {
      manifest: { type: 'string' },
      'out-dir': { type: 'string' },
      model: { type: 'string', default: 'spectral' },
      'segment-seconds': { type: 'string', default: '6' },
      'min-tail-fraction': { type: 'string', default: '0.5' },
    },
  });
  if (!values.manifest || !values['out-dir']) {
    console.error('usage: adspeech-bridge --manifest <csv> --out-dir <dir> [--model spectral|xlsr]');
    return 2;
  }
  const encoder = await createEncoder(values.model!);
  const result = await exportEmbeddings({
    manifestPath: values.manifest,
    outDir: values['out-dir'],
    encoder,
    segmentSeconds: Number(values['segment-seconds']),
    minTailFraction: Number(values['min-tail-fraction']),
  });
  console.log(`exported ${result.nOk} recordings to ${values['out-dir']} (${result.nFailed} failed)`);
  return result.nFailed === 0 ? 0 : 1;
}

const invokedDirectly = process.argv[1] && import.meta.url.endsWith(process.argv[1].split('/').pop()!);
if (invokedDirectly) {
  main(process.argv.slice(2))
    .then((code) => process.exit(code))
    .catch((err) => {
      console.error(`error: ${(err as Error).message}`);
      process.exit(1);
    });
}
