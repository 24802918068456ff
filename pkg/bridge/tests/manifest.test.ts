import { describe, expect, it } from 'vitest';

import { parseManifest, splitCsvLine } from '../src/manifest.js';

describe('splitCsvLine', () => {
  it('splits plain fields', () => {
    expect(splitCsvLine('a,b,,d')).toEqual(['a', 'b', '', 'd']);
  });

  it('honours quotes and "" escapes', () => {
    expect(splitCsvLine('"with, comma",plain')).toEqual(['with, comma', 'plain']);
    expect(splitCsvLine('"say ""hi""",x')).toEqual(['say "hi"', 'x']);
  });
});

describe('parseManifest', () => {
  it('reads id, path, and split from the 5-column layout', () => {
    const entries = parseManifest(
      'id,path,label,mmse,split\nu0,/tmp/a.wav,cn,29,train\nu1,/tmp/b.wav,,,test\n',
    );
    expect(entries.length).toBe(2);
    expect(entries[0]).toEqual({ id: 'u0', audioPath: '/tmp/a.wav', split: 'train' });
    expect(entries[1]!.split).toBe('test');
  });

  it('unescapes quoted paths', () => {
    const entries = parseManifest(
      'id,path,label,mmse,split\nu0,"/tmp/with, comma.wav",cn,29,train\n',
    );
    expect(entries[0]!.audioPath).toBe('/tmp/with, comma.wav');
  });

  it('accepts CRLF line endings', () => {
    const entries = parseManifest('id,path,label,mmse,split\r\nu0,/tmp/a.wav,cn,29,train\r\n');
    expect(entries.length).toBe(1);
  });

  it('rejects a wrong header', () => {
    expect(() => parseManifest('utt,file\nu0,/tmp/a.wav\n')).toThrow(/header/);
  });

  it('rejects rows with the wrong field count, naming the line', () => {
    expect(() => parseManifest('id,path,label,mmse,split\nu0,/tmp/a.wav,cn\n')).toThrow(/line 2/);
  });

  it('rejects duplicate ids and empty required fields', () => {
    expect(() =>
      parseManifest(
        'id,path,label,mmse,split\nu0,/tmp/a.wav,cn,29,train\nu0,/tmp/b.wav,ad,20,test\n',
      ),
    ).toThrow(/duplicate/);
    expect(() => parseManifest('id,path,label,mmse,split\n,/tmp/a.wav,cn,29,train\n')).toThrow(
      /id/,
    );
  });
});
