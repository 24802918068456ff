/**
 * Reader for the adspeech manifest CSV: header `id,path,label,mmse,split`,
 * one recording per row. Only the columns the exporter needs are surfaced.
 */

export interface ManifestEntry {
  id: string;
  audioPath: string;
  split: string;
}

const HEADER = 'id,path,label,mmse,split';

/** Split one CSV record, honoring double-quoted fields with "" escapes. */
export function splitCsvLine(line: string): string[] {
  const fields: string[] = [];
  let field = '';
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          field += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch === '"' && field === '') {
      quoted = true;
    } else if (ch === ',') {
      fields.push(field);
      field = '';
    } else {
      field += ch;
    }
  }
  fields.push(field);
  return fields;
}

export function parseManifest(text: string): ManifestEntry[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0 || lines[0] !== HEADER) {
    throw new Error(`manifest must start with header "${HEADER}"`);
  }
  const entries: ManifestEntry[] = [];
  const seen = new Set<string>();
  for (let i = 1; i < lines.length; i++) {
    const fields = splitCsvLine(lines[i]!);
    if (fields.length !== 5) {
      throw new Error(`line ${i + 1}: expected 5 fields, got ${fields.length}`);
    }
    const [id, path, , , split] = fields as [string, string, string, string, string];
    if (id === '' || path === '') {
      throw new Error(`line ${i + 1}: id and path are required`);
    }
    if (seen.has(id)) {
      throw new Error(`line ${i + 1}: duplicate id ${id}`);
    }
    seen.add(id);
    entries.push({ id, audioPath: path, split });
  }
  return entries;
}
