import Papa from 'papaparse';

export const EXPECTED_HEADER = [
  'experiment', 'scheme', 'grid', 'x', 'metric', 'mean', 'stderr', 'trials',
];

export interface SweepRow {
  experiment: string;
  scheme: string;
  grid: string;
  x: number;
  metric: string;
  mean: number;
  stderr: number;
  trials: number;
}

/** Raised for anything that makes the CSV unusable; message says what. */
export class CsvError extends Error {}

function toNumber(raw: string, field: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === '' || !Number.isFinite(value)) {
    throw new CsvError(`line ${line}: field "${field}" is not a finite number (got "${raw}")`);
  }
  return value;
}

/** Parse and validate one harness CSV; throws CsvError on any deviation. */
export function parseSweepCsv(text: string): SweepRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  if (fields.join(',') !== EXPECTED_HEADER.join(',')) {
    throw new CsvError(
      `unexpected header "${fields.join(',')}", want "${EXPECTED_HEADER.join(',')}"`);
  }
  if (parsed.data.length === 0) {
    throw new CsvError('no data rows after the header');
  }
  const rows: SweepRow[] = [];
  parsed.data.forEach((record, i) => {
    const line = i + 2; // header is line 1
    for (const field of EXPECTED_HEADER) {
      if (record[field] === undefined || record[field] === '') {
        throw new CsvError(`line ${line}: missing field "${field}"`);
      }
    }
    if (Object.keys(record).length !== EXPECTED_HEADER.length) {
      throw new CsvError(`line ${line}: wrong number of fields`);
    }
    const trials = toNumber(record.trials, 'trials', line);
    if (!Number.isInteger(trials) || trials < 1) {
      throw new CsvError(`line ${line}: trials must be a positive integer`);
    }
    rows.push({
      experiment: record.experiment,
      scheme: record.scheme,
      grid: record.grid,
      x: toNumber(record.x, 'x', line),
      metric: record.metric,
      mean: toNumber(record.mean, 'mean', line),
      stderr: toNumber(record.stderr, 'stderr', line),
      trials,
    });
  });
  return rows;
}
