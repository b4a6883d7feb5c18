import { readFileSync } from 'fs';
import { describe, expect, it } from 'vitest';

import { CsvError, parseSweepCsv } from '../src/csv.js';

const HEADER = 'experiment,scheme,grid,x,metric,mean,stderr,trials';

describe('parseSweepCsv', () => {
  it('parses a real harness file into typed rows', () => {
    const text = readFileSync('tests/fixtures/nmse-vs-pilot.csv', 'utf8');
    const rows = parseSweepCsv(text);
    expect(rows).toHaveLength(20);
    expect(rows[0]).toMatchObject({
      experiment: 'nmse-vs-pilot',
      scheme: 'bomp',
      grid: 'on',
      metric: 'nmse',
    });
    expect(typeof rows[0].x).toBe('number');
    expect(rows[0].mean).toBeGreaterThan(0);
    expect(rows[0].trials).toBe(2);
  });

  it('rejects a wrong header', () => {
    const text = 'a,b,c\n1,2,3\n';
    expect(() => parseSweepCsv(text)).toThrow(CsvError);
    expect(() => parseSweepCsv(text)).toThrow(/unexpected header/);
  });

  it('rejects a header-only file', () => {
    expect(() => parseSweepCsv(`${HEADER}\n`)).toThrow(/no data rows/);
  });

  it('rejects non-numeric values with the offending line', () => {
    const text = `${HEADER}\nnmse-vs-pilot,bomp,on,10,nmse,oops,0.1,2\n`;
    expect(() => parseSweepCsv(text)).toThrow(/line 2.*mean/);
  });

  it('rejects rows with missing fields', () => {
    const text = `${HEADER}\nnmse-vs-pilot,bomp,on,10,nmse,0.5\n`;
    expect(() => parseSweepCsv(text)).toThrow(CsvError);
  });

  it('rejects non-positive or fractional trial counts', () => {
    const zero = `${HEADER}\nnmse-vs-pilot,bomp,on,10,nmse,0.5,0.1,0\n`;
    const frac = `${HEADER}\nnmse-vs-pilot,bomp,on,10,nmse,0.5,0.1,1.5\n`;
    expect(() => parseSweepCsv(zero)).toThrow(/trials/);
    expect(() => parseSweepCsv(frac)).toThrow(/trials/);
  });
});
