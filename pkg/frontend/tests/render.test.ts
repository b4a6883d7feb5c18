import { existsSync, mkdtempSync, readFileSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { describe, expect, it } from 'vitest';

import { figureSpec } from '../src/figures.js';
import { buildFigureSvg, renderFigure } from '../src/render.js';
import { renderChart } from '../src/svg.js';

const HEADER = 'experiment,scheme,grid,x,metric,mean,stderr,trials';

function countMatches(text: string, pattern: RegExp): number {
  return (text.match(pattern) ?? []).length;
}

function tmpOut(name: string): string {
  return join(mkdtempSync(join(tmpdir(), 'figplots-')), name);
}

describe('buildFigureSvg', () => {
  const fixtures: Array<[1 | 2 | 3, string, number]> = [
    [1, 'tests/fixtures/nmse-vs-pilot.csv', 4],
    [2, 'tests/fixtures/rate-vs-pilot.csv', 8],
    [3, 'tests/fixtures/rate-vs-power.csv', 7],
  ];

  it.each(fixtures)('figure %i has the expected series count', (fig, path, n) => {
    const spec = figureSpec(fig, path, 'unused.svg');
    const svg = buildFigureSvg(spec, readFileSync(path, 'utf8'));
    expect(countMatches(svg, /class="series"/g)).toBe(n);
    expect(countMatches(svg, /class="legend-label"/g)).toBe(n);
  });

  it('draws error bars when trials > 1 and none for single trials', () => {
    const path = 'tests/fixtures/nmse-vs-pilot.csv';
    const spec = figureSpec(1, path, 'unused.svg');
    const withBars = buildFigureSvg(spec, readFileSync(path, 'utf8'));
    expect(countMatches(withBars, /class="errorbar"/g)).toBeGreaterThan(0);

    const single = [
      HEADER,
      'nmse-vs-pilot,bomp,on,10,nmse,0.5,0.1,1',
      'nmse-vs-pilot,bomp,on,20,nmse,0.25,0.1,1',
    ].join('\n');
    const bare = buildFigureSvg(spec, single);
    expect(countMatches(bare, /class="errorbar"/g)).toBe(0);
  });

  it('labels series with the grid only when several grids are present', () => {
    const spec1 = figureSpec(1, 'x.csv', 'y.svg');
    const both = buildFigureSvg(spec1, readFileSync(
      'tests/fixtures/nmse-vs-pilot.csv', 'utf8'));
    expect(both).toContain('bomp (on-grid)');
    expect(both).toContain('bomp (off-grid)');
    const spec2 = figureSpec(2, 'x.csv', 'y.svg');
    const one = buildFigureSvg(spec2, readFileSync(
      'tests/fixtures/rate-vs-pilot.csv', 'utf8'));
    expect(one).toContain('>dam-mmse-perfect<');
    expect(one).not.toContain('(on-grid)');
  });

  it('uses decade ticks on the log axis of figure 1', () => {
    const spec = figureSpec(1, 'x.csv', 'y.svg');
    const svg = buildFigureSvg(spec, readFileSync(
      'tests/fixtures/nmse-vs-pilot.csv', 'utf8'));
    expect(svg).toMatch(/class="ytick"[^>]*>0\.01</);
    expect(svg).toMatch(/class="ytick"[^>]*>0\.1</);
  });

  it('rejects an experiment tag that does not match the figure', () => {
    const spec = figureSpec(2, 'x.csv', 'y.svg');
    const text = readFileSync('tests/fixtures/nmse-vs-pilot.csv', 'utf8');
    expect(() => buildFigureSvg(spec, text)).toThrow(/nmse-vs-pilot/);
  });

  it('rejects a metric that does not match the figure', () => {
    const spec = figureSpec(1, 'x.csv', 'y.svg');
    const text = `${HEADER}\nnmse-vs-pilot,bomp,on,10,rate,0.5,0.1,2\n`;
    expect(() => buildFigureSvg(spec, text)).toThrow(/metric/);
  });

  it('rejects non-positive values on a log axis', () => {
    const spec = figureSpec(1, 'x.csv', 'y.svg');
    const text = `${HEADER}\nnmse-vs-pilot,bomp,on,10,nmse,0,0,2\n`;
    expect(() => buildFigureSvg(spec, text)).toThrow(/log axis/);
  });

  it('rejects unknown figure ids', () => {
    expect(() => figureSpec(4, 'x.csv', 'y.svg')).toThrow(/unknown figure/);
  });
});

describe('renderFigure', () => {
  it('writes a two-series five-point chart with two legend entries', () => {
    const dir = mkdtempSync(join(tmpdir(), 'figplots-'));
    const input = join(dir, 'two.csv');
    const lines = [HEADER];
    for (const scheme of ['bomp', 'omp']) {
      for (const n of [10, 15, 20, 25, 30]) {
        lines.push(`nmse-vs-pilot,${scheme},on,${n},nmse,${1 / n},${0.01},3`);
      }
    }
    writeFileSync(input, lines.join('\n') + '\n');
    const output = join(dir, 'two.svg');
    renderFigure(figureSpec(1, input, output));
    expect(existsSync(output)).toBe(true);
    const svg = readFileSync(output, 'utf8');
    expect(countMatches(svg, /class="legend-label"/g)).toBe(2);
  });

  it('re-rendering the same input yields identical bytes', () => {
    const a = tmpOut('a.svg');
    const b = tmpOut('b.svg');
    renderFigure(figureSpec(3, 'tests/fixtures/rate-vs-power.csv', a));
    renderFigure(figureSpec(3, 'tests/fixtures/rate-vs-power.csv', b));
    expect(readFileSync(a).equals(readFileSync(b))).toBe(true);
  });

  it('does not create the output file when validation fails', () => {
    const dir = mkdtempSync(join(tmpdir(), 'figplots-'));
    const input = join(dir, 'empty.csv');
    writeFileSync(input, `${HEADER}\n`);
    const output = join(dir, 'empty.svg');
    expect(() => renderFigure(figureSpec(1, input, output))).toThrow(/no data rows/);
    expect(existsSync(output)).toBe(false);
  });
});

describe('renderChart', () => {
  it('rejects empty input', () => {
    const options = { title: 't', xLabel: 'x', yLabel: 'y',
                      xLog: false, yLog: false };
    expect(() => renderChart([], options)).toThrow(/no series/);
    expect(() => renderChart([{ label: 's', points: [] }], options))
      .toThrow(/has no points/);
  });

  it('escapes markup in labels', () => {
    const options = { title: 'a < b', xLabel: 'x', yLabel: 'y',
                      xLog: false, yLog: false };
    const svg = renderChart(
      [{ label: '<s>', points: [{ x: 1, y: 2, err: 0 }] }], options);
    expect(svg).toContain('a &lt; b');
    expect(svg).toContain('&lt;s&gt;');
  });
});
