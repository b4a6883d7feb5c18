/** Deterministic SVG line charts: fixed size, fixed palette, no timestamps. */

export interface Point {
  x: number;
  y: number;
  /** half-length of the error bar; 0 draws none */
  err: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
}

const WIDTH = 840;
const HEIGHT = 520;
const MARGIN = { top: 44, right: 250, bottom: 58, left: 78 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const PALETTE = [
  '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
  '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf',
];

/** printf %g flavored formatting so tick labels stay short and stable */
export function fmt(value: number): string {
  if (value === 0) return '0';
  return Number(value.toPrecision(6)).toString();
}

function niceStep(rough: number): number {
  const power = Math.pow(10, Math.floor(Math.log10(rough)));
  const unit = rough / power;
  if (unit <= 1) return power;
  if (unit <= 2) return 2 * power;
  if (unit <= 5) return 5 * power;
  return 10 * power;
}

interface Scale {
  lo: number;
  hi: number;
  ticks: number[];
  place(value: number): number; // 0..1 along the axis
}

function linearScale(lo: number, hi: number): Scale {
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const step = niceStep((hi - lo) / 5);
  lo = Math.floor(lo / step) * step;
  hi = Math.ceil(hi / step) * step;
  const ticks: number[] = [];
  // float-safe tick walk
  const n = Math.round((hi - lo) / step);
  for (let i = 0; i <= n; i++) ticks.push(lo + i * step);
  return { lo, hi, ticks, place: (v) => (v - lo) / (hi - lo) };
}

function logScale(lo: number, hi: number): Scale {
  const dLo = Math.floor(Math.log10(lo));
  const dHi = Math.ceil(Math.log10(hi));
  const top = dHi > dLo ? dHi : dLo + 1;
  const ticks: number[] = [];
  for (let d = dLo; d <= top; d++) ticks.push(Math.pow(10, d));
  const a = Math.log10(ticks[0]);
  const b = Math.log10(ticks[ticks.length - 1]);
  return {
    lo: ticks[0],
    hi: ticks[ticks.length - 1],
    ticks,
    place: (v) => (Math.log10(v) - a) / (b - a),
  };
}

function makeScale(values: number[], log: boolean, label: string): Scale {
  if (log) {
    const positive = values.filter((v) => v > 0);
    if (positive.length !== values.length) {
      throw new Error(`${label} is drawn on a log axis but has values <= 0`);
    }
    return logScale(Math.min(...positive), Math.max(...positive));
  }
  return linearScale(Math.min(...values), Math.max(...values));
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

export function renderChart(series: Series[], options: ChartOptions): string {
  if (series.length === 0) {
    throw new Error('nothing to plot: no series');
  }
  for (const s of series) {
    if (s.points.length === 0) {
      throw new Error(`series "${s.label}" has no points`);
    }
  }
  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) =>
    s.points.flatMap((p) => (p.err > 0 ? [p.y, p.y + p.err] : [p.y])));
  // lower error-bar ends may cross zero; they get clamped, not scaled for
  if (!options.yLog) {
    ys.push(...series.flatMap((s) =>
      s.points.flatMap((p) => (p.err > 0 ? [p.y - p.err] : []))));
  }
  const xScale = makeScale(xs, options.xLog, 'x');
  const yScale = makeScale(ys, options.yLog, 'y');
  const px = (v: number) => MARGIN.left + xScale.place(v) * PLOT_W;
  const py = (v: number) => MARGIN.top + (1 - yScale.place(v)) * PLOT_H;
  const clampY = (v: number) => Math.min(yScale.hi, Math.max(yScale.lo, v));

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`);
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(`<text class="title" x="${MARGIN.left + PLOT_W / 2}" y="24" text-anchor="middle" font-size="16">${esc(options.title)}</text>`);

  // frame and grid
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + PLOT_H;
  parts.push(`<rect x="${x0}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" fill="none" stroke="#333333"/>`);
  for (const t of xScale.ticks) {
    const x = px(t);
    parts.push(`<line x1="${fmt(x)}" y1="${y0}" x2="${fmt(x)}" y2="${y0 + 5}" stroke="#333333"/>`);
    parts.push(`<text class="xtick" x="${fmt(x)}" y="${y0 + 20}" text-anchor="middle" font-size="12">${fmt(t)}</text>`);
  }
  for (const t of yScale.ticks) {
    const y = py(t);
    parts.push(`<line x1="${x0}" y1="${fmt(y)}" x2="${x0 + PLOT_W}" y2="${fmt(y)}" stroke="#dddddd"/>`);
    parts.push(`<line x1="${x0 - 5}" y1="${fmt(y)}" x2="${x0}" y2="${fmt(y)}" stroke="#333333"/>`);
    parts.push(`<text class="ytick" x="${x0 - 9}" y="${fmt(y + 4)}" text-anchor="end" font-size="12">${fmt(t)}</text>`);
  }
  parts.push(`<text class="xlabel" x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="14">${esc(options.xLabel)}</text>`);
  parts.push(`<text class="ylabel" x="20" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="14" transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">${esc(options.yLabel)}</text>`);

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = [...s.points].sort((a, b) => a.x - b.x);
    const coord = pts.map((p) => `${fmt(px(p.x))},${fmt(py(p.y))}`).join(' ');
    parts.push(`<g class="series" data-label="${esc(s.label)}">`);
    for (const p of pts) {
      if (p.err > 0) {
        const x = fmt(px(p.x));
        const yLo = fmt(py(clampY(p.y - p.err)));
        const yHi = fmt(py(clampY(p.y + p.err)));
        parts.push(`<line class="errorbar" x1="${x}" y1="${yLo}" x2="${x}" y2="${yHi}" stroke="${color}" stroke-width="1"/>`);
        parts.push(`<line x1="${fmt(px(p.x) - 3)}" y1="${yLo}" x2="${fmt(px(p.x) + 3)}" y2="${yLo}" stroke="${color}" stroke-width="1"/>`);
        parts.push(`<line x1="${fmt(px(p.x) - 3)}" y1="${yHi}" x2="${fmt(px(p.x) + 3)}" y2="${yHi}" stroke="${color}" stroke-width="1"/>`);
      }
    }
    parts.push(`<polyline fill="none" stroke="${color}" stroke-width="1.8" points="${coord}"/>`);
    for (const p of pts) {
      parts.push(`<circle cx="${fmt(px(p.x))}" cy="${fmt(py(p.y))}" r="3" fill="${color}"/>`);
    }
    parts.push('</g>');
  });

  // legend down the right edge, one entry per series
  const lx = MARGIN.left + PLOT_W + 18;
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const y = MARGIN.top + 10 + i * 22;
    parts.push(`<line x1="${lx}" y1="${y}" x2="${lx + 24}" y2="${y}" stroke="${color}" stroke-width="1.8"/>`);
    parts.push(`<circle cx="${lx + 12}" cy="${y}" r="3" fill="${color}"/>`);
    parts.push(`<text class="legend-label" x="${lx + 30}" y="${y + 4}" font-size="12">${esc(s.label)}</text>`);
  });

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
