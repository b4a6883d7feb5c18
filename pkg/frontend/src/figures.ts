/** Per-figure layout: which experiment feeds it and how the axes look. */

export interface FigureSpec {
  input: string;
  figure: 1 | 2 | 3;
  output: string;
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
  experiment: string;
  metric: string;
}

interface FigureStyle {
  experiment: string;
  metric: string;
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
}

const STYLES: Record<number, FigureStyle> = {
  1: {
    experiment: 'nmse-vs-pilot',
    metric: 'nmse',
    title: 'channel estimation error vs pilot length',
    xLabel: 'pilot length N',
    yLabel: 'NMSE',
    xLog: false,
    yLog: true,
  },
  2: {
    experiment: 'rate-vs-pilot',
    metric: 'rate',
    title: 'achievable rate vs pilot length',
    xLabel: 'pilot length N',
    yLabel: 'rate (bits/symbol)',
    xLog: false,
    yLog: false,
  },
  3: {
    experiment: 'rate-vs-power',
    metric: 'rate',
    title: 'achievable rate vs transmit power',
    xLabel: 'transmit power (dBm)',
    yLabel: 'rate (bits/symbol)',
    xLog: false,
    yLog: false,
  },
};

export function figureSpec(figure: number, input: string, output: string): FigureSpec {
  const style = STYLES[figure];
  if (!style) {
    throw new Error(`unknown figure id ${figure}, expected 1, 2 or 3`);
  }
  return { input, output, figure: figure as 1 | 2 | 3, ...style };
}
