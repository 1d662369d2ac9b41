import { LegendEntry, frameAxes, legend, makeFrame } from '../chart.js';
import { FigureSpec } from '../figures.js';
import { uniqueSorted } from '../grid.js';
import { scaleValue, tickLabel } from '../scale.js';
import { Table, column } from '../table.js';
import { Attrs, polyline, svgDocument } from '../svg.js';

const WIDTH = 560;
const HEIGHT = 390;

const STROKES = ['#1f77b4', '#d62728', '#2ca02c', '#8e44ad'];
const DASHES = ['', '7 4'];

interface Series {
  label: string;
  stroke: string;
  dash: string;
  lambdas: number[];
  fidelities: number[];
}

export function renderThermalLines(spec: FigureSpec, tables: Table[]): string {
  const labels = spec.seriesLabels ?? tables.map((table) => table.path);
  const series: Series[] = [];
  tables.forEach((table, t) => {
    const lambdas = column(table, 'lambda_over_kappa');
    const nbars = column(table, 'nbar');
    const fidelities = column(table, 'fidelity');
    uniqueSorted(nbars).forEach((nbar, k) => {
      const picked = nbars
        .map((value, i) => (value === nbar ? i : -1))
        .filter((i) => i >= 0)
        .sort((a, b) => lambdas[a] - lambdas[b]);
      series.push({
        label: `${labels[t]}, n̄ = ${tickLabel(nbar)}`,
        stroke: STROKES[t % STROKES.length],
        dash: DASHES[k % DASHES.length],
        lambdas: picked.map((i) => lambdas[i]),
        fidelities: picked.map((i) => fidelities[i]),
      });
    });
  });

  const allLambdas = series.flatMap((s) => s.lambdas);
  const allFidelities = series.flatMap((s) => s.fidelities);
  const yLow = Math.max(0, Math.min(...allFidelities) - 0.05);
  const frame = makeFrame(
    { left: 55, top: 35, width: WIDTH - 80, height: HEIGHT - 90 },
    [Math.min(...allLambdas), Math.max(...allLambdas)],
    [yLow, 1],
  );
  const pieces = [frameAxes(frame, 'λ/κ', 'fidelity', spec.title)];
  const entries: LegendEntry[] = [];
  for (const s of series) {
    const attrs: Attrs = { stroke: s.stroke, 'stroke-width': 1.6, class: 'series' };
    if (s.dash !== '') attrs['stroke-dasharray'] = s.dash;
    pieces.push(
      polyline(
        s.lambdas.map((v) => scaleValue(frame.x, v)),
        s.fidelities.map((v) => scaleValue(frame.y, v)),
        attrs,
      ),
    );
    entries.push({ label: s.label, stroke: s.stroke, dash: s.dash });
  }
  pieces.push(legend(frame, entries, 'right'));
  return svgDocument(WIDTH, HEIGHT, pieces.join(''));
}
