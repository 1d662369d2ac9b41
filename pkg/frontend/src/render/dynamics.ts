import { Frame, frameAxes, legend, makeFrame } from '../chart.js';
import { FigureSpec } from '../figures.js';
import { Table, column } from '../table.js';
import { scaleValue } from '../scale.js';
import { Attrs, polyline, svgDocument } from '../svg.js';

// Series styling follows the shipped panels: fidelity solid black, mean
// photon number dashed purple, P(e) dash-dotted red, P(g) dotted blue.
export const DYNAMICS_SERIES = [
  { column: 'fidelity', label: 'fidelity', stroke: '#000000', dash: '' },
  { column: 'n_mean', label: 'mean photons', stroke: '#8e44ad', dash: '9 5' },
  { column: 'p_e', label: 'P(e)', stroke: '#d62728', dash: '10 4 2 4' },
  { column: 'p_g', label: 'P(g)', stroke: '#1f77b4', dash: '2 4' },
] as const;

const WIDTH = 560;
const HEIGHT = 390;

export function renderDynamics(spec: FigureSpec, table: Table): string {
  const times = column(table, 't_us');
  const series = DYNAMICS_SERIES.map((style) => ({
    style,
    values: column(table, style.column),
  }));
  const top = Math.max(1, ...series.map(({ values }) => Math.max(...values)));
  const frame = makeFrame(
    { left: 55, top: 35, width: WIDTH - 80, height: HEIGHT - 90 },
    [0, Math.max(...times)],
    [0, top * 1.05],
  );
  const pieces = [frameAxes(frame, 't (µs)', 'fidelity, populations', spec.title)];
  for (const { style, values } of series) {
    pieces.push(seriesLine(frame, times, values, style.stroke, style.dash));
  }
  pieces.push(
    legend(
      frame,
      DYNAMICS_SERIES.map(({ label, stroke, dash }) => ({ label, stroke, dash })),
      'left',
    ),
  );
  return svgDocument(WIDTH, HEIGHT, pieces.join(''));
}

function seriesLine(
  frame: Frame,
  times: number[],
  values: number[],
  stroke: string,
  dash: string,
): string {
  const attrs: Attrs = { stroke, 'stroke-width': 1.6, class: 'series' };
  if (dash !== '') attrs['stroke-dasharray'] = dash;
  return polyline(
    times.map((t) => scaleValue(frame.x, t)),
    values.map((v) => scaleValue(frame.y, v)),
    attrs,
  );
}
