import { colorBar, frameAxes, makeFrame } from '../chart.js';
import { FigureSpec, MASK_THRESHOLD } from '../figures.js';
import { edgesFromCenters, tableGrid } from '../grid.js';
import { scaleValue } from '../scale.js';
import { Table } from '../table.js';
import { el, svgDocument } from '../svg.js';
import { viridisHex } from '../viridis.js';

const WIDTH = 560;
const HEIGHT = 420;

export function renderHeatmap(spec: FigureSpec, table: Table): string {
  const grid = tableGrid(table, 'lambda_over_kappa', 'omega_over_kappa', 'fidelity');
  const mask = spec.maskBelow ?? MASK_THRESHOLD;
  const [lo, hi] = spec.colorDomain ?? [mask, 1];
  const xEdges = edgesFromCenters(grid.xs);
  const yEdges = edgesFromCenters(grid.ys);
  const frame = makeFrame(
    { left: 55, top: 35, width: WIDTH - 140, height: HEIGHT - 90 },
    [xEdges[0], xEdges[xEdges.length - 1]],
    [yEdges[0], yEdges[yEdges.length - 1]],
  );
  const pieces: string[] = [];
  // Light backdrop so masked (below-threshold) cells read as absent.
  pieces.push(
    el('rect', {
      x: frame.box.left,
      y: frame.box.top,
      width: frame.box.width,
      height: frame.box.height,
      fill: '#eeeeee',
    }),
  );
  for (let i = 0; i < grid.xs.length; i++) {
    for (let j = 0; j < grid.ys.length; j++) {
      const value = grid.values[i][j];
      if (value < mask) continue;
      const x0 = scaleValue(frame.x, xEdges[i]);
      const x1 = scaleValue(frame.x, xEdges[i + 1]);
      const y0 = scaleValue(frame.y, yEdges[j]);
      const y1 = scaleValue(frame.y, yEdges[j + 1]);
      const fill = viridisHex((value - lo) / (hi - lo));
      pieces.push(
        el('rect', {
          x: Math.min(x0, x1),
          y: Math.min(y0, y1),
          width: Math.abs(x1 - x0) + 0.4,
          height: Math.abs(y1 - y0) + 0.4,
          fill,
          class: 'cell',
        }),
      );
    }
  }
  pieces.push(frameAxes(frame, 'λ/κ', 'Ω/κ', spec.title));
  pieces.push(
    colorBar(
      { left: WIDTH - 70, top: frame.box.top, width: 16, height: frame.box.height },
      [lo, hi],
      'F',
    ),
  );
  return svgDocument(WIDTH, HEIGHT, pieces.join(''));
}
