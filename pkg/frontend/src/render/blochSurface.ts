import { colorBar } from '../chart.js';
import { FigureSpec } from '../figures.js';
import { tableGrid } from '../grid.js';
import { Table } from '../table.js';
import { el, fmt, svgDocument, text } from '../svg.js';
import { viridisHex } from '../viridis.js';

const WIDTH = 560;
const HEIGHT = 440;
const CENTER_X = 240;
const CENTER_Y = 230;
const RADIUS = 168;

// Fixed viewing angles for the orthographic sphere projection.
const AZIMUTH = -0.6;
const ELEVATION = 0.35;

interface Projected {
  px: number;
  py: number;
  depth: number;
}

function project(theta: number, phi: number): Projected {
  const x = Math.sin(theta) * Math.cos(phi);
  const y = Math.sin(theta) * Math.sin(phi);
  const z = Math.cos(theta);
  const xr = x * Math.cos(AZIMUTH) + y * Math.sin(AZIMUTH);
  const yr = -x * Math.sin(AZIMUTH) + y * Math.cos(AZIMUTH);
  return {
    px: CENTER_X + RADIUS * xr,
    py: CENTER_Y - RADIUS * (z * Math.cos(ELEVATION) - yr * Math.sin(ELEVATION)),
    depth: yr * Math.cos(ELEVATION) + z * Math.sin(ELEVATION),
  };
}

export function renderBlochSurface(spec: FigureSpec, table: Table): string {
  const grid = tableGrid(table, 'theta_rad', 'phi_rad', 'fidelity');
  const thetas = grid.xs;
  const phis = grid.ys;
  const [lo, hi] = spec.colorDomain ?? [0, 1];

  interface Quad {
    depth: number;
    path: string;
    fill: string;
  }
  const quads: Quad[] = [];
  for (let i = 0; i + 1 < thetas.length; i++) {
    for (let j = 0; j < phis.length; j++) {
      const jNext = (j + 1) % phis.length;
      // The phi axis wraps; the last cell closes the band at phi = 2*pi.
      const phiNext = jNext === 0 ? phis[0] + 2 * Math.PI : phis[jNext];
      const corners = [
        project(thetas[i], phis[j]),
        project(thetas[i], phiNext),
        project(thetas[i + 1], phiNext),
        project(thetas[i + 1], phis[j]),
      ];
      const mean =
        (grid.values[i][j] +
          grid.values[i][jNext] +
          grid.values[i + 1][jNext] +
          grid.values[i + 1][j]) /
        4;
      const fill = viridisHex((mean - lo) / (hi - lo));
      quads.push({
        depth: corners.reduce((sum, c) => sum + c.depth, 0) / corners.length,
        path: `M${corners.map((c) => `${fmt(c.px)} ${fmt(c.py)}`).join('L')}Z`,
        fill,
      });
    }
  }
  // Painter's algorithm: draw back cells first so near cells cover them.
  quads.sort((a, b) => a.depth - b.depth);

  const pieces: string[] = [];
  for (const quad of quads) {
    pieces.push(
      el('path', {
        d: quad.path,
        fill: quad.fill,
        stroke: quad.fill,
        'stroke-width': 0.5,
        class: 'cell',
      }),
    );
  }
  pieces.push(
    el('circle', {
      cx: CENTER_X,
      cy: CENTER_Y,
      r: RADIUS,
      fill: 'none',
      stroke: '#333333',
      'stroke-width': 1,
    }),
  );
  pieces.push(
    text(CENTER_X, CENTER_Y - RADIUS - 12, 'θ = 0', { 'text-anchor': 'middle' }),
  );
  pieces.push(
    text(CENTER_X, CENTER_Y + RADIUS + 18, 'θ = π', { 'text-anchor': 'middle' }),
  );
  pieces.push(
    text(CENTER_X, 22, spec.title, {
      'text-anchor': 'middle',
      'font-size': 13,
      'font-weight': 'bold',
    }),
  );
  pieces.push(
    colorBar({ left: WIDTH - 88, top: 60, width: 16, height: 320 }, [lo, hi], 'F'),
  );
  return svgDocument(WIDTH, HEIGHT, pieces.join(''));
}
