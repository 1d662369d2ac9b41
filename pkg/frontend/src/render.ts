import { FigureSpec } from './figures.js';
import { renderBlochSurface } from './render/blochSurface.js';
import { renderDynamics } from './render/dynamics.js';
import { renderHeatmap } from './render/heatmap.js';
import { renderThermalLines } from './render/thermalLines.js';
import { Table } from './table.js';

export function renderFigure(spec: FigureSpec, tables: Table[]): string {
  switch (spec.kind) {
    case 'dynamics':
      return renderDynamics(spec, tables[0]);
    case 'bloch_surface':
      return renderBlochSurface(spec, tables[0]);
    case 'heatmap':
      return renderHeatmap(spec, tables[0]);
    case 'lines':
      return renderThermalLines(spec, tables);
  }
}
