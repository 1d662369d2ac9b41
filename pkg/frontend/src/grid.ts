import { DataShapeError, Table, column } from './table.js';

export interface Grid {
  xs: number[];
  ys: number[];
  /** values[i][j] belongs to (xs[i], ys[j]). */
  values: number[][];
}

export function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** Cell boundaries around center coordinates, via midpoints. */
export function edgesFromCenters(centers: number[]): number[] {
  if (centers.length === 1) {
    const half = Math.max(Math.abs(centers[0]) * 0.05, 0.5);
    return [centers[0] - half, centers[0] + half];
  }
  const edges = [centers[0] - (centers[1] - centers[0]) / 2];
  for (let i = 0; i + 1 < centers.length; i++) {
    edges.push((centers[i] + centers[i + 1]) / 2);
  }
  edges.push(centers[centers.length - 1] + (centers[centers.length - 1] - centers[centers.length - 2]) / 2);
  return edges;
}

export function tableGrid(table: Table, xName: string, yName: string, zName: string): Grid {
  const xValues = column(table, xName);
  const yValues = column(table, yName);
  const zValues = column(table, zName);
  const xs = uniqueSorted(xValues);
  const ys = uniqueSorted(yValues);
  if (table.rows.length !== xs.length * ys.length) {
    throw new DataShapeError(
      `${table.path}: expected a full ${xs.length}x${ys.length} (${xName}, ${yName}) grid, got ${table.rows.length} rows`,
    );
  }
  const byKey = new Map<string, number>();
  for (let i = 0; i < zValues.length; i++) {
    byKey.set(`${xValues[i]}:${yValues[i]}`, zValues[i]);
  }
  const values = xs.map((x) =>
    ys.map((y) => {
      const value = byKey.get(`${x}:${y}`);
      if (value === undefined) {
        throw new DataShapeError(`${table.path}: grid point (${xName}=${x}, ${yName}=${y}) is missing`);
      }
      return value;
    }),
  );
  return { xs, ys, values };
}
