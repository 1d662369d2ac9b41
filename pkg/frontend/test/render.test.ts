import { describe, expect, test } from 'vitest';
import { fileURLToPath } from 'node:url';

import { CSV_SCHEMAS, makeFigureSpec } from '../src/figures.js';
import { renderFigure } from '../src/render.js';
import { DataShapeError, parseTable, readTable } from '../src/table.js';

const fixture = (name: string): string =>
  fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));

const renderFromFixture = (id: string, names: string[]): string => {
  const spec = makeFigureSpec(id, names.map(fixture));
  const tables = spec.csvPaths.map((path) => readTable(path, CSV_SCHEMAS[spec.kind]));
  return renderFigure(spec, tables);
};

const seriesLines = (svg: string): string[] =>
  svg.match(/<polyline [^>]*class="series"[^>]*\/>/g) ?? [];

describe('dynamics panel', () => {
  const svg = renderFromFixture('dynamics-resonant-north-om3', [
    'dynamics-resonant-north-om3.csv',
  ]);

  test('draws the four series in the shipped line styles', () => {
    const lines = seriesLines(svg);
    expect(lines.length).toBe(4);
    expect(lines[0]).toContain('stroke="#000000"');
    expect(lines[0]).not.toContain('stroke-dasharray');
    expect(lines[1]).toContain('stroke="#8e44ad"');
    expect(lines[1]).toContain('stroke-dasharray="9 5"');
    expect(lines[2]).toContain('stroke="#d62728"');
    expect(lines[2]).toContain('stroke-dasharray="10 4 2 4"');
    expect(lines[3]).toContain('stroke="#1f77b4"');
    expect(lines[3]).toContain('stroke-dasharray="2 4"');
  });

  test('labels time in microseconds and carries the panel title', () => {
    expect(svg).toContain('t (µs)');
    expect(svg).toContain('Resonant dynamics, θ = 0, Ω = 3λ');
  });
});

describe('heatmap panel', () => {
  test('masks every cell below 0.75', () => {
    const svg = renderFromFixture('heatmap-resonant-north', ['heatmap-resonant-north.csv']);
    // the fixture grid holds 12 points, 6 of them above the threshold
    expect(svg.match(/class="cell"/g)?.length).toBe(6);
  });

  test('mask decides cell by cell', () => {
    const text = [
      'lambda_over_kappa,omega_over_kappa,fidelity',
      '1,1,0.7499',
      '1,2,0.7501',
      '2,1,0.9',
      '2,2,0.2',
      '',
    ].join('\n');
    const spec = makeFigureSpec('heatmap-dispersive-north', ['inline.csv']);
    const svg = renderFigure(spec, [parseTable(text, CSV_SCHEMAS.heatmap)]);
    expect(svg.match(/class="cell"/g)?.length).toBe(2);
  });

  test('incomplete grids are rejected', () => {
    const text = [
      'lambda_over_kappa,omega_over_kappa,fidelity',
      '1,1,0.9',
      '1,2,0.9',
      '2,1,0.9',
      '',
    ].join('\n');
    const spec = makeFigureSpec('heatmap-resonant-equator', ['inline.csv']);
    expect(() => renderFigure(spec, [parseTable(text, CSV_SCHEMAS.heatmap)])).toThrowError(
      DataShapeError,
    );
  });
});

describe('bloch surface panel', () => {
  const svg = renderFromFixture('bloch-resonant-om1', ['bloch-resonant-om1.csv']);

  test('renders one quad per surface cell', () => {
    // 5 theta rows give 4 bands, each closed around 8 phi columns
    expect(svg.match(/class="cell"/g)?.length).toBe(32);
  });

  test('projected cells stay inside the sphere outline', () => {
    const radius = 168;
    for (const match of svg.matchAll(/ d="([^"]+)"/g)) {
      for (const [, x, y] of match[1].matchAll(/(-?[\d.]+) (-?[\d.]+)/g)) {
        const r = Math.hypot(Number(x) - 240, Number(y) - 230);
        expect(r).toBeLessThanOrEqual(radius + 0.5);
      }
    }
  });
});

describe('thermal panel', () => {
  const svg = renderFromFixture('thermal-north', [
    'thermal-resonant-north.csv',
    'thermal-resonant-north.csv',
  ]);

  test('one line per protocol and occupation', () => {
    expect(seriesLines(svg).length).toBe(4);
  });

  test('legend names protocol and occupation', () => {
    expect(svg).toContain('resonant, n̄ = 0<');
    expect(svg).toContain('resonant, n̄ = 0.6');
    expect(svg).toContain('dispersive, n̄ = 0.6');
  });
});

test('rendering is deterministic for identical inputs', () => {
  for (const [id, names] of [
    ['dynamics-resonant-north-om3', ['dynamics-resonant-north-om3.csv']],
    ['bloch-resonant-om1', ['bloch-resonant-om1.csv']],
    ['heatmap-resonant-north', ['heatmap-resonant-north.csv']],
    ['thermal-north', ['thermal-resonant-north.csv', 'thermal-resonant-north.csv']],
  ] as const) {
    expect(renderFromFixture(id, [...names])).toBe(renderFromFixture(id, [...names]));
  }
});
