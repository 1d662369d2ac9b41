import { readFileSync } from 'node:fs';
import Papa from 'papaparse';

/** Raised when a CSV header does not match the columns a figure requires. */
export class CsvSchemaError extends Error {}

/** Raised when a CSV carries no data rows at all. */
export class NoDataError extends Error {}

/** Raised when rows parse fine but do not form the shape a plot needs. */
export class DataShapeError extends Error {}

export interface Table {
  path: string;
  columns: readonly string[];
  rows: number[][];
}

export function column(table: Table, name: string): number[] {
  const k = table.columns.indexOf(name);
  if (k < 0) {
    throw new CsvSchemaError(`${table.path}: no column named '${name}'`);
  }
  return table.rows.map((row) => row[k]);
}

export function readTable(path: string, expected: readonly string[]): Table {
  return parseTable(readFileSync(path, 'utf8'), expected, path);
}

export function parseTable(text: string, expected: readonly string[], path = '<inline>'): Table {
  if (text.trim() === '') {
    throw new NoDataError(`${path}: file is empty`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  checkHeader(fields, expected, path);
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new CsvSchemaError(`${path}: row ${(first.row ?? 0) + 2}: ${first.message}`);
  }
  if (parsed.data.length === 0) {
    throw new NoDataError(`${path}: header only, no data rows`);
  }
  const rows = parsed.data.map((record, i) =>
    expected.map((name) => {
      const value = Number(record[name]);
      if (!Number.isFinite(value)) {
        throw new CsvSchemaError(
          `${path}: row ${i + 2}: column '${name}' is not numeric (got '${record[name]}')`,
        );
      }
      return value;
    }),
  );
  return { path, columns: expected, rows };
}

function checkHeader(fields: readonly string[], expected: readonly string[], path: string): void {
  const matches =
    fields.length === expected.length && expected.every((name, i) => fields[i] === name);
  if (matches) return;
  const missing = expected.filter((name) => !fields.includes(name));
  const extra = fields.filter((name) => !expected.includes(name));
  const parts: string[] = [];
  if (missing.length > 0) parts.push(`missing column(s): ${missing.join(', ')}`);
  if (extra.length > 0) parts.push(`unexpected column(s): ${extra.join(', ')}`);
  if (parts.length === 0) parts.push(`columns must appear in order ${expected.join(', ')}`);
  throw new CsvSchemaError(`${path}: ${parts.join('; ')}`);
}
