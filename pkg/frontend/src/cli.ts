import { realpathSync, writeFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';
import { parseArgs } from 'node:util';

import { CSV_SCHEMAS, FIGURES, UsageError, makeFigureSpec } from './figures.js';
import { renderFigure } from './render.js';
import { CsvSchemaError, DataShapeError, NoDataError, readTable } from './table.js';

export const EXIT_OK = 0;
export const EXIT_DATA = 1;
export const EXIT_USAGE = 2;

export interface Io {
  out: (line: string) => void;
  err: (line: string) => void;
}

const CONSOLE_IO: Io = {
  out: (line) => console.log(line),
  err: (line) => console.error(line),
};

const USAGE = [
  'usage: rydlink-figures --figure <id> --csv <path> [--csv <path>] --out <file.svg>',
  '       rydlink-figures --list',
  '',
  'Renders one shipped figure panel from CSV sweeps emitted by the rydlink CLI.',
  'Panels with several inputs take one --csv per input, in the order --list shows.',
].join('\n');

export function run(argv: string[], io: Io = CONSOLE_IO): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        csv: { type: 'string', multiple: true },
        figure: { type: 'string' },
        out: { type: 'string' },
        list: { type: 'boolean' },
        help: { type: 'boolean' },
      },
      allowPositionals: false,
    });
  } catch (error) {
    io.err(`${(error as Error).message}\n${USAGE}`);
    return EXIT_USAGE;
  }
  if (args.values.help) {
    io.out(USAGE);
    return EXIT_OK;
  }
  if (args.values.list) {
    for (const def of FIGURES) {
      io.out(`${def.id}  [${def.kind}]  inputs: ${def.presets.join(', ')}`);
    }
    return EXIT_OK;
  }
  const { figure, out } = args.values;
  const csvPaths = args.values.csv ?? [];
  if (figure === undefined || out === undefined || csvPaths.length === 0) {
    io.err(`--figure, --csv and --out are all required\n${USAGE}`);
    return EXIT_USAGE;
  }

  try {
    const spec = makeFigureSpec(figure, csvPaths);
    const tables = csvPaths.map((path) => readTable(path, CSV_SCHEMAS[spec.kind]));
    writeFileSync(out, renderFigure(spec, tables));
    io.out(`wrote ${out}`);
    return EXIT_OK;
  } catch (error) {
    if (error instanceof UsageError) {
      io.err(error.message);
      return EXIT_USAGE;
    }
    if (
      error instanceof CsvSchemaError ||
      error instanceof NoDataError ||
      error instanceof DataShapeError ||
      (error as NodeJS.ErrnoException).code !== undefined
    ) {
      io.err((error as Error).message);
      return EXIT_DATA;
    }
    throw error;
  }
}

const invokedAsScript =
  process.argv[1] !== undefined &&
  realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
if (invokedAsScript) {
  process.exit(run(process.argv.slice(2)));
}
