import fs from 'node:fs';
import path from 'node:path';

import { loadResults } from './csv.js';
import { FigureSpec, PRESET_NAMES, presetSpec, validateSpec } from './figspec.js';
import { extractSeries } from './series.js';
import { renderSvg } from './svg.js';

function usage(): never {
  console.error(
    [
      'usage:',
      '  plot --preset <fig5..fig14> --input results.csv [--output out.svg]',
      '  plot --spec figure.json',
      '',
      `presets: ${PRESET_NAMES.join(', ')}`,
    ].join('\n'),
  );
  process.exit(2);
}

function parseArgs(argv: string[]): Map<string, string> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith('--') || value === undefined) usage();
    args.set(key.slice(2), value);
  }
  return args;
}

export function buildSpec(args: Map<string, string>): FigureSpec {
  if (args.has('spec')) {
    const raw = JSON.parse(fs.readFileSync(args.get('spec')!, 'utf8'));
    return validateSpec(raw);
  }
  const preset = args.get('preset');
  const input = args.get('input');
  if (!preset || !input) usage();
  const output = args.get('output') ?? path.join(path.dirname(input), `${preset}.svg`);
  return presetSpec(preset, input, output);
}

export function run(argv: string[]): string {
  const spec = buildSpec(parseArgs(argv));
  const rows = loadResults(spec.input);
  const series = extractSeries(rows, spec);
  const svg = renderSvg(series, spec);
  fs.writeFileSync(spec.output, svg);
  console.log(`wrote ${spec.output} (${series.length} series)`);
  return spec.output;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${path.resolve(process.argv[1])}`).href;

if (invokedDirectly) {
  try {
    run(process.argv.slice(2));
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    process.exit(1);
  }
}
