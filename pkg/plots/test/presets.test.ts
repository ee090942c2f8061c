import { describe, expect, it } from 'vitest';
import fs from 'node:fs';
import os from 'node:os';
import path from 'node:path';

import { loadResults } from '../src/csv.js';
import { PRESET_NAMES, presetSpec, validateSpec } from '../src/figspec.js';
import { extractSeries } from '../src/series.js';
import { run } from '../src/cli.js';

const DATA = path.join(__dirname, '..', 'testdata');

describe('figure presets', () => {
  it('covers fig5 through fig14', () => {
    expect(PRESET_NAMES).toEqual([
      'fig5', 'fig6', 'fig7', 'fig8', 'fig9', 'fig10', 'fig11', 'fig12', 'fig13', 'fig14',
    ]);
  });

  it.each(PRESET_NAMES)('%s renders from its harness CSV without error', (name) => {
    const input = path.join(DATA, `${name}.csv`);
    const outDir = fs.mkdtempSync(path.join(os.tmpdir(), 'plots-'));
    const output = path.join(outDir, `${name}.svg`);
    const written = run(['--preset', name, '--input', input, '--output', output]);
    expect(written).toBe(output);
    const svg = fs.readFileSync(output, 'utf8');
    expect(svg.startsWith('<svg')).toBe(true);
    expect(svg).toContain('polyline');
  });

  it.each(PRESET_NAMES)('%s plotted series equal the CSV mean columns exactly', (name) => {
    const input = path.join(DATA, `${name}.csv`);
    const rows = loadResults(input);
    const spec = presetSpec(name, input, 'unused');
    const series = extractSeries(rows, spec);
    expect(series.length).toBeGreaterThan(0);

    // independent re-derivation of the mean columns straight from the rows
    const means = rows.filter((r) => r.trial === 'mean' && r.status === 'ok');
    for (const s of series) {
      const [scheme, dimPart] = s.label.split(' ');
      const dim = dimPart ? Number(dimPart.split('=')[1]) : null;
      const expected = means
        .filter((r) => r.scheme === scheme && (dim === null || r.series_value === dim))
        .sort((a, b) => a.sweep_value - b.sweep_value);
      expect(s.x).toEqual(expected.map((r) => r.sweep_value));
      expect(s.y).toEqual(expected.map((r) => r[spec.yColumn]));
    }
  });

  it('rejects unknown presets by name', () => {
    expect(() => presetSpec('fig99', 'a.csv', 'a.svg')).toThrow(/fig99/);
  });

  it('accepts an explicit figure spec file', () => {
    const outDir = fs.mkdtempSync(path.join(os.tmpdir(), 'plots-'));
    const specPath = path.join(outDir, 'spec.json');
    const spec = {
      name: 'custom',
      input: path.join(DATA, 'fig7.csv'),
      output: path.join(outDir, 'custom.svg'),
      xColumn: 'sweep_value',
      yColumn: 'ec_mj',
      schemes: ['EMS'],
      xScale: 'linear',
      yScale: 'linear',
      xLabel: 'group size',
      yLabel: 'mJ',
      title: 'custom figure',
    };
    fs.writeFileSync(specPath, JSON.stringify(spec));
    const written = run(['--spec', specPath]);
    expect(fs.existsSync(written)).toBe(true);
  });

  it('validates malformed explicit specs', () => {
    expect(() => validateSpec({ name: 'x' })).toThrow(/input/);
    expect(() =>
      validateSpec({
        name: 'x',
        input: 'a',
        output: 'b',
        xColumn: 'sweep_value',
        yColumn: 'nope',
        schemes: ['EMS'],
        xScale: 'linear',
        yScale: 'linear',
      }),
    ).toThrow(/yColumn/);
  });
});
