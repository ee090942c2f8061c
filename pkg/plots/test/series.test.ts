import { describe, expect, it } from 'vitest';
import path from 'node:path';

import { loadResults } from '../src/csv.js';
import { presetSpec } from '../src/figspec.js';
import { extractSeries } from '../src/series.js';

const DATA = path.join(__dirname, '..', 'testdata');

describe('extractSeries', () => {
  it('takes exactly the mean rows, in sweep order', () => {
    const rows = loadResults(path.join(DATA, 'fig5.csv'));
    const spec = presetSpec('fig5', 'unused', 'unused');
    const series = extractSeries(rows, spec);
    expect(series.map((s) => s.label)).toEqual(['EMS', 'D2D', 'FDMAC']);

    for (const s of series) {
      const expected = rows
        .filter((r) => r.trial === 'mean' && r.scheme === s.label)
        .sort((a, b) => a.sweep_value - b.sweep_value);
      expect(s.x).toEqual(expected.map((r) => r.sweep_value));
      expect(s.y).toEqual(expected.map((r) => r.ec_mj));
    }
  });

  it('splits on the second dimension for threshold figures', () => {
    const rows = loadResults(path.join(DATA, 'fig13.csv'));
    const spec = presetSpec('fig13', 'unused', 'unused');
    const series = extractSeries(rows, spec);
    expect(series.map((s) => s.label)).toEqual([
      'EMS theta_3db=15',
      'EMS theta_3db=30',
      'EMS theta_3db=45',
    ]);
    for (const s of series) {
      expect(s.x.length).toBe(12); // the threshold grid
      // the ratio series comes verbatim from the er mean column
      const dim = Number(s.label.split('=')[1]);
      const expected = rows
        .filter((r) => r.trial === 'mean' && r.series_value === dim && r.scheme === 'EMS')
        .sort((a, b) => a.sweep_value - b.sweep_value)
        .map((r) => r.er);
      expect(s.y).toEqual(expected);
    }
  });

  it('drops schemes absent from the data instead of failing', () => {
    const rows = loadResults(path.join(DATA, 'fig13.csv'));
    const spec = { ...presetSpec('fig13', 'u', 'u'), schemes: ['EMS', 'FDMAC'] };
    const series = extractSeries(rows, spec);
    expect(series.every((s) => s.label.startsWith('EMS'))).toBe(true);
  });

  it('raises a named error when nothing matches', () => {
    const rows = loadResults(path.join(DATA, 'fig5.csv'));
    const spec = { ...presetSpec('fig5', 'u', 'u'), schemes: ['NOPE'] };
    expect(() => extractSeries(rows, spec)).toThrow(/no data/);
  });
});
