import { EmptyDataError, ResultRow } from './csv.js';
import { FigureSpec } from './figspec.js';

export interface Series {
  label: string;
  x: number[];
  y: number[];
}

/** Pull the mean rows out of the experiment CSV, one series per scheme and
 * per series_value when the experiment had a second dimension.  The y values
 * are taken verbatim from the mean rows. */
export function extractSeries(rows: ResultRow[], spec: FigureSpec): Series[] {
  const means = rows.filter((r) => r.trial === 'mean' && r.status === 'ok');
  if (means.length === 0) throw new EmptyDataError('no mean rows in CSV');

  const seriesValues = [...new Set(means.map((r) => r.series_value ?? NaN))]
    .filter((v) => !Number.isNaN(v))
    .sort((a, b) => a - b);
  const dims: (number | null)[] = seriesValues.length > 0 ? seriesValues : [null];

  const out: Series[] = [];
  for (const dim of dims) {
    for (const scheme of spec.schemes) {
      const points = means
        .filter(
          (r) =>
            r.scheme === scheme &&
            (dim === null || r.series_value === dim) &&
            r[spec.yColumn] !== null,
        )
        .sort((a, b) => a.sweep_value - b.sweep_value);
      if (points.length === 0) continue;
      const label =
        dim === null
          ? scheme
          : `${scheme} ${points[0].series_variable}=${dim}`;
      out.push({
        label,
        x: points.map((r) => r.sweep_value),
        y: points.map((r) => r[spec.yColumn] as number),
      });
    }
  }
  if (out.length === 0) {
    throw new EmptyDataError(
      `no data for column ${spec.yColumn} and schemes ${spec.schemes.join(',')}`,
    );
  }
  return out;
}
