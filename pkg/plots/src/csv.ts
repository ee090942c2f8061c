import fs from 'node:fs';
import Papa from 'papaparse';

/** One row of the experiment CSV, with numeric fields parsed. */
export interface ResultRow {
  series_variable: string;
  series_value: number | null;
  sweep_variable: string;
  sweep_value: number;
  scheme: string;
  trial: string; // "0", "1", ... or "mean"
  status: string;
  ec_mj: number | null;
  er: number | null;
  d2d_ratio: number | null;
  t_serial: number | null;
  training_time_s: number | null;
  training_energy_j: number | null;
}

const REQUIRED = [
  'series_variable',
  'series_value',
  'sweep_variable',
  'sweep_value',
  'scheme',
  'trial',
  'status',
  'ec_mj',
  'er',
  'd2d_ratio',
];

export class MissingColumnError extends Error {
  constructor(column: string) {
    super(`CSV is missing required column: ${column}`);
    this.name = 'MissingColumnError';
  }
}

export class EmptyDataError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'EmptyDataError';
  }
}

function num(value: string | undefined): number | null {
  if (value === undefined || value === '') return null;
  const parsed = Number(value);
  return Number.isNaN(parsed) ? null : parsed;
}

export function parseResults(text: string): ResultRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const column of REQUIRED) {
    if (!fields.includes(column)) throw new MissingColumnError(column);
  }
  if (parsed.data.length === 0) throw new EmptyDataError('CSV has a header but no rows');
  return parsed.data.map((raw) => ({
    series_variable: raw.series_variable ?? '',
    series_value: num(raw.series_value),
    sweep_variable: raw.sweep_variable ?? '',
    sweep_value: num(raw.sweep_value) ?? NaN,
    scheme: raw.scheme ?? '',
    trial: raw.trial ?? '',
    status: raw.status ?? '',
    ec_mj: num(raw.ec_mj),
    er: num(raw.er),
    d2d_ratio: num(raw.d2d_ratio),
    t_serial: num(raw.t_serial),
    training_time_s: num(raw.training_time_s),
    training_energy_j: num(raw.training_energy_j),
  }));
}

export function loadResults(path: string): ResultRow[] {
  return parseResults(fs.readFileSync(path, 'utf8'));
}
