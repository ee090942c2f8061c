export { loadResults, parseResults, MissingColumnError, EmptyDataError } from './csv.js';
export type { ResultRow } from './csv.js';
export { PRESETS, PRESET_NAMES, presetSpec, validateSpec } from './figspec.js';
export type { FigureSpec, Scale } from './figspec.js';
export { extractSeries } from './series.js';
export type { Series } from './series.js';
export { renderSvg } from './svg.js';
export { run } from './cli.js';
