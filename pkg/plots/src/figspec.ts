/** Figure description: which columns to plot and how to scale the axes. */

export type Scale = 'linear' | 'log';

export interface FigureSpec {
  name: string;
  input: string;        // CSV path
  xColumn: 'sweep_value';
  yColumn: 'ec_mj' | 'er' | 'd2d_ratio';
  schemes: string[];    // one series per scheme (and per series_value if present)
  xScale: Scale;
  yScale: Scale;
  xLabel: string;
  yLabel: string;
  title: string;
  output: string;       // SVG path
}

const ALL = ['EMS', 'D2D', 'FDMAC'];

interface PresetShape {
  yColumn: FigureSpec['yColumn'];
  schemes: string[];
  xScale: Scale;
  yScale: Scale;
  xLabel: string;
  yLabel: string;
  title: string;
}

/** Axis scales follow the corresponding evaluation figures (log where the
 * originals use logarithmic coordinates). */
export const PRESETS: Record<string, PresetShape> = {
  fig5: {
    yColumn: 'ec_mj', schemes: ALL, xScale: 'log', yScale: 'log',
    xLabel: 'multicast data size (bits)', yLabel: 'energy consumption (mJ)',
    title: 'Energy consumption vs multicast data size',
  },
  fig6: {
    yColumn: 'd2d_ratio', schemes: ALL, xScale: 'log', yScale: 'linear',
    xLabel: 'multicast data size (bits)', yLabel: 'relay energy share',
    title: 'Relay energy share vs multicast data size',
  },
  fig7: {
    yColumn: 'ec_mj', schemes: ALL, xScale: 'linear', yScale: 'linear',
    xLabel: 'multicast group size', yLabel: 'energy consumption (mJ)',
    title: 'Energy consumption vs group size',
  },
  fig8: {
    yColumn: 'd2d_ratio', schemes: ALL, xScale: 'linear', yScale: 'linear',
    xLabel: 'multicast group size', yLabel: 'relay energy share',
    title: 'Relay energy share vs group size',
  },
  fig9: {
    yColumn: 'ec_mj', schemes: ALL, xScale: 'log', yScale: 'log',
    xLabel: 'maximum transmit power (mW)', yLabel: 'energy consumption (mJ)',
    title: 'Energy consumption vs maximum transmit power',
  },
  fig10: {
    yColumn: 'ec_mj', schemes: ALL, xScale: 'linear', yScale: 'linear',
    xLabel: 'region side (m)', yLabel: 'energy consumption (mJ)',
    title: 'Energy consumption vs region size',
  },
  fig11: {
    yColumn: 'ec_mj', schemes: ALL, xScale: 'linear', yScale: 'log',
    xLabel: 'half-power beamwidth (deg)', yLabel: 'energy consumption (mJ)',
    title: 'Energy consumption vs beamwidth',
  },
  fig12: {
    yColumn: 'ec_mj', schemes: ALL, xScale: 'linear', yScale: 'linear',
    xLabel: 'maximum hops per path', yLabel: 'energy consumption (mJ)',
    title: 'Energy consumption vs hop cap',
  },
  fig13: {
    yColumn: 'er', schemes: ['EMS'], xScale: 'log', yScale: 'linear',
    xLabel: 'interference threshold', yLabel: 'energy ratio',
    title: 'Energy ratio vs interference threshold (per beamwidth)',
  },
  fig14: {
    yColumn: 'er', schemes: ['EMS'], xScale: 'log', yScale: 'linear',
    xLabel: 'interference threshold', yLabel: 'energy ratio',
    title: 'Energy ratio vs interference threshold (per max power)',
  },
};

export const PRESET_NAMES = Object.keys(PRESETS);

export function presetSpec(name: string, input: string, output: string): FigureSpec {
  const shape = PRESETS[name];
  if (!shape) {
    throw new Error(`unknown preset ${name}; choose from ${PRESET_NAMES.join(', ')}`);
  }
  return { name, input, output, xColumn: 'sweep_value', ...shape };
}

export function validateSpec(raw: unknown): FigureSpec {
  if (typeof raw !== 'object' || raw === null) throw new Error('figure spec must be an object');
  const spec = raw as Partial<FigureSpec>;
  const scales: Scale[] = ['linear', 'log'];
  if (!spec.name || !spec.input || !spec.output) {
    throw new Error('figure spec needs name, input, output');
  }
  if (spec.xColumn !== 'sweep_value') throw new Error('xColumn must be sweep_value');
  if (!['ec_mj', 'er', 'd2d_ratio'].includes(spec.yColumn ?? '')) {
    throw new Error(`unsupported yColumn ${spec.yColumn}`);
  }
  if (!Array.isArray(spec.schemes) || spec.schemes.length === 0) {
    throw new Error('schemes must be a non-empty list');
  }
  if (!scales.includes(spec.xScale ?? 'linear') || !scales.includes(spec.yScale ?? 'linear')) {
    throw new Error('scales must be linear or log');
  }
  return {
    xLabel: spec.xLabel ?? 'x',
    yLabel: spec.yLabel ?? spec.yColumn ?? 'y',
    title: spec.title ?? spec.name,
    ...spec,
  } as FigureSpec;
}
