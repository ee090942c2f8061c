import { FigureSpec, Scale } from './figspec.js';
import { Series } from './series.js';

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 84 };
const COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22'];
const MARKERS = ['circle', 'square', 'diamond'] as const;

interface Axis {
  scale: (v: number) => number;
  ticks: number[];
}

function niceLinearTicks(lo: number, hi: number, count = 6): number[] {
  if (lo === hi) return [lo];
  const span = hi - lo;
  const step = 10 ** Math.floor(Math.log10(span / count));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); 10 ** e <= hi * (1 + 1e-9); e += 1) {
    ticks.push(10 ** e);
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function makeAxis(values: number[], scale: Scale, rangeLo: number, rangeHi: number): Axis {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (scale === 'log') {
    if (lo <= 0) throw new Error('log scale requires positive values');
    const pad = (Math.log10(hi) - Math.log10(lo) || 1) * 0.05;
    const llo = Math.log10(lo) - pad;
    const lhi = Math.log10(hi) + pad;
    return {
      scale: (v) => rangeLo + ((Math.log10(v) - llo) / (lhi - llo)) * (rangeHi - rangeLo),
      ticks: logTicks(lo, hi),
    };
  }
  const pad = (hi - lo || Math.abs(hi) || 1) * 0.05;
  lo -= pad;
  hi += pad;
  return {
    scale: (v) => rangeLo + ((v - lo) / (hi - lo)) * (rangeHi - rangeLo),
    ticks: niceLinearTicks(lo, hi),
  };
}

function fmt(v: number): string {
  if (v === 0) return '0';
  const magnitude = Math.abs(v);
  if (magnitude >= 1e5 || magnitude < 1e-3) {
    const e = Math.floor(Math.log10(magnitude));
    const mantissa = v / 10 ** e;
    return mantissa === 1 ? `1e${e}` : `${Number(mantissa.toPrecision(3))}e${e}`;
  }
  return `${Number(v.toPrecision(6))}`;
}

function marker(kind: (typeof MARKERS)[number], x: number, y: number, color: string): string {
  const r = 3.5;
  switch (kind) {
    case 'circle':
      return `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${color}"/>`;
    case 'square':
      return `<rect x="${(x - r).toFixed(2)}" y="${(y - r).toFixed(2)}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case 'diamond':
      return `<path d="M ${x.toFixed(2)} ${(y - r - 1).toFixed(2)} L ${(x + r + 1).toFixed(2)} ${y.toFixed(2)} L ${x.toFixed(2)} ${(y + r + 1).toFixed(2)} L ${(x - r - 1).toFixed(2)} ${y.toFixed(2)} Z" fill="${color}"/>`;
  }
}

/** Render a line chart as a standalone SVG string. */
export function renderSvg(series: Series[], spec: FigureSpec): string {
  if (series.length === 0) throw new Error('nothing to plot');
  const xs = series.flatMap((s) => s.x);
  const ys = series.flatMap((s) => s.y);
  const xAxis = makeAxis(xs, spec.xScale, MARGIN.left, WIDTH - MARGIN.right);
  const yAxis = makeAxis(ys, spec.yScale, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${spec.title}</text>`,
  );

  // frame
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#333"/>`,
  );

  for (const t of xAxis.ticks) {
    const px = xAxis.scale(t);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    parts.push(`<line x1="${px.toFixed(2)}" y1="${y0}" x2="${px.toFixed(2)}" y2="${y0 + 5}" stroke="#333"/>`);
    parts.push(`<line x1="${px.toFixed(2)}" y1="${y0}" x2="${px.toFixed(2)}" y2="${y1}" stroke="#eee"/>`);
    parts.push(
      `<text x="${px.toFixed(2)}" y="${y0 + 20}" text-anchor="middle" font-size="11">${fmt(t)}</text>`,
    );
  }
  for (const t of yAxis.ticks) {
    const py = yAxis.scale(t);
    if (py > y0 + 0.5 || py < y1 - 0.5) continue;
    parts.push(`<line x1="${x0 - 5}" y1="${py.toFixed(2)}" x2="${x0}" y2="${py.toFixed(2)}" stroke="#333"/>`);
    parts.push(`<line x1="${x0}" y1="${py.toFixed(2)}" x2="${x1}" y2="${py.toFixed(2)}" stroke="#eee"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${(py + 4).toFixed(2)}" text-anchor="end" font-size="11">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">${spec.xLabel}</text>`,
  );
  parts.push(
    `<text x="20" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(y0 + y1) / 2})">${spec.yLabel}</text>`,
  );

  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const kind = MARKERS[i % MARKERS.length];
    const pts = s.x.map((x, j) => [xAxis.scale(x), yAxis.scale(s.y[j])] as const);
    if (pts.length > 1) {
      const d = pts.map(([px, py]) => `${px.toFixed(2)},${py.toFixed(2)}`).join(' ');
      parts.push(`<polyline points="${d}" fill="none" stroke="${color}" stroke-width="1.8"/>`);
    }
    for (const [px, py] of pts) parts.push(marker(kind, px, py, color));
    // legend entry
    const lx = x0 + 12;
    const ly = y1 + 16 + i * 18;
    parts.push(`<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${color}" stroke-width="1.8"/>`);
    parts.push(marker(kind, lx + 11, ly - 4, color));
    parts.push(`<text x="${lx + 28}" y="${ly}" font-size="12">${s.label}</text>`);
  });

  parts.push('</svg>');
  return parts.join('\n');
}
