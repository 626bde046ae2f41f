/**
 * Four-panel figure builder: columns are iterate kinds (average | last),
 * rows are experiments (fixed-horizon | anytime).  Solid lines carry the
 * mean error, dotted lines the q-quantile; colors identify noise classes
 * consistently across panels.  Anytime panels get an inset that zooms into
 * the final window.  Output is plain SVG text with no timestamps, so the
 * same CSV bytes always render to the same figure bytes.
 */

import { SummaryRow, inferExperimentKind, seriesKey } from './csv.js';

export interface FigureSpec {
  inputs: { name: string; rows: SummaryRow[]; kind?: 'fixed-horizon' | 'anytime' }[];
  zoomWindow: number; // inset covers the last this-many steps of anytime panels
  width?: number;
}

interface Panel {
  title: string;
  kind: 'fixed-horizon' | 'anytime';
  iterate: 'average' | 'last';
  rows: SummaryRow[];
}

const PALETTE = [
  '#1f77b4', '#d62728', '#2ca02c', '#9467bd',
  '#ff7f0e', '#8c564b', '#17becf', '#7f7f7f',
];

const fmt = (x: number): string => {
  if (!Number.isFinite(x)) return '0';
  const s = x.toPrecision(6);
  return s.includes('.') ? s.replace(/\.?0+(e|$)/, '$1') : s;
};

function seriesLabel(key: string): string {
  const [cls, param] = key.split(':');
  if (cls === 'gaussian') return 'gaussian';
  if (cls === 'sym-weibull') return `weibull θ=${param}`;
  if (cls === 'sym-poly') return `poly p=${param}`;
  return key;
}

// -- scales -------------------------------------------------------------

interface Scale {
  (v: number): number;
  ticks: number[];
  log: boolean;
}

function makeScale(lo: number, hi: number, outLo: number, outHi: number,
                   log: boolean): Scale {
  const a = log ? Math.log10(lo) : lo;
  const b = log ? Math.log10(hi) : hi;
  const span = b - a || 1;
  const f = ((v: number) => {
    const t = ((log ? Math.log10(v) : v) - a) / span;
    return outLo + t * (outHi - outLo);
  }) as Scale;
  f.log = log;
  f.ticks = log ? logTicks(lo, hi) : linTicks(lo, hi);
  return f;
}

function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); 10 ** e <= hi * (1 + 1e-9); e++) {
    out.push(10 ** e);
  }
  if (out.length < 2) return [lo, hi];
  return out;
}

function linTicks(lo: number, hi: number): number[] {
  const span = hi - lo || 1;
  const step = 10 ** Math.floor(Math.log10(span / 4));
  const mult = span / step > 20 ? 5 : span / step > 8 ? 2 : 1;
  const s = step * mult;
  const out: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-9 * span; v += s) out.push(v);
  return out;
}

// -- panel assembly -------------------------------------------------------

function collectPanels(spec: FigureSpec): Panel[] {
  const panels: Panel[] = [];
  for (const input of spec.inputs) {
    const kind = input.kind ?? inferExperimentKind(input.rows);
    for (const iterate of ['average', 'last'] as const) {
      const rows = input.rows.filter((r) => r.iterate_kind === iterate);
      if (rows.length === 0) continue;
      panels.push({
        title: `${kind}, ${iterate} iterate`,
        kind,
        iterate,
        rows,
      });
    }
  }
  return panels;
}

function colorMap(spec: FigureSpec): Map<string, string> {
  const keys = new Set<string>();
  for (const input of spec.inputs) for (const r of input.rows) keys.add(seriesKey(r));
  const sorted = [...keys].sort();
  return new Map(sorted.map((k, i) => [k, PALETTE[i % PALETTE.length]]));
}

interface Line {
  key: string;
  ts: number[];
  mean: number[];
  quant: number[];
}

function panelLines(rows: SummaryRow[]): Line[] {
  const byKey = new Map<string, SummaryRow[]>();
  for (const r of rows) {
    const k = seriesKey(r);
    if (!byKey.has(k)) byKey.set(k, []);
    byKey.get(k)!.push(r);
  }
  const lines: Line[] = [];
  for (const k of [...byKey.keys()].sort()) {
    const pts = byKey.get(k)!.slice().sort((a, b) => a.T - b.T);
    lines.push({
      key: k,
      ts: pts.map((p) => p.T),
      mean: pts.map((p) => p.mean_err),
      quant: pts.map((p) => p.quantile_err),
    });
  }
  return lines;
}

function polyline(xs: number[], ys: number[], x: Scale, y: Scale,
                  color: string, dotted: boolean): string {
  const pts = xs.map((v, i) => `${fmt(x(v))},${fmt(y(ys[i]))}`).join(' ');
  const dash = dotted ? ' stroke-dasharray="5 4"' : '';
  return `<polyline fill="none" stroke="${color}" stroke-width="1.6"${dash} points="${pts}"/>`;
}

function drawAxes(parts: string[], x: Scale, y: Scale, left: number,
                  top: number, w: number, h: number): void {
  parts.push(`<rect x="${left}" y="${top}" width="${w}" height="${h}" fill="none" stroke="#444" stroke-width="1"/>`);
  for (const t of x.ticks) {
    const px = x(t);
    parts.push(`<line x1="${fmt(px)}" y1="${top + h}" x2="${fmt(px)}" y2="${top + h + 4}" stroke="#444"/>`);
    parts.push(`<text x="${fmt(px)}" y="${top + h + 16}" font-size="10" text-anchor="middle">${fmt(t)}</text>`);
  }
  for (const t of y.ticks) {
    const py = y(t);
    parts.push(`<line x1="${left - 4}" y1="${fmt(py)}" x2="${left}" y2="${fmt(py)}" stroke="#444"/>`);
    parts.push(`<text x="${left - 6}" y="${fmt(py + 3)}" font-size="10" text-anchor="end">${fmt(t)}</text>`);
  }
}

function yRange(lines: Line[], tLo = -Infinity, tHi = Infinity): [number, number, boolean] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const l of lines) {
    for (let i = 0; i < l.ts.length; i++) {
      if (l.ts[i] < tLo || l.ts[i] > tHi) continue;
      for (const v of [l.mean[i], l.quant[i]]) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
  }
  if (!Number.isFinite(lo)) return [0, 1, false];
  const log = lo > 0 && hi / Math.max(lo, 1e-300) > 30;
  if (log) return [lo / 1.15, hi * 1.15, true];
  const pad = (hi - lo || Math.abs(hi) || 1) * 0.06;
  return [Math.max(0, lo - pad), hi + pad, false];
}

function renderPanel(parts: string[], panel: Panel, colors: Map<string, string>,
                     left: number, top: number, w: number, h: number,
                     zoomWindow: number): void {
  const lines = panelLines(panel.rows);
  const tMin = Math.min(...lines.map((l) => l.ts[0]));
  const tMax = Math.max(...lines.map((l) => l.ts[l.ts.length - 1]));
  const logX = panel.kind === 'fixed-horizon';
  const x = makeScale(logX ? Math.max(tMin, 1e-12) : tMin, tMax, left, left + w, logX);
  const [yLo, yHi, logY] = yRange(lines);
  const y = makeScale(yLo, yHi, top + h, top, logY);

  parts.push(`<text x="${left + w / 2}" y="${top - 8}" font-size="13" text-anchor="middle" font-family="sans-serif">${panel.title}</text>`);
  drawAxes(parts, x, y, left, top, w, h);
  parts.push(`<text x="${left + w / 2}" y="${top + h + 30}" font-size="11" text-anchor="middle">${panel.kind === 'fixed-horizon' ? 'horizon T (log)' : 'iteration t'}</text>`);

  for (const l of lines) {
    const c = colors.get(l.key)!;
    parts.push(polyline(l.ts, l.mean, x, y, c, false));
    parts.push(polyline(l.ts, l.quant, x, y, c, true));
  }

  if (panel.kind === 'anytime' && tMax - tMin > zoomWindow) {
    renderInset(parts, lines, colors, left, top, w, h, tMax - zoomWindow + 1, tMax);
  }
}

function renderInset(parts: string[], lines: Line[], colors: Map<string, string>,
                     left: number, top: number, w: number, h: number,
                     tLo: number, tHi: number): void {
  const iw = w * 0.46;
  const ih = h * 0.4;
  const ix = left + w - iw - 10;
  const iy = top + 10;
  parts.push(`<rect x="${ix - 4}" y="${iy - 4}" width="${iw + 8}" height="${ih + 8}" fill="#fff" stroke="#999" stroke-width="0.8"/>`);
  const x = makeScale(tLo, tHi, ix, ix + iw, false);
  const [yLo, yHi, logY] = yRange(lines, tLo, tHi);
  const y = makeScale(yLo, yHi, iy + ih, iy, logY);
  for (const l of lines) {
    const keep = l.ts.map((t, i) => i).filter((i) => l.ts[i] >= tLo && l.ts[i] <= tHi);
    if (keep.length === 0) continue;
    const ts = keep.map((i) => l.ts[i]);
    const c = colors.get(l.key)!;
    parts.push(polyline(ts, keep.map((i) => l.mean[i]), x, y, c, false));
    parts.push(polyline(ts, keep.map((i) => l.quant[i]), x, y, c, true));
  }
  parts.push(`<text x="${ix + iw / 2}" y="${iy + ih + 14}" font-size="9" text-anchor="middle">last ${tHi - tLo + 1} iterations</text>`);
}

function renderLegend(parts: string[], colors: Map<string, string>,
                      width: number): void {
  let x = 40;
  const y = 24;
  for (const [key, color] of colors) {
    parts.push(`<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${x + 27}" y="${y}" font-size="11" font-family="sans-serif">${seriesLabel(key)}</text>`);
    x += 30 + 8 * seriesLabel(key).length;
  }
  parts.push(`<text x="${width - 40}" y="${y}" font-size="11" text-anchor="end" font-family="sans-serif">solid: mean   dotted: quantile</text>`);
}

export function renderFigure(spec: FigureSpec): string {
  const panels = collectPanels(spec);
  if (panels.length === 0) {
    throw new Error('no panels: the inputs contain no rows');
  }
  const colors = colorMap(spec);
  const cols = Math.min(panels.length, 2);
  const rows = Math.ceil(panels.length / 2);
  const pw = 420;
  const ph = 300;
  const mx = 70;
  const my = 60;
  const width = spec.width ?? cols * (pw + mx) + 40;
  const height = rows * (ph + my) + 50;

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`);
  parts.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);
  renderLegend(parts, colors, width);
  panels.forEach((panel, i) => {
    const col = i % 2;
    const row = Math.floor(i / 2);
    renderPanel(parts, panel, colors, 50 + col * (pw + mx), 60 + row * (ph + my),
                pw, ph, spec.zoomWindow);
  });
  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
