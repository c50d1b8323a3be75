/**
 * Minimal deterministic SVG chart builder: fixed canvas, fixed fonts, and
 * every coordinate printed with a fixed precision so that identical data
 * produce byte-identical files.
 */

const W = 720;
const H = 480;
const MARGIN = { left: 64, right: 16, top: 36, bottom: 48 };

export interface Series {
  x: number[];
  y: number[];
  label: string;
  color: string;
  dashed?: boolean;
}

const fmt = (v: number): string => v.toFixed(3);

function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const candidates = [1, 2, 5, 10].map((m) => m * mag);
  const step = candidates.find((c) => span / c <= n) ?? candidates[3];
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) out.push(v);
  return out;
}

const esc = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export interface FigureOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  logY?: boolean;
  vlines?: { x: number; label: string }[];
}

export function renderFigure(series: Series[], opts: FigureOptions): string {
  const all = series.flatMap((s) => s.x);
  const yr = series.flatMap((s) => (opts.logY ? s.y.map(Math.log10) : s.y));
  let xLo = Math.min(...all);
  let xHi = Math.max(...all);
  for (const v of opts.vlines ?? []) {
    xLo = Math.min(xLo, v.x);
    xHi = Math.max(xHi, v.x);
  }
  let yLo = Math.min(...yr);
  let yHi = Math.max(...yr);
  if (xHi === xLo) xHi = xLo + 1;
  if (yHi === yLo) yHi = yLo + 1;
  const padY = 0.06 * (yHi - yLo);
  yLo -= padY;
  yHi += padY;
  const px = (x: number): number =>
    MARGIN.left + ((x - xLo) / (xHi - xLo)) * (W - MARGIN.left - MARGIN.right);
  const py = (y: number): number => {
    const v = opts.logY ? Math.log10(y) : y;
    return H - MARGIN.bottom - ((v - yLo) / (yHi - yLo)) * (H - MARGIN.top - MARGIN.bottom);
  };

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="monospace" font-size="12">`,
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(`<text x="${W / 2}" y="20" text-anchor="middle" font-size="14">${esc(opts.title)}</text>`);

  // axes and ticks
  const axis = `stroke="black" stroke-width="1"`;
  parts.push(`<line x1="${MARGIN.left}" y1="${H - MARGIN.bottom}" x2="${W - MARGIN.right}" y2="${H - MARGIN.bottom}" ${axis}/>`);
  parts.push(`<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${H - MARGIN.bottom}" ${axis}/>`);
  for (const t of niceTicks(xLo, xHi)) {
    const X = fmt(px(t));
    parts.push(`<line x1="${X}" y1="${H - MARGIN.bottom}" x2="${X}" y2="${H - MARGIN.bottom + 4}" ${axis}/>`);
    parts.push(`<text x="${X}" y="${H - MARGIN.bottom + 18}" text-anchor="middle">${Number(t.toPrecision(4))}</text>`);
  }
  for (const t of niceTicks(yLo, yHi)) {
    const Y = fmt(H - MARGIN.bottom - ((t - yLo) / (yHi - yLo)) * (H - MARGIN.top - MARGIN.bottom));
    const label = opts.logY ? `1e${Number(t.toPrecision(3))}` : String(Number(t.toPrecision(3)));
    parts.push(`<line x1="${MARGIN.left - 4}" y1="${Y}" x2="${MARGIN.left}" y2="${Y}" ${axis}/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${Y}" text-anchor="end" dominant-baseline="middle">${label}</text>`);
  }
  parts.push(`<text x="${W / 2}" y="${H - 10}" text-anchor="middle">${esc(opts.xLabel)}</text>`);
  parts.push(`<text x="16" y="${H / 2}" text-anchor="middle" transform="rotate(-90 16 ${H / 2})">${esc(opts.yLabel)}</text>`);

  for (const v of opts.vlines ?? []) {
    const X = fmt(px(v.x));
    parts.push(`<line x1="${X}" y1="${MARGIN.top}" x2="${X}" y2="${H - MARGIN.bottom}" stroke="gray" stroke-width="1" stroke-dasharray="6 3"/>`);
    parts.push(`<text x="${X}" y="${MARGIN.top - 4}" text-anchor="middle" fill="gray">${esc(v.label)}</text>`);
  }

  // data layers
  series.forEach((s, idx) => {
    const pts = s.x.map((x, i) => `${fmt(px(x))},${fmt(py(s.y[i]))}`).join(" ");
    const dash = s.dashed ? ` stroke-dasharray="4 3"` : "";
    parts.push(`<polyline fill="none" stroke="${s.color}" stroke-width="1.5"${dash} points="${pts}"/>`);
    for (let i = 0; i < s.x.length; i += 1) {
      parts.push(`<circle cx="${fmt(px(s.x[i]))}" cy="${fmt(py(s.y[i]))}" r="2.5" fill="${s.color}"/>`);
    }
    parts.push(`<text x="${W - MARGIN.right - 8}" y="${MARGIN.top + 16 * (idx + 1)}" text-anchor="end" fill="${s.color}">${esc(s.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
