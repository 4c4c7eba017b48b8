/** Minimal deterministic SVG line/heat plotting.
 *
 * Output depends only on the input data: fixed canvas, fixed number
 * formatting, no timestamps. Byte-identical output for identical inputs.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
}

const WIDTH = 800;
const HEIGHT = 500;
const MARGIN = { left: 70, right: 170, top: 40, bottom: 55 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/** Fixed-precision decimal formatting so output is platform-independent. */
export function fmt(value: number): string {
  if (value === 0) {
    return "0";
  }
  return Number(value.toPrecision(8)).toString();
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const span = hi - lo;
  const step0 = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? 10 * mag;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

export interface PlotOptions {
  title: string;
  xLabel: string;
  yLabel: string;
}

export function linePlot(series: Series[], options: PlotOptions): string {
  if (series.length === 0 || series.every((s) => s.x.length === 0)) {
    throw new Error("nothing to plot");
  }
  for (const s of series) {
    if (s.x.length !== s.y.length) {
      throw new Error(`series ${s.label}: x and y lengths differ`);
    }
  }
  const xs = series.flatMap((s) => s.x);
  const ys = series.flatMap((s) => s.y);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const pad = (hi: number, lo: number) => (hi > lo ? 0.05 * (hi - lo) : 0.5);
  const y0 = yLo - pad(yHi, yLo);
  const y1 = yHi + pad(yHi, yLo);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo || 1)) * plotW;
  const py = (y: number) => MARGIN.top + plotH - ((y - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">${escapeXml(options.title)}</text>`,
  );
  // axes box
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="black"/>`,
  );
  for (const t of niceTicks(xLo, xHi, 8)) {
    const x = px(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top + plotH}" x2="${fmt(x)}" y2="${MARGIN.top + plotH + 5}" stroke="black"/>`,
      `<text x="${fmt(x)}" y="${MARGIN.top + plotH + 20}" text-anchor="middle" font-family="sans-serif" font-size="12">${fmt(t)}</text>`,
    );
  }
  for (const t of niceTicks(y0, y1, 6)) {
    const y = py(t);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${fmt(y)}" x2="${MARGIN.left}" y2="${fmt(y)}" stroke="black"/>`,
      `<text x="${MARGIN.left - 9}" y="${fmt(y + 4)}" text-anchor="end" font-family="sans-serif" font-size="12">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-family="sans-serif" font-size="14">${escapeXml(options.xLabel)}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${escapeXml(options.yLabel)}</text>`,
  );
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const points = s.x.map((x, j) => `${fmt(px(x))},${fmt(py(s.y[j]))}`).join(" ");
    parts.push(`<polyline points="${points}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
    const ly = MARGIN.top + 16 + 18 * i;
    parts.push(
      `<line x1="${WIDTH - MARGIN.right + 10}" y1="${ly - 4}" x2="${WIDTH - MARGIN.right + 34}" y2="${ly - 4}" stroke="${color}" stroke-width="1.5"/>`,
      `<text x="${WIDTH - MARGIN.right + 40}" y="${ly}" font-family="sans-serif" font-size="12">${escapeXml(s.label)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Coarse heat map of a 2D field; cells are averaged down to at most
 * maxCells per axis so the output stays a reasonable size. */
export function heatMap(
  values: (ix: number, iy: number) => number,
  nx: number,
  ny: number,
  options: PlotOptions,
  maxCells = 128,
): string {
  const bx = Math.max(1, Math.ceil(nx / maxCells));
  const by = Math.max(1, Math.ceil(ny / maxCells));
  const cx = Math.ceil(nx / bx);
  const cy = Math.ceil(ny / by);
  const cells: number[] = new Array(cx * cy).fill(0);
  for (let jx = 0; jx < cx; jx++) {
    for (let jy = 0; jy < cy; jy++) {
      let sum = 0;
      let count = 0;
      for (let ix = jx * bx; ix < Math.min(nx, (jx + 1) * bx); ix++) {
        for (let iy = jy * by; iy < Math.min(ny, (jy + 1) * by); iy++) {
          sum += values(ix, iy);
          count++;
        }
      }
      cells[jy * cx + jx] = sum / count;
    }
  }
  const lo = Math.min(...cells);
  const hi = Math.max(...cells);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">${escapeXml(options.title)}</text>`,
  );
  for (let jx = 0; jx < cx; jx++) {
    for (let jy = 0; jy < cy; jy++) {
      const v = (cells[jy * cx + jx] - lo) / (hi - lo || 1);
      const r = Math.round(255 * v);
      const b = Math.round(255 * (1 - v));
      const x = MARGIN.left + (jx / cx) * plotW;
      const y = MARGIN.top + plotH - ((jy + 1) / cy) * plotH;
      parts.push(
        `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(plotW / cx + 0.5)}" height="${fmt(plotH / cy + 0.5)}" fill="rgb(${r},64,${b})"/>`,
      );
    }
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="black"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-family="sans-serif" font-size="14">${escapeXml(options.xLabel)}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${escapeXml(options.yLabel)}</text>`,
    "</svg>",
  );
  return parts.join("\n") + "\n";
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
