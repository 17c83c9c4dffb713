/** Multi-line SVG trend chart: one line per keyword plus one for the idea series. */

import type { ReportPayload } from "./api.js";

const WIDTH = 680;
const HEIGHT = 300;
const PAD_LEFT = 44;
const PAD_RIGHT = 12;
const PAD_TOP = 12;
const PAD_BOTTOM = 28;

// keyword line colors; the combined idea line is always drawn last and darkest
const LINE_COLORS = [
  "#e4572e",
  "#17bebb",
  "#ffc914",
  "#76b041",
  "#b36ae2",
  "#f45b69",
  "#2e86ab",
  "#f18f01",
];
const IDEA_COLOR = "#111111";

function escapeXml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function points(values: number[]): string {
  const innerW = WIDTH - PAD_LEFT - PAD_RIGHT;
  const innerH = HEIGHT - PAD_TOP - PAD_BOTTOM;
  const step = values.length > 1 ? innerW / (values.length - 1) : 0;
  return values
    .map((v, i) => {
      const x = PAD_LEFT + (values.length > 1 ? i * step : innerW / 2);
      // interest and idea strength both live on a 0..100 scale
      const y = PAD_TOP + innerH * (1 - v / 100);
      return `${x.toFixed(2)},${y.toFixed(2)}`;
    })
    .join(" ");
}

interface Series {
  name: string;
  values: number[];
  color: string;
  isIdea: boolean;
}

function collectSeries(payload: ReportPayload): Series[] {
  const names = Object.keys(payload.series.keywords).sort();
  const series: Series[] = names.map((name, i) => ({
    name,
    values: payload.series.keywords[name] ?? [],
    color: LINE_COLORS[i % LINE_COLORS.length] ?? IDEA_COLOR,
    isIdea: false,
  }));
  series.push({ name: "idea", values: payload.series.idea, color: IDEA_COLOR, isIdea: true });
  return series;
}

export function renderTrendChart(payload: ReportPayload): string {
  const series = collectSeries(payload);
  const stamps = payload.series.timestamps;
  const axis =
    `<line x1="${PAD_LEFT}" y1="${PAD_TOP}" x2="${PAD_LEFT}" y2="${HEIGHT - PAD_BOTTOM}" class="axis"/>` +
    `<line x1="${PAD_LEFT}" y1="${HEIGHT - PAD_BOTTOM}" x2="${WIDTH - PAD_RIGHT}" y2="${HEIGHT - PAD_BOTTOM}" class="axis"/>`;
  const yLabels = [0, 50, 100]
    .map((v) => {
      const y = PAD_TOP + (HEIGHT - PAD_TOP - PAD_BOTTOM) * (1 - v / 100);
      return `<text x="${PAD_LEFT - 6}" y="${y.toFixed(2)}" class="tick" text-anchor="end" dominant-baseline="middle">${v}</text>`;
    })
    .join("");
  const first = stamps[0] ?? "";
  const last = stamps[stamps.length - 1] ?? "";
  const xLabels =
    `<text x="${PAD_LEFT}" y="${HEIGHT - 8}" class="tick">${escapeXml(first)}</text>` +
    `<text x="${WIDTH - PAD_RIGHT}" y="${HEIGHT - 8}" class="tick" text-anchor="end">${escapeXml(last)}</text>`;
  const lines = series
    .map((s) => {
      const width = s.isIdea ? 3 : 1.5;
      return (
        `<polyline class="series-line" data-series="${escapeXml(s.name)}" fill="none" ` +
        `stroke="${s.color}" stroke-width="${width}" points="${points(s.values)}">` +
        `<title>${escapeXml(s.name)}</title></polyline>`
      );
    })
    .join("");
  const legend = series
    .map(
      (s, i) =>
        `<text x="${PAD_LEFT + 8}" y="${PAD_TOP + 14 * i + 10}" class="legend" ` +
        `fill="${s.color}">${escapeXml(s.isIdea ? "idea (combined)" : s.name)}</text>`,
    )
    .join("");
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="search interest over time" ` +
    `xmlns="http://www.w3.org/2000/svg">${axis}${yLabels}${xLabels}${lines}${legend}</svg>`
  );
}
