/** Tile-grid choropleth. Every cell is painted with the hex color the report
 *  assigned to that region; the client never rescales or rebuckets anything. */

import type { ReportPayload, RegionRow } from "./api.js";

// col,row tile positions for the 50 states plus DC
const TILE_GRID: Record<string, [number, number]> = {
  AK: [0, 0],
  ME: [11, 0],
  VT: [10, 1],
  NH: [11, 1],
  WA: [1, 2],
  ID: [2, 2],
  MT: [3, 2],
  ND: [4, 2],
  MN: [5, 2],
  IL: [6, 2],
  WI: [7, 2],
  MI: [8, 2],
  NY: [9, 2],
  MA: [10, 2],
  RI: [11, 2],
  OR: [1, 3],
  NV: [2, 3],
  WY: [3, 3],
  SD: [4, 3],
  IA: [5, 3],
  IN: [6, 3],
  OH: [7, 3],
  PA: [8, 3],
  NJ: [9, 3],
  CT: [10, 3],
  CA: [0, 4],
  UT: [1, 4],
  CO: [2, 4],
  NE: [3, 4],
  MO: [4, 4],
  KY: [5, 4],
  WV: [6, 4],
  VA: [7, 4],
  MD: [8, 4],
  DE: [9, 4],
  AZ: [1, 5],
  NM: [2, 5],
  KS: [3, 5],
  AR: [4, 5],
  TN: [5, 5],
  NC: [6, 5],
  SC: [7, 5],
  DC: [8, 5],
  OK: [3, 6],
  LA: [4, 6],
  MS: [5, 6],
  AL: [6, 6],
  GA: [7, 6],
  HI: [0, 7],
  TX: [3, 7],
  FL: [8, 7],
};

const CELL = 40;
const GAP = 4;
const COLS = 12;

function escapeXml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function cellTitle(row: RegionRow): string {
  const distance =
    row.relative_capital_distance === null
      ? "n/a"
      : String(row.relative_capital_distance);
  return `${row.region_code}: strength ${row.strength}, relative capital distance ${distance}`;
}

function textColor(hex: string): string {
  // light label on the dark end of the ramp
  const raw = hex.replace("#", "");
  if (raw.length !== 6) {
    return "#111111";
  }
  const r = parseInt(raw.slice(0, 2), 16);
  const g = parseInt(raw.slice(2, 4), 16);
  const b = parseInt(raw.slice(4, 6), 16);
  const luma = 0.299 * r + 0.587 * g + 0.114 * b;
  return luma < 140 ? "#ffffff" : "#111111";
}

export function renderRegionMap(payload: ReportPayload): string {
  let overflow = 0;
  let maxRow = 0;
  for (const pos of Object.values(TILE_GRID)) {
    maxRow = Math.max(maxRow, pos[1]);
  }
  const cells = payload.regions
    .map((row) => {
      let pos = TILE_GRID[row.region_code];
      if (pos === undefined) {
        // regions outside the known grid line up under the map
        pos = [overflow % COLS, maxRow + 2 + Math.floor(overflow / COLS)];
        overflow += 1;
      }
      const x = pos[0] * (CELL + GAP);
      const y = pos[1] * (CELL + GAP);
      return (
        `<g class="region-cell" data-region="${escapeXml(row.region_code)}">` +
        `<rect x="${x}" y="${y}" width="${CELL}" height="${CELL}" rx="4" fill="${escapeXml(row.hex_color)}">` +
        `<title>${escapeXml(cellTitle(row))}</title></rect>` +
        `<text x="${x + CELL / 2}" y="${y + CELL / 2}" text-anchor="middle" dominant-baseline="central" ` +
        `class="region-label" fill="${textColor(row.hex_color)}">${escapeXml(row.region_code)}</text>` +
        `</g>`
      );
    })
    .join("");
  const rows = maxRow + 2 + Math.ceil(overflow / COLS);
  const width = COLS * (CELL + GAP);
  const height = rows * (CELL + GAP);
  return (
    `<svg viewBox="0 0 ${width} ${height}" role="img" aria-label="regional idea strength" ` +
    `xmlns="http://www.w3.org/2000/svg">${cells}</svg>`
  );
}

/** Ramp legend drawn from the server-provided color list, weakest to strongest. */
export function renderRampLegend(colors: string[]): string {
  const swatch = 22;
  const cells = colors
    .map(
      (hex, i) =>
        `<rect x="${i * swatch}" y="0" width="${swatch}" height="12" fill="${escapeXml(hex)}"/>`,
    )
    .join("");
  const width = colors.length * swatch;
  return (
    `<svg viewBox="0 0 ${width} 26" class="ramp-legend" xmlns="http://www.w3.org/2000/svg">${cells}` +
    `<text x="0" y="24" class="tick">weaker</text>` +
    `<text x="${width}" y="24" class="tick" text-anchor="end">stronger</text></svg>`
  );
}
