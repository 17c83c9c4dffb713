/** HTML fragments for the keyword list and the region detail table.
 *  Values are printed exactly as the report carries them. */

import type { ReportPayload } from "./api.js";

function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderKeywordList(payload: ReportPayload): string {
  const rows = payload.extraction.keywords
    .map(
      (kw) =>
        `<tr><td>${escapeHtml(kw.text)}</td>` +
        `<td class="num">${kw.weight}</td>` +
        `<td class="num">${kw.normalized_weight}</td></tr>`,
    )
    .join("");
  const dropped =
    payload.extraction.dropped.length > 0
      ? `<p class="dropped">dropped: ${payload.extraction.dropped.map(escapeHtml).join(", ")}</p>`
      : "";
  return (
    `<table class="keyword-list"><thead><tr>` +
    `<th>keyword</th><th>weight</th><th>normalized weight</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>${dropped}`
  );
}

export function renderRegionTable(payload: ReportPayload, showDistance: boolean): string {
  const sorted = [...payload.regions].sort(
    (a, b) => b.strength - a.strength || a.region_code.localeCompare(b.region_code),
  );
  const distanceHead = showDistance ? `<th>relative capital distance</th>` : "";
  const rows = sorted
    .map((row) => {
      const distanceCell = showDistance
        ? `<td class="num">${row.relative_capital_distance === null ? "" : row.relative_capital_distance}</td>`
        : "";
      return (
        `<tr><td>${escapeHtml(row.region_code)}</td>` +
        `<td class="num">${row.strength}</td>` +
        `<td class="num"><span class="swatch" style="background:${escapeHtml(row.hex_color)}"></span>${row.bucket}</td>` +
        `${distanceCell}</tr>`
      );
    })
    .join("");
  return (
    `<table class="region-table"><thead><tr>` +
    `<th>region</th><th>strength</th><th>bucket</th>${distanceHead}` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderSummary(payload: ReportPayload): string {
  const strongest = payload.region_summary.strongest_region;
  return (
    `<dl class="summary">` +
    `<dt>strongest region</dt><dd>${strongest === null ? "n/a" : escapeHtml(strongest)}</dd>` +
    `<dt>max strength</dt><dd>${payload.region_summary.max_strength}</dd>` +
    `<dt>min strength</dt><dd>${payload.region_summary.min_strength}</dd>` +
    `<dt>timeframe token</dt><dd>${escapeHtml(payload.query.timeframe_token)}</dd>` +
    `</dl>`
  );
}
