/** DOM wiring for the single-page client: controls on the left, results on the right. */

import { getConfig, postAnalyze } from "./api.js";
import type { AnalysisRequest, ConfigDoc, ReportPayload } from "./api.js";
import { canSubmit, initialState, performSubmit } from "./state.js";
import type { UiState } from "./state.js";
import { renderTrendChart } from "./chart.js";
import { renderRampLegend, renderRegionMap } from "./map.js";
import { renderKeywordList, renderRegionTable, renderSummary } from "./tables.js";

function el<T extends HTMLElement>(doc: Document, id: string): T {
  const node = doc.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function populateSelect(select: HTMLSelectElement, values: string[], chosen: string): void {
  select.innerHTML = "";
  for (const value of values) {
    const option = select.ownerDocument.createElement("option");
    option.value = value;
    option.textContent = value;
    option.selected = value === chosen;
    select.appendChild(option);
  }
}

export function init(doc: Document, fetchFn: typeof fetch): void {
  const textArea = el<HTMLTextAreaElement>(doc, "idea-text");
  const geoSelect = el<HTMLSelectElement>(doc, "geo-select");
  const contextSelect = el<HTMLSelectElement>(doc, "context-select");
  const timeframeSelect = el<HTMLSelectElement>(doc, "timeframe-select");
  const analyzeBtn = el<HTMLButtonElement>(doc, "analyze-btn");
  const validation = el<HTMLElement>(doc, "validation");
  const banner = el<HTMLElement>(doc, "banner");
  const results = el<HTMLElement>(doc, "results");
  const summaryBox = el<HTMLElement>(doc, "summary");
  const keywordBox = el<HTMLElement>(doc, "keywords");
  const chartBox = el<HTMLElement>(doc, "chart");
  const mapBox = el<HTMLElement>(doc, "map");
  const legendBox = el<HTMLElement>(doc, "ramp-legend");
  const tableBox = el<HTMLElement>(doc, "region-table");
  const distanceToggle = el<HTMLInputElement>(doc, "toggle-distance");

  let state: UiState = initialState();
  let config: ConfigDoc | null = null;

  const poster = (request: AnalysisRequest): Promise<ReportPayload> =>
    postAnalyze(fetchFn, request);

  function renderResults(report: ReportPayload): void {
    summaryBox.innerHTML = renderSummary(report);
    keywordBox.innerHTML = renderKeywordList(report);
    chartBox.innerHTML = renderTrendChart(report);
    mapBox.innerHTML = renderRegionMap(report);
    if (config !== null) {
      legendBox.innerHTML = renderRampLegend(config.color_ramp);
    }
    tableBox.innerHTML = renderRegionTable(report, distanceToggle.checked);
  }

  function render(): void {
    analyzeBtn.disabled = !canSubmit(state);
    analyzeBtn.textContent = state.requestInFlight ? "Analyzing..." : "Analyze";
    validation.textContent = state.validationMessage ?? "";
    banner.textContent = state.errorBanner ?? "";
    banner.hidden = state.errorBanner === null;
    results.hidden = state.lastReport === null;
    if (state.lastReport !== null) {
      renderResults(state.lastReport);
    }
  }

  function pullControls(): void {
    state = {
      ...state,
      text: textArea.value,
      geo: geoSelect.value,
      context: contextSelect.value,
      timeframe: timeframeSelect.value,
    };
  }

  textArea.addEventListener("input", () => {
    pullControls();
    state = { ...state, validationMessage: null };
    render();
  });

  distanceToggle.addEventListener("change", () => {
    if (state.lastReport !== null) {
      tableBox.innerHTML = renderRegionTable(state.lastReport, distanceToggle.checked);
    }
  });

  analyzeBtn.addEventListener("click", async () => {
    pullControls();
    if (state.requestInFlight) {
      return;
    }
    const before = state;
    if (canSubmit(before)) {
      state = { ...before, requestInFlight: true };
      render();
    }
    const outcome = await performSubmit(before, poster);
    state = outcome.state;
    render();
  });

  getConfig(fetchFn)
    .then((doc) => {
      config = doc;
      populateSelect(geoSelect, doc.geos, doc.defaults.geo);
      populateSelect(contextSelect, doc.contexts, doc.defaults.context);
      populateSelect(timeframeSelect, doc.timeframes, doc.defaults.timeframe);
      state = {
        ...state,
        geo: doc.defaults.geo,
        context: doc.defaults.context,
        timeframe: doc.defaults.timeframe,
      };
      render();
    })
    .catch((err: unknown) => {
      state = {
        ...state,
        errorBanner: `Could not load service configuration: ${err instanceof Error ? err.message : String(err)}`,
      };
      render();
    });

  render();
}

if (typeof document !== "undefined" && document.getElementById("idea-text") !== null) {
  init(document, fetch.bind(globalThis));
}
