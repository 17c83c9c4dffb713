/** UI state machine. Pure functions only so the submit flow is testable without a DOM. */

import type { AnalysisRequest, ReportPayload } from "./api.js";
import { ApiError, SUPPORTED_SCHEMA_VERSION } from "./api.js";

export interface UiState {
  text: string;
  geo: string;
  context: string;
  timeframe: string;
  requestInFlight: boolean;
  lastReport: ReportPayload | null;
  errorBanner: string | null;
  validationMessage: string | null;
}

// fallback labels only; the real lists come from GET /api/v1/config
export function initialState(): UiState {
  return {
    text: "",
    geo: "US",
    context: "web",
    timeframe: "Past 12 months",
    requestInFlight: false,
    lastReport: null,
    errorBanner: null,
    validationMessage: null,
  };
}

/** Submission is impossible while a request is in flight or the text is blank. */
export function canSubmit(state: UiState): boolean {
  return !state.requestInFlight && state.text.trim() !== "";
}

export function buildAnalysisRequest(state: UiState): AnalysisRequest {
  return {
    text: state.text,
    geo: state.geo,
    context: state.context,
    timeframe: state.timeframe,
  };
}

/** Pull the keyword name out of a retrieval failure detail such as
 *  "interest retrieval failed for keyword 'startup': no fixture". */
export function failingKeywordFromDetail(detail: string): string | null {
  const match = detail.match(/keyword '([^']+)'/);
  return match ? (match[1] ?? null) : null;
}

export function bannerForError(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.kind === "trends_error") {
      const keyword = failingKeywordFromDetail(err.detail);
      if (keyword !== null) {
        return `Interest retrieval failed for keyword '${keyword}'.`;
      }
      return `Interest retrieval failed: ${err.detail}`;
    }
    return err.detail;
  }
  return err instanceof Error ? err.message : String(err);
}

export interface SubmitOutcome {
  state: UiState;
  /** True when a network request was actually issued. */
  requested: boolean;
}

/**
 * Run one submit attempt. The poster is injected so tests can observe
 * whether a request went out at all.
 */
export async function performSubmit(
  state: UiState,
  post: (request: AnalysisRequest) => Promise<ReportPayload>,
): Promise<SubmitOutcome> {
  if (state.requestInFlight) {
    return { state, requested: false };
  }
  if (state.text.trim() === "") {
    return {
      state: { ...state, validationMessage: "Enter the idea text before analyzing." },
      requested: false,
    };
  }
  // settled: how the state looks once the round trip has finished
  const settled: UiState = {
    ...state,
    requestInFlight: false,
    validationMessage: null,
    errorBanner: null,
  };
  try {
    const report = await post(buildAnalysisRequest(state));
    if (report.schema_version !== SUPPORTED_SCHEMA_VERSION) {
      return {
        state: {
          ...settled,
          errorBanner:
            `Report schema version ${report.schema_version} is not supported ` +
            `(expected ${SUPPORTED_SCHEMA_VERSION}); update the client.`,
        },
        requested: true,
      };
    }
    return { state: { ...settled, lastReport: report }, requested: true };
  } catch (err) {
    return { state: { ...settled, errorBanner: bannerForError(err) }, requested: true };
  }
}
