/** Typed access to the analysis service. All network traffic goes through here. */

export interface KeywordEntry {
  text: string;
  weight: number;
  normalized_weight: number;
}

export interface RegionRow {
  region_code: string;
  strength: number;
  bucket: number;
  hex_color: string;
  relative_capital_distance: number | null;
}

export interface ReportPayload {
  schema_version: number;
  extraction: {
    candidate_count: number;
    converged: boolean;
    dropped: string[];
    iterations: number;
    keywords: KeywordEntry[];
  };
  query: {
    context: string;
    geo: string;
    max_keywords: number;
    mode: string;
    normalized_scale: boolean;
    text: string;
    timeframe: string;
    timeframe_token: string;
  };
  region_summary: {
    max_strength: number;
    min_strength: number;
    strongest_region: string | null;
  };
  regions: RegionRow[];
  series: {
    idea: number[];
    keywords: Record<string, number[]>;
    timestamps: string[];
  };
}

export interface ConfigDoc {
  color_ramp: string[];
  contexts: string[];
  geos: string[];
  timeframes: string[];
  defaults: {
    context: string;
    geo: string;
    max_keywords: number;
    mode: string;
    timeframe: string;
  };
}

// the form sends exactly these four fields; the service fills in its own defaults
// (max_keywords and mode stay server-side)
export interface AnalysisRequest {
  text: string;
  geo: string;
  context: string;
  timeframe: string;
}

/** Error body the service returns for every non-2xx response. */
export interface ServiceError {
  kind: string;
  detail: string;
}

export class ApiError extends Error {
  readonly status: number;
  readonly kind: string;
  readonly detail: string;

  constructor(status: number, kind: string, detail: string) {
    super(`${kind}: ${detail}`);
    this.status = status;
    this.kind = kind;
    this.detail = detail;
  }
}

export const SUPPORTED_SCHEMA_VERSION = 1;

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorFromResponse(resp: Response): Promise<ApiError> {
  let kind = "internal_error";
  let detail = `unexpected status ${resp.status}`;
  try {
    const body = (await resp.json()) as { error?: Partial<ServiceError> };
    if (body && body.error) {
      kind = body.error.kind ?? kind;
      detail = body.error.detail ?? detail;
    }
  } catch {
    // non-JSON body: keep the generic detail
  }
  return new ApiError(resp.status, kind, detail);
}

export async function getConfig(fetchFn: FetchLike, base = ""): Promise<ConfigDoc> {
  const resp = await fetchFn(`${base}/api/v1/config`);
  if (!resp.ok) {
    throw await errorFromResponse(resp);
  }
  return (await resp.json()) as ConfigDoc;
}

export async function postAnalyze(
  fetchFn: FetchLike,
  request: AnalysisRequest,
  base = "",
): Promise<ReportPayload> {
  const resp = await fetchFn(`${base}/api/v1/analyze`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
  });
  if (!resp.ok) {
    throw await errorFromResponse(resp);
  }
  return (await resp.json()) as ReportPayload;
}
