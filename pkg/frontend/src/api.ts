// Typed client for the pcdecomp HTTP service. Every number rendered by the
// UI comes from these response payloads; the client never computes ratios,
// weights or inconsistency itself.

export interface WorstTriad {
  i: number;
  j: number;
  k: number;
  deviation: number;
}

export interface Decomposition {
  indices: number[];
  k: number;
  Y: number;
  Z: number;
  log_params: number[];
  ortho: number[][];
  consistent: number[][];
}

export interface Analysis {
  weights: number[];
  ranking: string[];
  inconsistency: number;
  worst_triad: WorstTriad | null;
  decomposition: Decomposition | null;
  reconstruction_error: number;
  unjudged?: number[][];
}

export interface SessionState {
  id: string;
  labels: string[];
  matrix: number[][];
  revision: number;
  history: unknown[];
  unjudged?: number[][];
}

export interface EntryResponse {
  revision: number;
  matrix: number[][];
  analysis: Analysis;
}

export interface StepResponse extends EntryResponse {
  step: {
    inconsistency_before: number;
    inconsistency_after: number;
    max_change: number;
  };
}

export interface AnalyzeResponse {
  matrix: number[][];
  labels: string[];
  analysis: Analysis;
}

interface ErrorBody {
  code: string;
  message: string;
}

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.status = status;
    this.code = code;
  }

  get isRevisionConflict(): boolean {
    return this.status === 409;
  }
}

async function fail(response: Response): Promise<never> {
  let code = "unknown";
  let message = response.statusText;
  try {
    const body = (await response.json()) as { detail?: ErrorBody | unknown };
    if (body.detail && typeof body.detail === "object" && "code" in (body.detail as ErrorBody)) {
      code = (body.detail as ErrorBody).code;
      message = (body.detail as ErrorBody).message;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, code, message);
}

export class ServiceClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: typeof fetch;

  constructor(baseUrl: string, fetchImpl: typeof fetch = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      await fail(response);
    }
    return (await response.json()) as T;
  }

  createSession(labels: string[]): Promise<SessionState> {
    return this.request<SessionState>("POST", "/sessions", { labels });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request<SessionState>("GET", `/sessions/${id}`);
  }

  putEntry(id: string, i: number, j: number, value: number, revision: number): Promise<EntryResponse> {
    return this.request<EntryResponse>("PUT", `/sessions/${id}/entry`, { i, j, value, revision });
  }

  getAnalysis(id: string): Promise<Analysis> {
    return this.request<Analysis>("GET", `/sessions/${id}/analysis`);
  }

  applyStep(id: string, revision: number): Promise<StepResponse> {
    return this.request<StepResponse>("POST", `/sessions/${id}/approximate`, { revision });
  }

  undo(id: string, revision: number): Promise<EntryResponse> {
    return this.request<EntryResponse>("POST", `/sessions/${id}/undo`, { revision });
  }

  analyze(matrix: number[][], labels?: string[]): Promise<AnalyzeResponse> {
    return this.request<AnalyzeResponse>("POST", "/matrices/analyze", { matrix, labels });
  }
}
