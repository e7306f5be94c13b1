/** Thin client for the sarcalab service HTTP API. All numbers rendered by
 * the UI come from this API; the UI itself does no inference. */

export interface PredictResponse {
  probs: number[][];
  model_id: string;
  seed: number;
}

export interface Explanation {
  tokens: string[];
  weights: number[];
  intercept: number;
  r2: number;
  predicted_class: number;
  probs: number[];
  target_class: number;
  degenerate: boolean;
  config: Record<string, unknown>;
  model_id?: string;
  seed?: number;
  html?: string;
}

export interface ModelInfo {
  model_id: string;
  type: "native" | "endpoint";
  algorithm?: string;
  base_url?: string;
}

export interface ExplainOptions {
  modelId?: string;
  seed?: number;
  nSamples?: number;
  topK?: number;
  kernelWidth?: number;
  ridgeLambda?: number;
}

/** Minimal slice of fetch the client needs; tests substitute a stub. */
export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, body?: unknown): Promise<T> {
    let resp;
    try {
      resp = await this.fetchFn(this.baseUrl.replace(/\/$/, "") + path, body === undefined
        ? undefined
        : {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
          });
    } catch (e) {
      throw new ApiError(`service unreachable: ${String(e)}`);
    }
    if (!resp.ok) {
      let detail = "";
      try {
        const payload = (await resp.json()) as { detail?: unknown };
        if (payload && payload.detail !== undefined) detail = `: ${String(payload.detail)}`;
      } catch {
        // non-JSON error body; status alone is enough
      }
      throw new ApiError(`${path} failed with ${resp.status}${detail}`, resp.status);
    }
    return (await resp.json()) as T;
  }

  health(): Promise<{ status: string; model_id: string; n_classes: number }> {
    return this.request("/health");
  }

  models(): Promise<{ models: ModelInfo[] }> {
    return this.request("/models");
  }

  predict(texts: string[], modelId?: string): Promise<PredictResponse> {
    return this.request("/predict", { texts, model_id: modelId ?? null });
  }

  explain(text: string, opts: ExplainOptions = {}): Promise<Explanation> {
    return this.request("/explain", {
      text,
      model_id: opts.modelId ?? null,
      seed: opts.seed ?? null,
      n_samples: opts.nSamples ?? null,
      top_k: opts.topK ?? null,
      kernel_width: opts.kernelWidth ?? null,
      ridge_lambda: opts.ridgeLambda ?? null,
    });
  }
}
