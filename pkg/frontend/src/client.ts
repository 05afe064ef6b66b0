/** Minimal fetch wrapper for the two service endpoints. */

import type { HealthResponse, TransliterateResponse } from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number | null = null,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

export interface TransliterateOptions {
  prefixMode?: boolean;
  topK?: number;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class TransliterationClient {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    // bind so an injected page `fetch` keeps its expected receiver
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  async transliterate(
    text: string,
    options: TransliterateOptions = {},
  ): Promise<TransliterateResponse> {
    const body: Record<string, unknown> = { text };
    if (options.prefixMode !== undefined) body.prefix_mode = options.prefixMode;
    if (options.topK !== undefined) body.top_k = options.topK;
    const response = await this.request("/v1/transliterate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return (await response.json()) as TransliterateResponse;
  }

  async health(): Promise<HealthResponse> {
    const response = await this.request("/v1/health", { method: "GET" });
    return (await response.json()) as HealthResponse;
  }

  private async request(path: string, init: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (cause) {
      throw new ServiceError(`service unreachable: ${String(cause)}`);
    }
    if (!response.ok) {
      throw new ServiceError(`service answered ${response.status}`, response.status);
    }
    return response;
  }
}
