// Thin fetch wrapper for the /api endpoints. Every method returns the
// parsed payload or throws ApiError carrying the backend's error code.

import type {
  ApiErrorBody,
  CatalogPayload,
  NodeDetail,
  QueryPayload,
  SearchPayload,
  StatsPayload,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

export type SearchOptions = {
  limit?: number;
  minSim?: number;
};

export class ApiClient {
  baseUrl: string;

  constructor(baseUrl = "") {
    // trailing slash would double up when paths are appended
    this.baseUrl = baseUrl.endsWith("/") ? baseUrl.slice(0, -1) : baseUrl;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    const body = await response.json();
    if (!response.ok) {
      const error = (body as ApiErrorBody).error ?? {
        code: "http_error",
        message: `request failed with status ${response.status}`,
      };
      throw new ApiError(response.status, error.code, error.message);
    }
    return body as T;
  }

  search(query: string, options: SearchOptions = {}, signal?: AbortSignal): Promise<SearchPayload> {
    const params = new URLSearchParams({ q: query });
    if (options.limit !== undefined) params.set("limit", String(options.limit));
    if (options.minSim !== undefined) params.set("minSim", String(options.minSim));
    return this.request(`/api/search?${params}`, { signal });
  }

  node(id: string, signal?: AbortSignal): Promise<NodeDetail> {
    // ids contain ':' and '/' which are legal in a URL path; encodeURI
    // leaves them alone while escaping anything that is not
    return this.request(`/api/node/${encodeURI(id)}`, { signal });
  }

  frames(signal?: AbortSignal): Promise<CatalogPayload> {
    return this.request("/api/frames", { signal });
  }

  query(patternText: string, signal?: AbortSignal): Promise<QueryPayload> {
    return this.request("/api/query", {
      method: "POST",
      headers: { "Content-Type": "text/plain; charset=utf-8" },
      body: patternText,
      signal,
    });
  }

  stats(signal?: AbortSignal): Promise<StatsPayload> {
    return this.request("/api/stats", { signal });
  }
}
