import { Category, ExpandResponse, PredictResponse } from "./types.js";

// Minimal slice of fetch so tests can inject a stub.
export type FetchLike = (url: string) => Promise<{
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(message: string, public status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url) => fetch(url)
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path);
    const body = (await resp.json()) as Record<string, unknown>;
    if (resp.status !== 200) {
      const message =
        typeof body?.error === "string" ? body.error : `request failed (${resp.status})`;
      throw new ApiError(message, resp.status);
    }
    return body as T;
  }

  categories(): Promise<{ categories: Category[] }> {
    return this.get("/api/v1/categories");
  }

  predict(prefix: number[], top?: number): Promise<PredictResponse> {
    const query = top === undefined ? "" : `&top=${top}`;
    return this.get(`/api/v1/predict?prefix=${prefix.join(",")}${query}`);
  }

  expand(prefix: number[], depth: number, top: number): Promise<ExpandResponse> {
    return this.get(
      `/api/v1/expand?prefix=${prefix.join(",")}&depth=${depth}&top=${top}`
    );
  }
}
