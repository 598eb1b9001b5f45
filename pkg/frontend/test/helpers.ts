import { FetchLike } from "../src/api.js";
import { Outcome } from "../src/state.js";
import { Params, PredictResponse } from "../src/types.js";

export const PARAMS: Params = { k: 2, threshold: 0.2, min_support: 5, top_n: 3 };

export function prediction(
  prefix: number[],
  entries: Array<[number, string, number]>,
  source: "cluster" | "markov-fallback" = "cluster"
): PredictResponse {
  const support = 100;
  return {
    prefix,
    predictions: entries.map(([page, name, p]) => ({
      page,
      name,
      p,
      count: Math.round(p * support),
    })),
    source,
    cluster_size: 120,
    contributing_count: support,
    support,
    markov_order_used: source === "cluster" ? null : 1,
    params: PARAMS,
  };
}

export interface StubCall {
  url: string;
}

/** fetch stub keyed on `prefix=` value; records every request it serves. */
export function stubFetch(
  routes: Record<string, unknown>,
  calls: StubCall[] = []
): FetchLike {
  return async (url: string) => {
    calls.push({ url });
    const match = /prefix=([^&]*)/.exec(url);
    const key = url.includes("/categories") ? "categories" : match ? match[1] : "";
    if (key in routes) {
      return { status: 200, json: async () => routes[key] };
    }
    return { status: 400, json: async () => ({ error: `no route for ${key}` }) };
  };
}

export const CATEGORIES = {
  categories: [
    { id: 1, name: "frontpage" },
    { id: 2, name: "news" },
    { id: 3, name: "tech" },
    { id: 4, name: "local" },
    { id: 7, name: "misc" },
    { id: 12, name: "sports" },
  ],
};

/** Narrow an Outcome to its failure arm or fail the test. */
export function expectFail(outcome: Outcome): { message: string; stale: boolean } {
  if (outcome.ok) throw new Error("expected a failure outcome");
  return outcome;
}
