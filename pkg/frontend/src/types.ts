// Shapes of the /api/v1 responses the explorer consumes.

export interface Category {
  id: number;
  name: string;
}

export interface PredictionEntry {
  page: number;
  name: string;
  p: number;
  count: number;
}

export interface Params {
  k: number;
  threshold: number;
  min_support: number;
  top_n: number;
}

export interface PredictResponse {
  prefix: number[];
  predictions: PredictionEntry[];
  source: "cluster" | "markov-fallback";
  cluster_size: number;
  contributing_count: number;
  support: number;
  markov_order_used: number | null;
  params: Params;
}

export interface ExpandResponse extends PredictResponse {
  children: ExpandResponse[];
}
