// Typed client for the walkcluster HTTP service (GET /search, GET /stats).

export interface Doc {
  id: number;
  url: string;
  snippet: string;
}

export interface Cluster {
  id: number;
  pivot_doc: Doc;
  size: number;
  docs: Doc[];
}

export interface CoverageReport {
  coverage: number;
  n_links: number;
  incluster: number;
  n_clusters: number;
  max_size: number;
}

export interface SearchResponse {
  query: string;
  params: { k: number; tcm: number; seed: number; max_walk_factor: number };
  coverage_report: CoverageReport;
  clusters: Cluster[];
  unassigned: { size: number; docs: Doc[] };
}

export interface Fit {
  beta_hat: number;
  x_min: number;
  n_samples: number;
  std_error: number;
}

export interface StatsResponse {
  query: string | null;
  mode: string;
  xmin: number;
  nodes: number;
  edges: number;
  median: number | null;
  mean: number | null;
  histogram: [number, number][];
  fit: Fit | null;
  fit_error: string | null;
}

export interface SearchRequest {
  q: string;
  k: number;
  tcm: number;
  seed: number;
  limit?: number;
}

function apiBase(base: string): string {
  return base.replace(/\/+$/, '');
}

export function searchUrl(base: string, req: SearchRequest): string {
  const params = new URLSearchParams({
    q: req.q,
    k: String(req.k),
    tcm: String(req.tcm),
    seed: String(req.seed),
  });
  if (req.limit !== undefined) {
    params.set('limit', String(req.limit));
  }
  return `${apiBase(base)}/search?${params}`;
}

export function statsUrl(base: string, q?: string): string {
  if (!q) {
    return `${apiBase(base)}/stats`;
  }
  return `${apiBase(base)}/stats?${new URLSearchParams({ q })}`;
}

// Resolves to the parsed body, or throws with the server's error text so
// callers can put it in the banner as-is.
export async function getJson<T>(url: string, fetchFn: typeof fetch): Promise<T> {
  const resp = await fetchFn(url);
  const body = await resp.json();
  if (!resp.ok) {
    const message = typeof body?.error === 'string' ? body.error : `request failed (${resp.status})`;
    throw new Error(message);
  }
  return body as T;
}
