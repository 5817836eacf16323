// Typed client for the thresholdlab JSON API. Every number the UI shows
// comes out of these documents; nothing is recomputed on the client.

export type Category = 'TN' | 'FP' | 'TP' | 'FN';
export type MetricName = 'recall' | 'precision' | 'fpr';

export interface Counts {
  tp: number;
  fp: number;
  tn: number;
  fn: number;
}

export interface Metrics {
  recall: number | null;
  precision: number | null;
  fpr: number | null;
}

// threshold is null for the flag-nothing point above every score
export interface PointDoc {
  threshold: number | null;
  counts: Counts;
  metrics: Metrics;
}

export interface QueryResultDoc extends PointDoc {
  objective_value: number | null;
}

export interface LegendEntry {
  color: 'blue' | 'red';
  shape: 'circle' | 'triangle';
  caption: string;
}

export interface PreviewDoc {
  n_icons: number;
  allocation: Record<Category, number>;
  fractions: Record<Category, number>;
  threshold: number;
  counts: Counts;
  legend: Record<Category, LegendEntry>;
}

export interface DatasetHandle {
  id: string;
  name: string;
  n_total: number;
  n_damaging: number;
  created_at: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(detail);
  }
}

async function asApiError(res: Response): Promise<ApiError> {
  try {
    const body = await res.json();
    return new ApiError(body.status ?? res.status, body.code ?? 'error', body.detail ?? res.statusText);
  } catch {
    return new ApiError(res.status, 'error', res.statusText);
  }
}

export class Api {
  constructor(private base = '') {}

  private async getJson<T>(path: string): Promise<T> {
    const res = await fetch(this.base + path);
    if (!res.ok) throw await asApiError(res);
    return res.json() as Promise<T>;
  }

  listDatasets(): Promise<{ datasets: DatasetHandle[] }> {
    return this.getJson('/api/datasets');
  }

  metrics(datasetId: string, threshold: number): Promise<PointDoc> {
    return this.getJson(`/api/datasets/${datasetId}/metrics?threshold=${threshold}`);
  }

  preview(datasetId: string, threshold: number, icons = 100): Promise<PreviewDoc> {
    return this.getJson(`/api/datasets/${datasetId}/preview?threshold=${threshold}&icons=${icons}`);
  }

  inverse(datasetId: string, metric: MetricName, target: number): Promise<QueryResultDoc> {
    return this.getJson(`/api/datasets/${datasetId}/inverse?metric=${metric}&target=${target}`);
  }

  optimize(datasetId: string, maximize: MetricName, constraints: string[]): Promise<QueryResultDoc> {
    const params = new URLSearchParams({ maximize });
    for (const c of constraints) params.append('constraint', c);
    return this.getJson(`/api/datasets/${datasetId}/optimize?${params}`);
  }

  async uploadDataset(name: string, body: string): Promise<DatasetHandle> {
    const res = await fetch(`${this.base}/api/datasets?name=${encodeURIComponent(name)}`, {
      method: 'POST',
      headers: { 'Content-Type': 'text/plain' },
      body,
    });
    if (!res.ok) throw await asApiError(res);
    return res.json() as Promise<DatasetHandle>;
  }
}
