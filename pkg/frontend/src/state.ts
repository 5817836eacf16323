// Central UI state and the interaction handlers behind the three linked
// views. All metric math happens on the server; this module only moves
// documents around and enforces the staleness rule: a response is applied
// only if no newer interaction has started since its request was issued.

import { Api, ApiError, MetricName, PointDoc, PreviewDoc } from './api.js';

export interface UiState {
  datasetId: string | null;
  threshold: number;
  point: PointDoc | null;
  grid: PreviewDoc | null;
  pending: boolean;
  banner: string | null;
}

export type Listener = (state: UiState) => void;

export class Controller {
  readonly state: UiState = {
    datasetId: null,
    threshold: 0.5,
    point: null,
    grid: null,
    pending: false,
    banner: null,
  };

  private token = 0;
  private listeners: Listener[] = [];

  constructor(
    private api: Api,
    private icons = 100,
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private begin(): number {
    this.token += 1;
    this.state.pending = true;
    this.state.banner = null;
    this.emit();
    return this.token;
  }

  private settle(token: number, banner: string | null): boolean {
    if (token !== this.token) return false; // a newer interaction owns the state
    this.state.pending = false;
    this.state.banner = banner;
    return true;
  }

  async selectDataset(datasetId: string): Promise<void> {
    this.state.datasetId = datasetId;
    this.state.point = null;
    this.state.grid = null;
    await this.setThreshold(this.state.threshold);
  }

  // Slider moved: fetch the operating point and the icon grid for the new
  // threshold together, so the radar and the pictogram re-render in step.
  async setThreshold(threshold: number): Promise<void> {
    const id = this.state.datasetId;
    if (id === null) return;
    const token = this.begin();
    try {
      const [point, grid] = await Promise.all([
        this.api.metrics(id, threshold),
        this.api.preview(id, threshold, this.icons),
      ]);
      if (!this.settle(token, null)) return;
      this.state.threshold = threshold;
      this.state.point = point;
      this.state.grid = grid;
    } catch (err) {
      // keep the last consistent point/grid, just surface the failure
      if (!this.settle(token, describe(err))) return;
    }
    this.emit();
  }

  // Metric axis dragged to a target: one inverse query decides the
  // threshold, then the grid is refreshed at that same threshold.
  async dragMetric(metric: MetricName, target: number): Promise<void> {
    const id = this.state.datasetId;
    if (id === null) return;
    const token = this.begin();
    try {
      const point = await this.api.inverse(id, metric, target);
      await this.applyPoint(token, point);
    } catch (err) {
      if (!this.settle(token, describe(err))) return;
      this.emit();
    }
  }

  async runOptimize(maximize: MetricName, constraints: string[]): Promise<void> {
    const id = this.state.datasetId;
    if (id === null) return;
    const token = this.begin();
    try {
      const point = await this.api.optimize(id, maximize, constraints);
      await this.applyPoint(token, point);
    } catch (err) {
      if (!this.settle(token, describe(err))) return;
      this.emit();
    }
  }

  // A query result carries its own operating point, so only the grid needs
  // another request. A null threshold means nothing is flagged; the slider
  // sits at 1.0 for it (identical counts unless some score is exactly 1.0).
  private async applyPoint(token: number, point: PointDoc): Promise<void> {
    const id = this.state.datasetId as string;
    const threshold = point.threshold ?? 1.0;
    const grid = await this.api.preview(id, threshold, this.icons);
    if (!this.settle(token, null)) return;
    this.state.threshold = threshold;
    this.state.point = point;
    this.state.grid = grid;
    this.emit();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.detail;
  return err instanceof Error ? err.message : String(err);
}
