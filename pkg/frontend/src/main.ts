// Page wiring: one controller, three linked views, no client-side routing.

import { Api, MetricName } from './api.js';
import { Controller } from './state.js';
import { RadarChart } from './radar.js';
import { ThresholdSlider } from './slider.js';
import { Pictogram } from './pictogram.js';
import { formatThreshold } from './format.js';

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

async function boot(): Promise<void> {
  const api = new Api();
  const controller = new Controller(api);

  const banner = byId('banner');
  const status = byId('status');
  const counts = byId('counts');

  const slider = new ThresholdSlider(byId('slider'), t => {
    status.textContent = '';
    void controller.setThreshold(t);
  });

  const radar = new RadarChart(byId('radar'), (metric: MetricName, target: number) => {
    // precision is not monotone in the threshold, so a precision drag is an
    // optimizer jump; say so instead of pretending it is a plain lookup
    status.textContent =
      metric === 'precision' ? `best recall at precision ≥ ${target.toFixed(3)}` : '';
    void controller.dragMetric(metric, target);
  });

  const pictogram = new Pictogram(byId('pictogram'));

  const maximizeSel = byId('optimize-maximize') as HTMLSelectElement;
  const constraintInput = byId('optimize-constraints') as HTMLInputElement;
  byId('optimize-run').addEventListener('click', () => {
    const constraints = constraintInput.value
      .split(',')
      .map(s => s.trim())
      .filter(s => s.length > 0);
    status.textContent = '';
    void controller.runOptimize(maximizeSel.value as MetricName, constraints);
  });

  controller.subscribe(state => {
    document.body.classList.toggle('pending', state.pending);
    banner.textContent = state.banner ?? '';
    banner.hidden = state.banner === null;
    slider.set(state.threshold);
    radar.render(state.point);
    pictogram.render(state.grid);
    if (state.point) {
      const c = state.point.counts;
      counts.textContent =
        `threshold ${formatThreshold(state.point.threshold)}: ` +
        `tp=${c.tp} fp=${c.fp} tn=${c.tn} fn=${c.fn}`;
    } else {
      counts.textContent = '';
    }
  });

  const picker = byId('dataset-picker') as HTMLSelectElement;
  const { datasets } = await api.listDatasets();
  for (const handle of datasets) {
    const opt = document.createElement('option');
    opt.value = handle.id;
    opt.textContent = `${handle.name} (${handle.n_total} edits, ${handle.n_damaging} damaging)`;
    picker.appendChild(opt);
  }
  picker.addEventListener('change', () => void controller.selectDataset(picker.value));

  if (datasets.length > 0) {
    picker.value = datasets[0].id;
    await controller.selectDataset(datasets[0].id);
  } else {
    banner.textContent = 'no datasets on the server; upload one with the CLI or --fixtures-dir';
    banner.hidden = false;
  }
}

void boot();
