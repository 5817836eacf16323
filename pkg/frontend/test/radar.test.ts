import { beforeEach, describe, expect, it, vi } from 'vitest';

import { axisPoint, projectOnAxis, RadarChart } from '../src/radar.js';
import type { PointDoc } from '../src/api.js';
import { METRICS_04 } from './f1docs.js';

const ABOVE_MAX_POINT: PointDoc = {
  threshold: null,
  counts: { tp: 0, fp: 0, tn: 970, fn: 30 },
  metrics: { recall: 0, precision: null, fpr: 0 },
};

function valueText(root: HTMLElement, metric: string): string {
  return root.querySelector(`.radar-value[data-metric="${metric}"]`)!.textContent ?? '';
}

function handle(root: HTMLElement, metric: string): SVGCircleElement {
  return root.querySelector(`.radar-handle[data-metric="${metric}"]`) as SVGCircleElement;
}

function pointerEvent(type: string, x: number, y: number): MouseEvent {
  return new MouseEvent(type, { clientX: x, clientY: y, bubbles: true });
}

let root: HTMLElement;

beforeEach(() => {
  root = document.createElement('div');
  document.body.appendChild(root);
});

describe('geometry helpers', () => {
  it('puts value 0 at the hub and value 1 at the rim', () => {
    const hub = axisPoint(-90, 0);
    const rim = axisPoint(-90, 1);
    expect(hub).toEqual({ x: 170, y: 170 });
    expect(rim.x).toBeCloseTo(170);
    expect(rim.y).toBeCloseTo(50);
  });

  it('projection inverts axisPoint along the axis', () => {
    for (const angle of [-90, 30, 150]) {
      for (const value of [0, 0.25, 0.6666666, 1]) {
        const pos = axisPoint(angle, value);
        expect(projectOnAxis(angle, pos.x, pos.y)).toBeCloseTo(value, 10);
      }
    }
  });

  it('clamps projections to the unit interval', () => {
    const beyond = axisPoint(-90, 1.8);
    expect(projectOnAxis(-90, beyond.x, beyond.y)).toBe(1);
    const behind = axisPoint(-90, -0.5);
    expect(projectOnAxis(-90, behind.x, behind.y)).toBe(0);
  });
});

describe('rendering', () => {
  it('labels the three axes', () => {
    new RadarChart(root, () => undefined);
    const labels = Array.from(root.querySelectorAll('.radar-label')).map(el => el.textContent);
    expect(labels).toEqual(['recall', 'precision', 'false-positive rate']);
  });

  it('shows metric values to three decimals', () => {
    const chart = new RadarChart(root, () => undefined);
    chart.render(METRICS_04);
    expect(valueText(root, 'recall')).toBe('0.667');
    expect(valueText(root, 'precision')).toBe('0.250');
    expect(valueText(root, 'fpr')).toBe('0.062');
  });

  it('moves handles to the metric positions', () => {
    const chart = new RadarChart(root, () => undefined);
    chart.render(METRICS_04);
    const recall = handle(root, 'recall');
    const expected = axisPoint(-90, METRICS_04.metrics.recall!);
    expect(Number(recall.getAttribute('cx'))).toBeCloseTo(expected.x);
    expect(Number(recall.getAttribute('cy'))).toBeCloseTo(expected.y);
  });

  it('renders an undefined metric as n/a with a disabled handle', () => {
    const chart = new RadarChart(root, () => undefined);
    chart.render(ABOVE_MAX_POINT);
    expect(valueText(root, 'precision')).toBe('n/a');
    expect(handle(root, 'precision').classList.contains('disabled')).toBe(true);
    expect(handle(root, 'recall').classList.contains('disabled')).toBe(false);
  });
});

describe('dragging', () => {
  it('fires the drag callback once, on release, with the projected target', () => {
    const onDrag = vi.fn();
    const chart = new RadarChart(root, onDrag);
    chart.render(METRICS_04);

    const recall = handle(root, 'recall');
    const grab = axisPoint(-90, METRICS_04.metrics.recall!);
    const drop = axisPoint(-90, 0.75);
    recall.dispatchEvent(pointerEvent('pointerdown', grab.x, grab.y));
    recall.dispatchEvent(pointerEvent('pointermove', drop.x, drop.y));
    recall.dispatchEvent(pointerEvent('pointerup', drop.x, drop.y));

    expect(onDrag).toHaveBeenCalledTimes(1);
    expect(onDrag).toHaveBeenCalledWith('recall', expect.closeTo(0.75, 6));
  });

  it('shows the live target value while dragging', () => {
    const chart = new RadarChart(root, () => undefined);
    chart.render(METRICS_04);

    const recall = handle(root, 'recall');
    const grab = axisPoint(-90, METRICS_04.metrics.recall!);
    const mid = axisPoint(-90, 0.9);
    recall.dispatchEvent(pointerEvent('pointerdown', grab.x, grab.y));
    recall.dispatchEvent(pointerEvent('pointermove', mid.x, mid.y));
    expect(valueText(root, 'recall')).toBe('0.900');
  });

  it('clamps drags past the rim to 1', () => {
    const onDrag = vi.fn();
    const chart = new RadarChart(root, onDrag);
    chart.render(METRICS_04);

    const recall = handle(root, 'recall');
    recall.dispatchEvent(pointerEvent('pointerdown', 170, 170));
    recall.dispatchEvent(pointerEvent('pointerup', 170, -400));
    expect(onDrag).toHaveBeenCalledWith('recall', 1);
  });

  it('ignores drags on a disabled handle', () => {
    const onDrag = vi.fn();
    const chart = new RadarChart(root, onDrag);
    chart.render(ABOVE_MAX_POINT);

    const precision = handle(root, 'precision');
    precision.dispatchEvent(pointerEvent('pointerdown', 170, 170));
    precision.dispatchEvent(pointerEvent('pointerup', 200, 150));
    expect(onDrag).not.toHaveBeenCalled();
  });

  it('does nothing on a stray pointerup without a drag', () => {
    const onDrag = vi.fn();
    const chart = new RadarChart(root, onDrag);
    chart.render(METRICS_04);
    root.querySelector('svg')!.dispatchEvent(pointerEvent('pointerup', 100, 100));
    expect(onDrag).not.toHaveBeenCalled();
  });
});
