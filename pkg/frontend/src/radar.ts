// SVG radar chart of the three ratio metrics with draggable axis handles.
// Dragging a handle along its axis picks a target value; the inverse query
// fires once, on release.

import { MetricName, PointDoc } from './api.js';
import { formatMetric } from './format.js';

const SIZE = 340;
const CENTER = SIZE / 2;
const RADIUS = 120;
const RINGS = [0.25, 0.5, 0.75, 1.0];

interface Axis {
  metric: MetricName;
  label: string;
  angle: number; // degrees, -90 is straight up
}

export const AXES: Axis[] = [
  { metric: 'recall', label: 'recall', angle: -90 },
  { metric: 'precision', label: 'precision', angle: 30 },
  { metric: 'fpr', label: 'false-positive rate', angle: 150 },
];

export function axisPoint(angle: number, value: number): { x: number; y: number } {
  const rad = (angle * Math.PI) / 180;
  return {
    x: CENTER + RADIUS * value * Math.cos(rad),
    y: CENTER + RADIUS * value * Math.sin(rad),
  };
}

// Project a chart-local pointer position onto an axis, clamped to [0, 1].
export function projectOnAxis(angle: number, x: number, y: number): number {
  const rad = (angle * Math.PI) / 180;
  const along = (x - CENTER) * Math.cos(rad) + (y - CENTER) * Math.sin(rad);
  return Math.min(1, Math.max(0, along / RADIUS));
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS('http://www.w3.org/2000/svg', name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

export type DragHandler = (metric: MetricName, target: number) => void;

export class RadarChart {
  private svg: SVGSVGElement;
  private polygon: SVGPolygonElement;
  private handles = new Map<MetricName, SVGCircleElement>();
  private values = new Map<MetricName, SVGTextElement>();
  private dragging: Axis | null = null;
  private dragValue = 0;

  constructor(container: HTMLElement, private onDrag: DragHandler) {
    this.svg = svgEl('svg', {
      viewBox: `0 0 ${SIZE} ${SIZE}`,
      width: String(SIZE),
      height: String(SIZE),
      class: 'radar',
    });

    for (const ring of RINGS) {
      const pts = AXES.map(a => axisPoint(a.angle, ring)).map(p => `${p.x},${p.y}`);
      this.svg.appendChild(svgEl('polygon', { points: pts.join(' '), class: 'radar-ring' }));
    }
    for (const axis of AXES) {
      const end = axisPoint(axis.angle, 1);
      this.svg.appendChild(
        svgEl('line', {
          x1: String(CENTER), y1: String(CENTER),
          x2: String(end.x), y2: String(end.y),
          class: 'radar-axis',
        }),
      );
      const labelPos = axisPoint(axis.angle, 1.22);
      const label = svgEl('text', {
        x: String(labelPos.x), y: String(labelPos.y),
        'text-anchor': 'middle', class: 'radar-label',
      });
      label.textContent = axis.label;
      this.svg.appendChild(label);

      const value = svgEl('text', {
        x: String(labelPos.x), y: String(labelPos.y + 16),
        'text-anchor': 'middle',
        class: 'radar-value',
        'data-metric': axis.metric,
      });
      value.textContent = 'n/a';
      this.svg.appendChild(value);
      this.values.set(axis.metric, value);
    }

    this.polygon = svgEl('polygon', { class: 'radar-polygon', points: '' });
    this.svg.appendChild(this.polygon);

    for (const axis of AXES) {
      const handle = svgEl('circle', {
        r: '8',
        class: 'radar-handle',
        'data-metric': axis.metric,
      });
      handle.addEventListener('pointerdown', ev => this.startDrag(axis, ev as PointerEvent));
      this.svg.appendChild(handle);
      this.handles.set(axis.metric, handle);
    }

    this.svg.addEventListener('pointermove', ev => this.moveDrag(ev as PointerEvent));
    this.svg.addEventListener('pointerup', ev => this.endDrag(ev as PointerEvent));
    container.appendChild(this.svg);
  }

  render(point: PointDoc | null): void {
    const corners: string[] = [];
    for (const axis of AXES) {
      const value = point ? point.metrics[axis.metric] : null;
      const handle = this.handles.get(axis.metric)!;
      const text = this.values.get(axis.metric)!;
      text.textContent = formatMetric(value);
      // undefined metric: park the handle at the hub and disable dragging
      handle.classList.toggle('disabled', value === null);
      const pos = axisPoint(axis.angle, value ?? 0);
      corners.push(`${pos.x},${pos.y}`);
      handle.setAttribute('cx', String(pos.x));
      handle.setAttribute('cy', String(pos.y));
    }
    this.polygon.setAttribute('points', point ? corners.join(' ') : '');
  }

  private localPos(ev: PointerEvent): { x: number; y: number } {
    const rect = this.svg.getBoundingClientRect();
    const scale = rect.width > 0 ? SIZE / rect.width : 1;
    return { x: (ev.clientX - rect.left) * scale, y: (ev.clientY - rect.top) * scale };
  }

  private startDrag(axis: Axis, ev: PointerEvent): void {
    const handle = this.handles.get(axis.metric)!;
    if (handle.classList.contains('disabled')) return;
    ev.preventDefault();
    this.dragging = axis;
    this.moveDrag(ev);
  }

  private moveDrag(ev: PointerEvent): void {
    if (!this.dragging) return;
    const { x, y } = this.localPos(ev);
    this.dragValue = projectOnAxis(this.dragging.angle, x, y);
    const pos = axisPoint(this.dragging.angle, this.dragValue);
    const handle = this.handles.get(this.dragging.metric)!;
    handle.setAttribute('cx', String(pos.x));
    handle.setAttribute('cy', String(pos.y));
    this.values.get(this.dragging.metric)!.textContent = formatMetric(this.dragValue);
  }

  private endDrag(ev: PointerEvent): void {
    if (!this.dragging) return;
    this.moveDrag(ev);
    const { metric } = this.dragging;
    this.dragging = null;
    this.onDrag(metric, this.dragValue);
  }
}
