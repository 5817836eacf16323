// Outcome pictogram: the icon budget apportioned over the four confusion
// categories, drawn as blue/red circles and triangles with the same
// captions the CLI preview prints.

import { Category, PreviewDoc } from './api.js';
import { formatPercent } from './format.js';

const ORDER: Category[] = ['TN', 'FP', 'TP', 'FN'];
const COLORS = { blue: '#3567c4', red: '#c43d35' };
const CELL = 18;
const PER_ROW = 10;

function icon(shape: 'circle' | 'triangle', color: 'blue' | 'red', col: number, row: number): SVGElement {
  const ns = 'http://www.w3.org/2000/svg';
  const cx = col * CELL + CELL / 2;
  const cy = row * CELL + CELL / 2;
  let el: SVGElement;
  if (shape === 'circle') {
    el = document.createElementNS(ns, 'circle');
    el.setAttribute('cx', String(cx));
    el.setAttribute('cy', String(cy));
    el.setAttribute('r', '6');
  } else {
    el = document.createElementNS(ns, 'polygon');
    const points = `${cx},${cy - 7} ${cx - 6.5},${cy + 5.5} ${cx + 6.5},${cy + 5.5}`;
    el.setAttribute('points', points);
  }
  el.setAttribute('fill', COLORS[color]);
  el.setAttribute('class', `icon icon-${color} icon-${shape}`);
  return el;
}

export class Pictogram {
  private root: HTMLElement;

  constructor(container: HTMLElement) {
    this.root = document.createElement('div');
    this.root.className = 'pictogram';
    container.appendChild(this.root);
  }

  render(grid: PreviewDoc | null): void {
    this.root.textContent = '';
    if (!grid) return;
    for (const category of ORDER) {
      const count = grid.allocation[category];
      const legend = grid.legend[category];

      const group = document.createElement('div');
      group.className = 'preview-group';
      group.dataset.category = category;

      const rows = Math.max(1, Math.ceil(count / PER_ROW));
      const cols = Math.min(count, PER_ROW);
      const ns = 'http://www.w3.org/2000/svg';
      const svg = document.createElementNS(ns, 'svg');
      svg.setAttribute('width', String(Math.max(cols, 1) * CELL));
      svg.setAttribute('height', String(rows * CELL));
      for (let i = 0; i < count; i++) {
        svg.appendChild(icon(legend.shape, legend.color, i % PER_ROW, Math.floor(i / PER_ROW)));
      }
      group.appendChild(svg);

      const caption = document.createElement('div');
      caption.className = 'preview-caption';
      caption.textContent = `${legend.caption} ${formatPercent(grid.fractions[category])}`;
      group.appendChild(caption);

      this.root.appendChild(group);
    }
  }
}
