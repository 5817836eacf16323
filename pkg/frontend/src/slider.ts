// Threshold slider with a red-to-blue gradient track: red at 0 where every
// edit is flagged as damaging, blue at 1 where almost none are.

import { formatThreshold } from './format.js';

export class ThresholdSlider {
  private input: HTMLInputElement;
  private readout: HTMLSpanElement;

  constructor(container: HTMLElement, onChange: (threshold: number) => void) {
    const row = document.createElement('div');
    row.className = 'slider-row';

    this.input = document.createElement('input');
    this.input.type = 'range';
    this.input.min = '0';
    this.input.max = '1';
    this.input.step = '0.01';
    this.input.value = '0.5';
    this.input.className = 'threshold-slider';
    this.input.style.background = 'linear-gradient(to right, #c43d35, #3567c4)';
    this.input.addEventListener('input', () => {
      const t = parseFloat(this.input.value);
      this.readout.textContent = formatThreshold(t);
      onChange(t);
    });

    const label = document.createElement('label');
    label.textContent = 'threshold';
    this.readout = document.createElement('span');
    this.readout.className = 'slider-readout';
    this.readout.textContent = formatThreshold(0.5);

    row.appendChild(label);
    row.appendChild(this.input);
    row.appendChild(this.readout);
    container.appendChild(row);
  }

  // Programmatic moves (inverse-query jumps) may land between the 0.01
  // steps; the input accepts exact values set through .value.
  set(threshold: number): void {
    this.input.value = String(threshold);
    this.readout.textContent = formatThreshold(threshold);
  }

  get value(): number {
    return parseFloat(this.input.value);
  }
}
