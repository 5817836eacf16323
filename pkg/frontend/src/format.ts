// Display formatting shared by the radar, slider, and pictogram.

export function formatMetric(value: number | null): string {
  return value === null ? 'n/a' : value.toFixed(3);
}

export function formatThreshold(threshold: number | null): string {
  if (threshold === null) return 'above max';
  // trim to at most 4 decimals without trailing zeros
  return String(Math.round(threshold * 10000) / 10000);
}

export function formatPercent(fraction: number): string {
  return `${Math.round(fraction * 100)}%`;
}
