/** Display formatting: gauges show four decimals, matching the CLI's human output. */

export function formatGauge(value: number | null | undefined): string {
  if (value === null || value === undefined || Number.isNaN(value)) return '-';
  return value.toFixed(4);
}

export function formatSignedDelta(value: number): string {
  const text = value.toFixed(4);
  return value >= 0 ? `+${text}` : text;
}

export function formatCost(value: number): string {
  return Number.isInteger(value) ? String(value) : String(Math.round(value * 1e9) / 1e9);
}

export function timestampLabel(iso: string): string {
  return iso.replace('T', ' ').replace(/\.\d+Z$/, 'Z');
}
