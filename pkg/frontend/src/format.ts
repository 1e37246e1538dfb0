/** Documented display rounding: money to 2 decimals, percent to 1.
 *
 * Every number shown in the UI is a service response field passed
 * through exactly one of these helpers, so "what the service said"
 * and "what the screen shows" differ only by this rounding.
 */

/** Prize money: 2 decimals. */
export function money(value: number): string {
  return value.toFixed(2);
}

/** A probability fraction (0..1) as a percentage with 1 decimal. */
export function percent(fraction: number): string {
  return `${(fraction * 100).toFixed(1)}%`;
}

/** A value already on the percent scale, 1 decimal. */
export function percentValue(points: number): string {
  return `${points.toFixed(1)}%`;
}

/** Signed percent badge text for a dcm-vs-icm difference. */
export function signedPercent(points: number): string {
  const text = points.toFixed(1);
  return text.startsWith("-") ? `${text}%` : `+${text}%`;
}

/** Percent difference of dcm relative to icm, or null when undefined. */
export function percentDiff(icm: number, dcm: number): number | null {
  if (icm === 0) return null;
  return ((dcm - icm) / icm) * 100;
}
