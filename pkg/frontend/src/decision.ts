/** Slider math for the decision explorer.
 *
 * Call EV is linear in hero equity: ev_call(e) = e*E_win + (1-e)*E_lose.
 * Two service evaluations per model — one at e=0, one at e=1 — therefore
 * pin the whole EV line, and every slider move is evaluated against that
 * cached line with no further requests. The threshold marker comes from
 * the service response, never from local math.
 */

import type { DecisionResponse } from "./api.js";

/** One slider step: 0.5 percentage points of equity. */
export const SLIDER_STEP = 0.005;

export interface EvLine {
  model: string;
  evFold: number;
  /** ev_call at equity 0 (the losing branch's value). */
  evCallAtZero: number;
  /** ev_call at equity 1 (the winning branch's value). */
  evCallAtOne: number;
  /** Break-even equity reported by the service, if defined. */
  threshold: number | null;
}

/** Combine the two endpoint evaluations (e=0 and e=1) into a line. */
export function buildLine(
  atZero: DecisionResponse,
  atOne: DecisionResponse,
): EvLine {
  if (atZero.model !== atOne.model) {
    throw new Error(
      `mismatched models: ${atZero.model} vs ${atOne.model}`,
    );
  }
  return {
    model: atZero.model,
    evFold: atZero.ev_fold,
    evCallAtZero: atZero.ev_call,
    evCallAtOne: atOne.ev_call,
    threshold: atZero.threshold,
  };
}

export function evCallAt(line: EvLine, equity: number): number {
  return line.evCallAtZero + (line.evCallAtOne - line.evCallAtZero) * equity;
}

/** Verdict at a slider position; exact ties favor folding. */
export function verdictAt(line: EvLine, equity: number): "call" | "fold" {
  return evCallAt(line, equity) > line.evFold ? "call" : "fold";
}

/** All slider positions, 0 to 1 inclusive in SLIDER_STEP increments. */
export function sliderPositions(): number[] {
  const steps = Math.round(1 / SLIDER_STEP);
  const positions: number[] = [];
  for (let i = 0; i <= steps; i++) {
    positions.push(i * SLIDER_STEP);
  }
  return positions;
}

/** First slider position whose verdict differs from the position-0
 * verdict, or null when the verdict never flips across the range. */
export function flipPosition(line: EvLine): number | null {
  const positions = sliderPositions();
  const first = verdictAt(line, positions[0]!);
  for (const e of positions) {
    if (verdictAt(line, e) !== first) return e;
  }
  return null;
}
