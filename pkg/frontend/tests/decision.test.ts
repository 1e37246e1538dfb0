import { describe, expect, it } from "vitest";

import type { DecisionResponse } from "../src/api.js";
import {
  SLIDER_STEP,
  buildLine,
  evCallAt,
  flipPosition,
  sliderPositions,
  verdictAt,
} from "../src/decision.js";

/** Real service responses for the published call-or-fold scenario,
 * evaluated at hero_equity 0 and 1 (the two calls the panel makes). */
const ICM_AT_ZERO: DecisionResponse = {
  model: "icm",
  ev_call: 0.0,
  ev_fold: 15.231215970961888,
  recommendation: "fold",
  threshold: 0.47810991837100103,
};
const ICM_AT_ONE: DecisionResponse = {
  ...ICM_AT_ZERO,
  ev_call: 31.85714285714285,
  recommendation: "call",
};
const DCM_AT_ZERO: DecisionResponse = {
  model: "dcm",
  ev_call: 0.0,
  ev_fold: 9.571798544878746,
  recommendation: "fold",
  threshold: 0.3116399526239592,
};
const DCM_AT_ONE: DecisionResponse = {
  ...DCM_AT_ZERO,
  ev_call: 30.71428571428571,
  recommendation: "call",
};

const icmLine = buildLine(ICM_AT_ZERO, ICM_AT_ONE);
const dcmLine = buildLine(DCM_AT_ZERO, DCM_AT_ONE);

describe("EV line from two endpoint evaluations", () => {
  it("reproduces the published 40% verdicts without further requests", () => {
    expect(evCallAt(icmLine, 0.4)).toBeCloseTo(12.742857142857144, 9);
    expect(evCallAt(dcmLine, 0.4)).toBeCloseTo(12.285714285714285, 9);
    expect(verdictAt(icmLine, 0.4)).toBe("fold");
    expect(verdictAt(dcmLine, 0.4)).toBe("call");
  });

  it("both models call at 100% equity", () => {
    expect(verdictAt(icmLine, 1)).toBe("call");
    expect(verdictAt(dcmLine, 1)).toBe("call");
  });

  it("exact tie recommends fold", () => {
    const flat = buildLine(
      { model: "icm", ev_call: 5, ev_fold: 5, recommendation: "fold", threshold: null },
      { model: "icm", ev_call: 5, ev_fold: 5, recommendation: "fold", threshold: null },
    );
    expect(verdictAt(flat, 0.5)).toBe("fold");
  });

  it("rejects mixing models", () => {
    expect(() => buildLine(ICM_AT_ZERO, DCM_AT_ONE)).toThrow(/mismatched/);
  });
});

describe("slider", () => {
  it("steps by 0.5 percentage points across the full range", () => {
    const positions = sliderPositions();
    expect(positions).toHaveLength(201);
    expect(positions[0]).toBe(0);
    expect(positions[200]).toBeCloseTo(1, 12);
  });

  it("verdict flips within one step of each model's marker", () => {
    for (const line of [icmLine, dcmLine]) {
      const flip = flipPosition(line);
      expect(flip).not.toBeNull();
      expect(Math.abs((flip as number) - (line.threshold as number))).toBeLessThanOrEqual(
        SLIDER_STEP,
      );
    }
  });

  it("verdicts straddle each marker", () => {
    for (const line of [icmLine, dcmLine]) {
      const t = line.threshold as number;
      expect(verdictAt(line, t - SLIDER_STEP)).toBe("fold");
      expect(verdictAt(line, t + SLIDER_STEP)).toBe("call");
    }
  });

  it("the band where only the dynamic model calls is non-empty", () => {
    const midpoint =
      ((icmLine.threshold as number) + (dcmLine.threshold as number)) / 2;
    expect(verdictAt(dcmLine, midpoint)).toBe("call");
    expect(verdictAt(icmLine, midpoint)).toBe("fold");
  });

  it("never flips when the call line stays below ev_fold", () => {
    const hopeless = buildLine(
      { model: "dcm", ev_call: 0, ev_fold: 50, recommendation: "fold", threshold: null },
      { model: "dcm", ev_call: 10, ev_fold: 50, recommendation: "fold", threshold: null },
    );
    expect(flipPosition(hopeless)).toBeNull();
  });
});
