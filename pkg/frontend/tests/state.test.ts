import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import {
  EDIT_DEBOUNCE_MS,
  LatestRequest,
  debounce,
  defaultSession,
} from "../src/state.js";

describe("default session", () => {
  it("pre-loads the reference worked examples", () => {
    const session = defaultSession();
    expect(session.players.map((p) => p.stack)).toEqual([1000, 500, 100]);
    expect(session.prizes).toEqual([100, 50, 0]);
    expect(session.decision.hero).toBe(2);
    expect(session.decision.equity).toBeCloseTo(0.4, 12);
    expect(session.decision.foldStacks).toEqual([1200, 800, 2000, 3000]);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once with the last arguments after the window", () => {
    const calls: number[] = [];
    const burst = debounce((n: number) => calls.push(n));
    burst(1);
    burst(2);
    burst(3);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(EDIT_DEBOUNCE_MS - 1);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([3]);
  });

  it("each new call restarts the window", () => {
    const calls: number[] = [];
    const burst = debounce((n: number) => calls.push(n), 100);
    burst(1);
    vi.advanceTimersByTime(90);
    burst(2);
    vi.advanceTimersByTime(90);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(10);
    expect(calls).toEqual([2]);
  });

  it("cancel drops the pending call", () => {
    const calls: number[] = [];
    const burst = debounce((n: number) => calls.push(n), 50);
    burst(1);
    burst.cancel();
    vi.advanceTimersByTime(200);
    expect(calls).toEqual([]);
  });
});

describe("LatestRequest", () => {
  it("aborts the in-flight task when a newer one starts", async () => {
    const latest = new LatestRequest();
    let firstAborted = false;
    const first = latest.run(
      (signal) =>
        new Promise<string>((_, reject) => {
          signal.addEventListener("abort", () => {
            firstAborted = true;
            reject(new DOMException("aborted", "AbortError"));
          });
        }),
    );
    const second = latest.run(async () => "second");
    await expect(second).resolves.toBe("second");
    await expect(first).resolves.toBeUndefined();
    expect(firstAborted).toBe(true);
  });

  it("propagates real failures from the current task", async () => {
    const latest = new LatestRequest();
    await expect(
      latest.run(async () => {
        throw new Error("boom");
      }),
    ).rejects.toThrow("boom");
  });

  it("returns the value when nothing supersedes the task", async () => {
    const latest = new LatestRequest();
    await expect(latest.run(async () => 42)).resolves.toBe(42);
  });
});
