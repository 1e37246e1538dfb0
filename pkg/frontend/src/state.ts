/** Session state and edit plumbing.
 *
 * All state lives in the browser — the service is stateless. Stack and
 * prize edits are debounced 300 ms so typing stays fluid, and each panel
 * funnels its requests through a LatestRequest so a newer edit aborts
 * whatever was still in flight.
 */

export interface PlayerRow {
  name: string;
  stack: number;
}

export interface DecisionPanelState {
  prizes: number[];
  hero: number;
  foldStacks: number[];
  winStacks: number[];
  loseStacks: number[];
  /** Slider position, 0..1. */
  equity: number;
}

export interface TableSession {
  players: PlayerRow[];
  prizes: number[];
  decision: DecisionPanelState;
}

/** A fresh session pre-loaded with the reference worked examples. */
export function defaultSession(): TableSession {
  return {
    players: [
      { name: "Player 1", stack: 1000 },
      { name: "Player 2", stack: 500 },
      { name: "Player 3", stack: 100 },
    ],
    prizes: [100, 50, 0],
    decision: {
      prizes: [50, 30, 20],
      hero: 2,
      foldStacks: [1200, 800, 2000, 3000],
      winStacks: [0, 2000, 2000, 3000],
      loseStacks: [2000, 0, 2000, 3000],
      equity: 0.4,
    },
  };
}

export const EDIT_DEBOUNCE_MS = 300;

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
}

/** Trailing-edge debounce: only the last call within the window fires. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number = EDIT_DEBOUNCE_MS,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  const wrapped = (...args: A): void => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, ms);
  };
  wrapped.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
  };
  return wrapped;
}

/** Runs async tasks so that starting a new one aborts the previous.
 * A task superseded mid-flight resolves to undefined instead of
 * surfacing its abort as an error. */
export class LatestRequest {
  private controller: AbortController | null = null;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T | undefined> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    try {
      return await task(controller.signal);
    } catch (error) {
      if (controller.signal.aborted) return undefined;
      throw error;
    } finally {
      if (this.controller === controller) this.controller = null;
    }
  }
}
