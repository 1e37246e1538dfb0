/** Typed client for the chipsplit HTTP service.
 *
 * The UI never computes equity itself: every number it shows comes from
 * one of these three endpoints. Errors arrive in a uniform envelope
 * `{"error": {"code", "message"}}` and surface as `ApiError` so views
 * can show the code (e.g. a "budget_exceeded" banner). Abort signals
 * pass straight through to `fetch` so superseded edits cancel cleanly.
 */

export interface TreeConfig {
  max_depth?: number;
  min_prob?: number;
  leaf_policy?: string;
  two_player_shortcut?: boolean;
}

export interface EquityResponse {
  model: string;
  equity: number[];
  win_prob: number[];
  explored_mass: number;
  nodes_visited: number;
  pruned_nodes: number;
}

export interface PositionsResponse {
  model: string;
  q: number[][];
  row_sums: number[];
  col_sums: number[];
}

export interface DecisionResponse {
  model: string;
  ev_call: number;
  ev_fold: number;
  recommendation: "call" | "fold";
  threshold: number | null;
}

export interface BothDecisionResponse {
  model: "both";
  icm: DecisionResponse;
  dcm: DecisionResponse;
}

export interface DecisionScenario {
  prizes: number[];
  hero: number;
  fold_stacks: number[];
  win_stacks: number[];
  lose_stacks: number[];
  hero_equity: number;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  equity(
    stacks: number[],
    prizes: number[],
    model: "icm" | "dcm",
    config?: TreeConfig,
    signal?: AbortSignal,
  ): Promise<EquityResponse> {
    const body: Record<string, unknown> = { stacks, prizes, model };
    if (config) body.config = config;
    return this.post("/api/v1/equity", body, signal);
  }

  positions(
    stacks: number[],
    model: "icm" | "dcm",
    config?: TreeConfig,
    signal?: AbortSignal,
  ): Promise<PositionsResponse> {
    const body: Record<string, unknown> = { stacks, model };
    if (config) body.config = config;
    return this.post("/api/v1/positions", body, signal);
  }

  /** Both models in one round trip (the service default). */
  decision(
    scenario: DecisionScenario,
    signal?: AbortSignal,
  ): Promise<BothDecisionResponse> {
    return this.post("/api/v1/decision", { ...scenario }, signal);
  }

  private async post<T>(
    path: string,
    body: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    if (!response.ok) {
      let code = `http_${response.status}`;
      let message = response.statusText || code;
      try {
        const payload = (await response.json()) as {
          error?: { code?: string; message?: string };
        };
        if (payload.error) {
          code = payload.error.code ?? code;
          message = payload.error.message ?? message;
        }
      } catch {
        // non-JSON error body: keep the HTTP fallback
      }
      throw new ApiError(code, response.status, message);
    }
    return (await response.json()) as T;
  }
}
