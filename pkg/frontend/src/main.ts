/** DOM wiring: connects the editors to the service client and swaps the
 * rendered views in place. Everything stateful lives in one TableSession;
 * every repaint is driven by a fresh service response.
 */

import { ApiError, Client } from "./api.js";
import { SLIDER_STEP, buildLine, type EvLine } from "./decision.js";
import {
  EDIT_DEBOUNCE_MS,
  LatestRequest,
  debounce,
  defaultSession,
  type TableSession,
} from "./state.js";
import {
  renderComparison,
  renderDecision,
  renderError,
  renderPositions,
} from "./views.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? "";
}

function parseNumberList(text: string): number[] | null {
  const parts = text.split(",").map((part) => part.trim());
  if (parts.some((part) => part === "")) return null;
  const values = parts.map(Number);
  return values.some((v) => !Number.isFinite(v)) ? null : values;
}

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(target: HTMLElement, error: unknown): void {
  if (error instanceof ApiError) {
    target.innerHTML = renderError(error.code, error.message);
  } else {
    target.innerHTML = renderError("network_error", String(error));
  }
}

function main(): void {
  const client = new Client(apiBase());
  const session: TableSession = defaultSession();

  const comparisonOut = el("comparison-out");
  const positionsOut = el("positions-out");
  const decisionOut = el("decision-out");
  const stacksInput = el("stacks-input") as HTMLInputElement;
  const prizesInput = el("prizes-input") as HTMLInputElement;
  const slider = el("equity-slider") as HTMLInputElement;
  const decisionInputs: Array<[HTMLInputElement, (values: number[]) => void]> = [
    [el("d-prizes") as HTMLInputElement, (v) => (session.decision.prizes = v)],
    [el("d-fold") as HTMLInputElement, (v) => (session.decision.foldStacks = v)],
    [el("d-win") as HTMLInputElement, (v) => (session.decision.winStacks = v)],
    [el("d-lose") as HTMLInputElement, (v) => (session.decision.loseStacks = v)],
  ];
  const heroInput = el("d-hero") as HTMLInputElement;

  stacksInput.value = session.players.map((p) => p.stack).join(",");
  prizesInput.value = session.prizes.join(",");
  decisionInputs[0]![0].value = session.decision.prizes.join(",");
  decisionInputs[1]![0].value = session.decision.foldStacks.join(",");
  decisionInputs[2]![0].value = session.decision.winStacks.join(",");
  decisionInputs[3]![0].value = session.decision.loseStacks.join(",");
  heroInput.value = String(session.decision.hero);
  slider.min = "0";
  slider.max = "100";
  slider.step = String(SLIDER_STEP * 100);
  slider.value = String(session.decision.equity * 100);

  const tableRequest = new LatestRequest();
  const decisionRequest = new LatestRequest();
  let lines: { icm: EvLine; dcm: EvLine } | null = null;

  async function refreshTable(): Promise<void> {
    const stacks = session.players.map((p) => p.stack);
    const prizes = session.prizes;
    try {
      const result = await tableRequest.run(async (signal) => {
        const [icmEq, dcmEq, icmPos, dcmPos] = await Promise.all([
          client.equity(stacks, prizes, "icm", undefined, signal),
          client.equity(stacks, prizes, "dcm", undefined, signal),
          client.positions(stacks, "icm", undefined, signal),
          client.positions(stacks, "dcm", undefined, signal),
        ]);
        return { icmEq, dcmEq, icmPos, dcmPos };
      });
      if (!result) return; // superseded by a newer edit
      comparisonOut.innerHTML = renderComparison(
        session.players,
        result.icmEq,
        result.dcmEq,
      );
      positionsOut.innerHTML =
        renderPositions(result.icmPos) + renderPositions(result.dcmPos);
    } catch (error) {
      showError(comparisonOut, error);
    }
  }

  function paintDecision(): void {
    if (!lines) return;
    decisionOut.innerHTML = renderDecision(
      lines.icm,
      lines.dcm,
      session.decision.equity,
    );
  }

  async function refreshDecision(): Promise<void> {
    const d = session.decision;
    const scenario = {
      prizes: d.prizes,
      hero: d.hero,
      fold_stacks: d.foldStacks,
      win_stacks: d.winStacks,
      lose_stacks: d.loseStacks,
    };
    try {
      // EV is linear in equity: two evaluations pin each model's line,
      // after which slider moves repaint with no further requests.
      const result = await decisionRequest.run(async (signal) => {
        const [atZero, atOne] = await Promise.all([
          client.decision({ ...scenario, hero_equity: 0 }, signal),
          client.decision({ ...scenario, hero_equity: 1 }, signal),
        ]);
        return { atZero, atOne };
      });
      if (!result) return;
      lines = {
        icm: buildLine(result.atZero.icm, result.atOne.icm),
        dcm: buildLine(result.atZero.dcm, result.atOne.dcm),
      };
      paintDecision();
    } catch (error) {
      showError(decisionOut, error);
    }
  }

  const debouncedTable = debounce(() => void refreshTable(), EDIT_DEBOUNCE_MS);
  const debouncedDecision = debounce(
    () => void refreshDecision(),
    EDIT_DEBOUNCE_MS,
  );

  stacksInput.addEventListener("input", () => {
    const values = parseNumberList(stacksInput.value);
    if (!values) return;
    session.players = values.map((stack, i) => ({
      name: session.players[i]?.name ?? `Player ${i + 1}`,
      stack,
    }));
    debouncedTable();
  });
  prizesInput.addEventListener("input", () => {
    const values = parseNumberList(prizesInput.value);
    if (!values) return;
    session.prizes = values;
    debouncedTable();
  });
  for (const [input, assign] of decisionInputs) {
    input.addEventListener("input", () => {
      const values = parseNumberList(input.value);
      if (!values) return;
      assign(values);
      debouncedDecision();
    });
  }
  heroInput.addEventListener("input", () => {
    const hero = Number(heroInput.value);
    if (!Number.isInteger(hero) || hero < 1) return;
    session.decision.hero = hero;
    debouncedDecision();
  });
  slider.addEventListener("input", () => {
    session.decision.equity = Number(slider.value) / 100;
    paintDecision(); // cached line: no request
  });

  void refreshTable();
  void refreshDecision();
}

main();
