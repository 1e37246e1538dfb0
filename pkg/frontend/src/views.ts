/** Pure view renderers: service responses in, HTML strings out.
 *
 * Keeping these as string builders (no DOM use) makes the display
 * contract directly testable: a test can assert that the markup shows
 * exactly the service's numbers after the documented rounding.
 */

import type {
  DecisionResponse,
  EquityResponse,
  PositionsResponse,
} from "./api.js";
import {
  money,
  percent,
  percentDiff,
  percentValue,
  signedPercent,
} from "./format.js";
import { type EvLine, evCallAt, verdictAt } from "./decision.js";
import type { PlayerRow } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Side-by-side money split with signed percent badges per player. */
export function renderComparison(
  players: PlayerRow[],
  icm: EquityResponse,
  dcm: EquityResponse,
): string {
  const rows = players
    .map((player, i) => {
      const icmEq = icm.equity[i] ?? 0;
      const dcmEq = dcm.equity[i] ?? 0;
      const diff = percentDiff(icmEq, dcmEq);
      const badgeText = diff === null ? "&mdash;" : signedPercent(diff);
      const badgeClass =
        diff === null ? "flat" : diff >= 0 ? "up" : "down";
      return `<tr>
  <td class="name">${escapeHtml(player.name)}</td>
  <td class="num">${player.stack}</td>
  <td class="num">${money(icmEq)}</td>
  <td class="num">${money(dcmEq)}</td>
  <td class="num"><span class="badge ${badgeClass}">${badgeText}</span></td>
</tr>`;
    })
    .join("\n");
  return `<table class="comparison">
<thead><tr><th>player</th><th>stack</th><th>icm</th><th>dcm</th><th>diff</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>
<p class="meta">dcm tree: ${dcm.nodes_visited} nodes, ${dcm.pruned_nodes} pruned, explored mass ${dcm.explored_mass.toFixed(6)}</p>`;
}

/** Finish-position heat table with row/column sum footers. */
export function renderPositions(matrix: PositionsResponse): string {
  const n = matrix.q.length;
  const header = Array.from(
    { length: n },
    (_, place) => `<th>place ${place + 1}</th>`,
  ).join("");
  const body = matrix.q
    .map((row, player) => {
      const cells = row
        .map((p) => `<td class="num" style="--heat:${p.toFixed(4)}">${percent(p)}</td>`)
        .join("");
      const sum = matrix.row_sums[player] ?? 0;
      return `<tr><th>player ${player + 1}</th>${cells}<td class="num sum">${percent(sum)}</td></tr>`;
    })
    .join("\n");
  const colFooter = matrix.col_sums
    .map((s) => `<td class="num sum">${percent(s)}</td>`)
    .join("");
  const offBy = [...matrix.row_sums, ...matrix.col_sums].some(
    (s) => Math.abs(s - 1.0) > 0.0001,
  );
  const warning = offBy
    ? `<div class="warn">matrix sums drift from 100% &mdash; results may be truncated</div>`
    : "";
  return `<table class="positions ${matrix.model}">
<thead><tr><th>${escapeHtml(matrix.model)}</th>${header}<th>&Sigma;</th></tr></thead>
<tbody>
${body}
<tr class="footer"><th>&Sigma;</th>${colFooter}<td></td></tr>
</tbody>
</table>
${warning}`;
}

/** Decision panel: verdicts and EVs at the current slider position,
 * threshold markers where each model flips. */
export function renderDecision(
  icm: EvLine,
  dcm: EvLine,
  equity: number,
): string {
  const row = (line: EvLine): string => {
    const verdict = verdictAt(line, equity);
    const marker =
      line.threshold === null ? "&mdash;" : percent(line.threshold);
    return `<tr>
  <td class="name">${escapeHtml(line.model)}</td>
  <td class="num">${money(evCallAt(line, equity))}</td>
  <td class="num">${money(line.evFold)}</td>
  <td class="verdict ${verdict}">${verdict}</td>
  <td class="num">${marker}</td>
</tr>`;
  };
  const markers = [icm, dcm]
    .filter((line) => line.threshold !== null)
    .map(
      (line) =>
        `<span class="marker ${escapeHtml(line.model)}" style="left:${(
          (line.threshold as number) * 100
        ).toFixed(2)}%" title="${escapeHtml(line.model)} threshold ${percent(
          line.threshold as number,
        )}"></span>`,
    )
    .join("");
  return `<table class="decision">
<thead><tr><th>model</th><th>ev call</th><th>ev fold</th><th>verdict</th><th>threshold</th></tr></thead>
<tbody>
${row(icm)}
${row(dcm)}
</tbody>
</table>
<div class="slider-track">${markers}</div>
<p class="meta">hand equity ${percentValue(equity * 100)}</p>`;
}

/** Inline error banner carrying the service error code. */
export function renderError(code: string, message: string): string {
  return `<div class="banner error" data-code="${escapeHtml(code)}">
<strong>${escapeHtml(code)}</strong> ${escapeHtml(message)}
</div>`;
}
