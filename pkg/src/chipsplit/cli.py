"""Command-line front end.

Commands mirror the library: icm, dcm, compare, positions, decide,
oracle, plus serve for the HTTP facade.  Output is either a plain table
(money to 2 decimals, percents to 1) or canonical json: 2-space indent,
sorted keys, trailing newline, so emitted documents are byte-stable under
parse-and-redump.

Exit codes: 0 success, 1 usage, 2 invalid input, 3 resource or internal
failure.
"""

from __future__ import annotations

import json
import os
import sys
import time
from typing import Sequence

import click

from . import __version__
from .analysis import compare_models, dcm_finish_distribution, decision_ev
from .dcm import dcm_equities
from .icm import icm_equities, icm_finish_distribution
from .model import (
    ChipsplitError,
    DcmConfig,
    DecisionReport,
    DecisionScenario,
    EquityReport,
    FinishMatrix,
    InternalError,
    LEAF_ANALYTIC_TWO_PLAYER,
    LEAF_FORCED_BANKRUPTCY,
    LEAF_ICM_TAIL,
    ResourceLimitError,
    ValidationError,
)
from .oracle import oracle_equities

_POLICY_BY_FLAG = {
    "forced": LEAF_FORCED_BANKRUPTCY,
    "icm": LEAF_ICM_TAIL,
    "analytic2": LEAF_ANALYTIC_TWO_PLAYER,
}


def render_json(payload) -> str:
    """Canonical json encoding; stable under loads + redump."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def equity_payload(model: str, report: EquityReport) -> dict:
    return {
        "model": model,
        "equity": list(report.equity),
        "win_prob": list(report.win_prob),
        "explored_mass": report.explored_mass,
        "nodes_visited": report.nodes_visited,
        "pruned_nodes": report.pruned_nodes,
    }


def positions_payload(matrix: FinishMatrix) -> dict:
    return {
        "model": matrix.model,
        "q": [list(row) for row in matrix.q],
        "row_sums": matrix.row_sums(),
        "col_sums": matrix.col_sums(),
    }


def decision_payload(report: DecisionReport) -> dict:
    return {
        "model": report.model,
        "ev_call": report.ev_call,
        "ev_fold": report.ev_fold,
        "recommendation": report.recommendation,
        "threshold": report.threshold,
    }


def _fail_usage(message: str) -> click.UsageError:
    return click.UsageError(message)


def _parse_stacks(ctx, param, value):
    if value is None:
        return None
    flag = f"--{param.name.replace('_', '-')}"
    parts = [p.strip() for p in str(value).split(",")]
    out = []
    for part in parts:
        if part == "":
            raise _fail_usage(f"{flag}: empty entry in {value!r}")
        try:
            out.append(int(part))
        except ValueError:
            raise _fail_usage(f"{flag}: {part!r} is not an integer chip count")
    return out


def _parse_prizes(ctx, param, value):
    if value is None:
        return None
    parts = [p.strip() for p in str(value).split(",")]
    out = []
    for part in parts:
        if part == "":
            raise _fail_usage(f"--prizes: empty entry in {value!r}")
        try:
            out.append(float(part))
        except ValueError:
            raise _fail_usage(f"--prizes: {part!r} is not a number")
    return out


def _config_options(f):
    f = click.option(
        "--two-player-shortcut",
        is_flag=True,
        help="Settle heads-up subtrees with the exact closed form.",
    )(f)
    f = click.option(
        "--leaf-policy",
        type=click.Choice(sorted(_POLICY_BY_FLAG)),
        default="forced",
        show_default=True,
        help="How truncated branches settle the remaining prizes.",
    )(f)
    f = click.option(
        "--min-prob",
        type=float,
        default=1e-15,
        show_default=True,
        help="Prune branches whose probability falls below this.",
    )(f)
    f = click.option(
        "--max-depth",
        type=int,
        default=50,
        show_default=True,
        help="Maximum number of hands to look ahead.",
    )(f)
    return f


def _build_config(max_depth, min_prob, leaf_policy, two_player_shortcut) -> DcmConfig:
    return DcmConfig(
        max_depth=max_depth,
        min_prob=min_prob,
        leaf_policy=_POLICY_BY_FLAG[leaf_policy],
        two_player_shortcut=two_player_shortcut,
    )


_FORMAT = click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json"]),
    default="table",
    show_default=True,
    help="Output rendering.",
)


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.rjust(widths[i]) for i, h in enumerate(headers))]
    for row in rows:
        lines.append("  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines) + "\n"


def _money(x: float) -> str:
    return f"{x:.2f}"


def _prob_pct(x: float) -> str:
    return f"{100.0 * x:.1f}%"


def _diagnostics(report: EquityReport, elapsed: float) -> str:
    return (
        f"explored_mass={report.explored_mass:.12g} nodes={report.nodes_visited} "
        f"pruned={report.pruned_nodes} elapsed={elapsed:.3f}s\n"
    )


def _equity_table(stacks: Sequence[int], report: EquityReport, elapsed: float) -> str:
    rows = [
        [str(i + 1), str(stacks[i]), _money(report.equity[i]), _prob_pct(report.win_prob[i])]
        for i in range(len(stacks))
    ]
    rows.append(
        ["total", str(sum(stacks)), _money(sum(report.equity)), _prob_pct(sum(report.win_prob))]
    )
    return _table(["player", "stack", "equity", "win"], rows) + _diagnostics(report, elapsed)


def _positions_table(matrix: FinishMatrix) -> str:
    n = len(matrix.q[0])
    headers = ["player"] + [f"pos {k + 1}" for k in range(n)] + ["row"]
    rows = []
    for i, row in enumerate(matrix.q):
        rows.append([str(i + 1)] + [_money(100.0 * v) for v in row] + [_money(100.0 * sum(row))])
    rows.append(["col"] + [_money(100.0 * s) for s in matrix.col_sums()] + [""])
    return _table(headers, rows)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="chipsplit")
def cli() -> None:
    """Tournament prize equities: chip-proportional and game-tree models."""


@cli.command("icm")
@click.option("--stacks", required=True, callback=_parse_stacks,
              help="Comma-separated chip counts, one per player.")
@click.option("--prizes", required=True, callback=_parse_prizes,
              help="Comma-separated prize money, best first.")
@_FORMAT
def icm_command(stacks, prizes, fmt) -> None:
    """Expected prizes under the chip-proportional model."""
    started = time.perf_counter()
    report = icm_equities(stacks, prizes)
    elapsed = time.perf_counter() - started
    if fmt == "json":
        payload = equity_payload("icm", report)
        payload["elapsed_seconds"] = elapsed
        click.echo(render_json(payload), nl=False)
    else:
        click.echo(_equity_table(stacks, report, elapsed), nl=False)


@cli.command("dcm")
@click.option("--stacks", required=True, callback=_parse_stacks,
              help="Comma-separated chip counts, one per player.")
@click.option("--prizes", required=True, callback=_parse_prizes,
              help="Comma-separated prize money, best first.")
@_config_options
@_FORMAT
def dcm_command(stacks, prizes, max_depth, min_prob, leaf_policy, two_player_shortcut, fmt) -> None:
    """Expected prizes under the all-in game-tree model."""
    config = _build_config(max_depth, min_prob, leaf_policy, two_player_shortcut)
    started = time.perf_counter()
    report = dcm_equities(stacks, prizes, config)
    elapsed = time.perf_counter() - started
    if fmt == "json":
        payload = equity_payload("dcm", report)
        payload["elapsed_seconds"] = elapsed
        click.echo(render_json(payload), nl=False)
    else:
        click.echo(_equity_table(stacks, report, elapsed), nl=False)


@cli.command("compare")
@click.option("--stacks", required=True, callback=_parse_stacks,
              help="Comma-separated chip counts, one per player.")
@click.option("--prizes", required=True, callback=_parse_prizes,
              help="Comma-separated prize money, best first.")
@_config_options
@_FORMAT
def compare_command(stacks, prizes, max_depth, min_prob, leaf_policy, two_player_shortcut, fmt) -> None:
    """Both models side by side with percent differences."""
    config = _build_config(max_depth, min_prob, leaf_policy, two_player_shortcut)
    started = time.perf_counter()
    report = compare_models(stacks, prizes, config)
    elapsed = time.perf_counter() - started
    if fmt == "json":
        payload = {
            "model": "compare",
            "players": [
                {
                    "player": row.player,
                    "stack": row.stack,
                    "icm": row.icm,
                    "dcm": row.dcm,
                    "pct_diff": row.pct_diff,
                }
                for row in report.rows
            ],
            "icm": equity_payload("icm", report.icm_report),
            "dcm": equity_payload("dcm", report.dcm_report),
            "elapsed_seconds": elapsed,
        }
        click.echo(render_json(payload), nl=False)
        return
    rows = [
        [
            str(row.player),
            str(row.stack),
            _money(row.icm),
            _money(row.dcm),
            "n/a" if row.pct_diff is None else f"{row.pct_diff:+.1f}",
        ]
        for row in report.rows
    ]
    rows.append(
        ["total", str(sum(stacks)),
         _money(sum(r.icm for r in report.rows)), _money(sum(r.dcm for r in report.rows)), ""]
    )
    out = _table(["player", "stack", "icm", "dcm", "diff%"], rows)
    out += _diagnostics(report.dcm_report, elapsed)
    click.echo(out, nl=False)


@cli.command("positions")
@click.option("--stacks", required=True, callback=_parse_stacks,
              help="Comma-separated chip counts, one per player.")
@_config_options
@_FORMAT
def positions_command(stacks, max_depth, min_prob, leaf_policy, two_player_shortcut, fmt) -> None:
    """Finish-position probability matrices for both models."""
    config = _build_config(max_depth, min_prob, leaf_policy, two_player_shortcut)
    started = time.perf_counter()
    icm_matrix = icm_finish_distribution(stacks)
    dcm_matrix = dcm_finish_distribution(stacks, config)
    elapsed = time.perf_counter() - started
    if fmt == "json":
        payload = {
            "icm": positions_payload(icm_matrix),
            "dcm": positions_payload(dcm_matrix),
            "elapsed_seconds": elapsed,
        }
        click.echo(render_json(payload), nl=False)
        return
    out = "icm finish probabilities (%)\n" + _positions_table(icm_matrix)
    out += "dcm finish probabilities (%)\n" + _positions_table(dcm_matrix)
    click.echo(out, nl=False)


@cli.command("decide")
@click.option("--prizes", required=True, callback=_parse_prizes,
              help="Comma-separated prize money, best first.")
@click.option("--hero", required=True, type=int, help="Seat number of the deciding player.")
@click.option("--fold-stacks", required=True, callback=_parse_stacks,
              help="Stacks after the hero folds.")
@click.option("--win-stacks", required=True, callback=_parse_stacks,
              help="Stacks after the hero calls and wins.")
@click.option("--lose-stacks", required=True, callback=_parse_stacks,
              help="Stacks after the hero calls and loses (0 = busted).")
@click.option("--equity", required=True, type=float,
              help="Hero's probability of winning the confrontation.")
@_config_options
@_FORMAT
def decide_command(prizes, hero, fold_stacks, win_stacks, lose_stacks, equity,
                   max_depth, min_prob, leaf_policy, two_player_shortcut, fmt) -> None:
    """Call-or-fold expectations under both models."""
    config = _build_config(max_depth, min_prob, leaf_policy, two_player_shortcut)
    scenario = DecisionScenario.of(prizes, hero, fold_stacks, win_stacks, lose_stacks, equity)
    started = time.perf_counter()
    icm_report = decision_ev(scenario, "icm", config)
    dcm_report = decision_ev(scenario, "dcm", config)
    elapsed = time.perf_counter() - started
    if fmt == "json":
        payload = {
            "icm": decision_payload(icm_report),
            "dcm": decision_payload(dcm_report),
            "elapsed_seconds": elapsed,
        }
        click.echo(render_json(payload), nl=False)
        return
    rows = [
        [
            report.model,
            _money(report.ev_call),
            _money(report.ev_fold),
            report.recommendation,
            "n/a" if report.threshold is None else _prob_pct(report.threshold),
        ]
        for report in (icm_report, dcm_report)
    ]
    click.echo(_table(["model", "ev_call", "ev_fold", "verdict", "threshold"], rows), nl=False)


@cli.command("oracle")
@click.option("--stacks", required=True, callback=_parse_stacks,
              help="Comma-separated chip counts, one per player.")
@click.option("--prizes", required=True, callback=_parse_prizes,
              help="Comma-separated prize money, best first.")
@click.option("--exact-oracle", is_flag=True,
              help="Force exact rational arithmetic regardless of state count.")
@_FORMAT
def oracle_command(stacks, prizes, exact_oracle, fmt) -> None:
    """Brute-force Markov-chain verification (small tables only)."""
    started = time.perf_counter()
    report = oracle_equities(stacks, prizes, exact=True if exact_oracle else None)
    elapsed = time.perf_counter() - started
    if fmt == "json":
        payload = equity_payload("oracle", report)
        payload["elapsed_seconds"] = elapsed
        click.echo(render_json(payload), nl=False)
    else:
        click.echo(_equity_table(stacks, report, elapsed), nl=False)


@cli.command("serve")
@click.option("--port", type=int, default=8000, show_default=True,
              help="Listen port; the CHIPSPLIT_PORT environment variable wins over this.")
@click.option("--host", type=str, default="127.0.0.1", show_default=True,
              help="Bind address.")
def serve_command(port, host) -> None:
    """Run the HTTP API."""
    env_port = os.environ.get("CHIPSPLIT_PORT")
    if env_port is not None:
        try:
            port = int(env_port)
        except ValueError:
            raise _fail_usage(f"CHIPSPLIT_PORT must be an integer (got {env_port!r})")
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Dispatch one invocation and map failures to exit codes."""
    try:
        cli.main(args=argv, prog_name="chipsplit", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.Abort:
        return 1
    except click.UsageError as exc:
        message = exc.format_message()
        click.echo(f"error: {message}", err=True)
        return 1
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except (ResourceLimitError, InternalError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except ChipsplitError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
