"""Analyses layered on the core models.

Finish-position matrices, the prize-decomposition identity, side-by-side
model comparisons, and three-branch call/fold decision values.  Nothing
here touches the tree search internals beyond the position-tracking hook.
"""

from __future__ import annotations

from typing import Sequence

from .dcm import _dcm_canonical, dcm_equities
from .hands import canonicalize
from .icm import icm_equities
from .model import (
    ComparisonReport,
    ComparisonRow,
    Budget,
    DcmConfig,
    DecisionReport,
    DecisionScenario,
    FinishMatrix,
    PrizeSchedule,
    StackVector,
    ValidationError,
    as_prize_schedule,
    as_stack_vector,
)

MODELS = ("icm", "dcm")


def dcm_finish_distribution(
    stacks: StackVector | Sequence[int],
    config: DcmConfig | None = None,
    *,
    budget: Budget | None = None,
) -> FinishMatrix:
    """Finish-position probabilities under the game-tree model.

    One tree pass accumulates position mass instead of money: busts claim
    the worst open positions (ties split evenly across the covered ones),
    the last player standing takes position 1, and truncated leaves are
    settled by the configured leaf policy.  The tree does not depend on
    prize amounts, so none are taken here.
    """
    vector = as_stack_vector(stacks)
    n = len(vector)
    if config is None:
        config = DcmConfig()
    ordered, perm = canonicalize(vector)
    zero_prizes = (0.0,) * n
    _, _, pos, _, _ = _dcm_canonical(ordered, zero_prizes, config, True, budget, None)
    by_seat = [[0.0] * n for _ in range(n)]
    for position, seat in enumerate(perm):
        by_seat[seat] = pos[position]
    return FinishMatrix(q=by_seat, model="dcm")


def reconstruct_equity(
    q: FinishMatrix | Sequence[Sequence[float]],
    prizes: PrizeSchedule | Sequence[float],
) -> list[float]:
    """Fold a finish matrix back into money: equity[i] = sum_k q[i][k] * prize_k."""
    rows = q.q if isinstance(q, FinishMatrix) else q
    if not rows:
        raise ValidationError("finish matrix has no rows")
    columns = len(rows[0])
    if any(len(row) != columns for row in rows):
        raise ValidationError("finish matrix rows have unequal lengths")
    prize_list = prizes.prizes if isinstance(prizes, PrizeSchedule) else tuple(prizes)
    if len(prize_list) > columns:
        raise ValidationError(
            f"more prizes ({len(prize_list)}) than podium positions ({columns})"
        )
    padded = tuple(prize_list) + (0.0,) * (columns - len(prize_list))
    return [sum(row[k] * padded[k] for k in range(columns)) for row in rows]


def compare_models(
    stacks: StackVector | Sequence[int],
    prizes: PrizeSchedule | Sequence[float],
    config: DcmConfig | None = None,
    *,
    budget: Budget | None = None,
) -> ComparisonReport:
    """Both models side by side, with percent difference relative to the static one."""
    vector = as_stack_vector(stacks)
    schedule = as_prize_schedule(prizes, len(vector))
    icm_report = icm_equities(vector, schedule)
    dcm_report = dcm_equities(vector, schedule, config, budget=budget)
    rows = []
    for i in range(len(vector)):
        icm_value = icm_report.equity[i]
        dcm_value = dcm_report.equity[i]
        if icm_value == 0:
            pct = None
        else:
            pct = 100.0 * (dcm_value - icm_value) / icm_value
        rows.append(
            ComparisonRow(
                player=vector.identities[i],
                stack=vector.stacks[i],
                icm=icm_value,
                dcm=dcm_value,
                pct_diff=pct,
            )
        )
    return ComparisonReport(rows=rows, icm_report=icm_report, dcm_report=dcm_report)


def _check_model(model: str) -> str:
    if model not in MODELS:
        raise ValidationError(f"model must be one of {', '.join(MODELS)} (got {model!r})")
    return model


def _branch_value(
    branch: Sequence[int],
    padded_prizes: tuple[float, ...],
    hero_index: int,
    model: str,
    config: DcmConfig | None,
    budget: Budget | None,
) -> float:
    """Hero's expected money in one post-confrontation table state.

    Zero-stack entries are players felted in the confrontation itself;
    they split the worst open positions evenly (a tie at zero entering
    chips) and everyone else is priced by the chosen model on the prizes
    that remain.
    """
    busted = [i for i, s in enumerate(branch) if s == 0]
    alive = [s for s in branch if s > 0]
    if hero_index in busted:
        return sum(padded_prizes[len(alive) :]) / len(busted)
    remaining = padded_prizes[: len(alive)]
    if model == "icm":
        report = icm_equities(alive, remaining)
    else:
        report = dcm_equities(alive, remaining, config, budget=budget)
    hero_alive_index = sum(1 for s in branch[:hero_index] if s > 0)
    return report.equity[hero_alive_index]


def decision_ev(
    scenario: DecisionScenario,
    model: str,
    config: DcmConfig | None = None,
    *,
    budget: Budget | None = None,
) -> DecisionReport:
    """Call and fold expectations for a three-branch all-in spot.

    ev_call mixes the hero's equity in the win and lose states by
    hero_equity; ev_fold is the equity of the fold state.  The threshold
    is where the two cross (None when the win and lose equities match, in
    which case hero_equity is irrelevant).  Exact ties recommend fold.
    """
    _check_model(model)
    n = len(scenario.fold_stacks)
    padded = scenario.prizes + (0.0,) * (n - len(scenario.prizes))
    hero_index = scenario.hero - 1
    ev_fold = _branch_value(scenario.fold_stacks, padded, hero_index, model, config, budget)
    win_value = _branch_value(scenario.win_stacks, padded, hero_index, model, config, budget)
    lose_value = _branch_value(scenario.lose_stacks, padded, hero_index, model, config, budget)
    e = scenario.hero_equity
    ev_call = e * win_value + (1.0 - e) * lose_value
    if win_value == lose_value:
        threshold = None
    else:
        threshold = (ev_fold - lose_value) / (win_value - lose_value)
    return DecisionReport(
        ev_call=ev_call,
        ev_fold=ev_fold,
        recommendation="call" if ev_call > ev_fold else "fold",
        threshold=threshold,
        model=model,
        hero_equity_win=win_value,
        hero_equity_lose=lose_value,
    )


def threshold_equity(
    scenario: DecisionScenario,
    model: str,
    config: DcmConfig | None = None,
    *,
    budget: Budget | None = None,
) -> float:
    """The hero equity at which calling and folding break even."""
    report = decision_ev(scenario, model, config, budget=budget)
    if report.threshold is None:
        raise ValidationError(
            "call and fold expectations never cross: the win and lose branches "
            "are worth the same to the hero"
        )
    return report.threshold
