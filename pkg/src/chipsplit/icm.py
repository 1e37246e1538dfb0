"""Static chip-count equities (Harville-style chained odds).

Each player's chance of taking first place is their share of the chips in
play.  Conditional on a winner, the runner-up odds are the same rule over
the remaining stacks, and so on down the podium.  Summing prize times
probability over every ordered podium gives the expected payout.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .hands import canonicalize, level_tied_groups
from .model import (
    EquityReport,
    FinishMatrix,
    PrizeSchedule,
    StackVector,
    ValidationError,
    as_prize_schedule,
    as_stack_vector,
)


def _podium_walk(
    stacks: Sequence[int], depth: int, credit: Callable[[int, int, float], None]
) -> int:
    """Enumerate ordered podium prefixes up to ``depth`` places.

    Calls ``credit(player, level, prob)`` once per prefix node with the
    running product of conditional win odds; returns the node count.
    """
    n = len(stacks)
    used = [False] * n
    nodes = 0

    def walk(level: int, remaining: int, prob: float) -> None:
        nonlocal nodes
        last = level + 1 >= depth
        for j in range(n):
            if used[j]:
                continue
            nodes += 1
            p = prob * (stacks[j] / remaining)
            credit(j, level, p)
            if not last:
                used[j] = True
                walk(level + 1, remaining - stacks[j], p)
                used[j] = False

    if depth > 0:
        walk(0, sum(stacks), 1.0)
    return nodes


def icm_equities(
    stacks: StackVector | Sequence[int], prizes: PrizeSchedule | Sequence[float]
) -> EquityReport:
    """Expected prize money per player under the static model."""
    vector = as_stack_vector(stacks)
    n = len(vector)
    schedule = as_prize_schedule(prizes, n)
    ordered, perm = canonicalize(vector)

    padded = schedule.padded_best_first(n)
    depth = 0
    for k, amount in enumerate(padded):
        if amount > 0:
            depth = k + 1

    equity = [0.0] * n

    def credit(j: int, level: int, p: float) -> None:
        equity[j] += p * padded[level]

    nodes = _podium_walk(ordered.stacks, depth, credit)
    total = vector.total
    win_prob = [s / total for s in ordered.stacks]

    level_tied_groups(ordered.stacks, equity)
    level_tied_groups(ordered.stacks, win_prob)

    by_seat_equity = [0.0] * n
    by_seat_win = [0.0] * n
    for pos, seat in enumerate(perm):
        by_seat_equity[seat] = equity[pos]
        by_seat_win[seat] = win_prob[pos]
    return EquityReport(
        equity=by_seat_equity,
        win_prob=by_seat_win,
        explored_mass=1.0,
        nodes_visited=nodes,
        pruned_nodes=0,
    )


def icm_finish_distribution(
    stacks: StackVector | Sequence[int], podium_depth: int | None = None
) -> FinishMatrix:
    """Finish-position probabilities ``q[player][position]`` under the static model.

    Columns are podium positions 1..podium_depth (default: all N places);
    every column sums to 1, and with full depth every row does too.
    """
    vector = as_stack_vector(stacks)
    n = len(vector)
    if podium_depth is None:
        podium_depth = n
    if not isinstance(podium_depth, int) or not 1 <= podium_depth <= n:
        raise ValidationError(
            f"podium_depth must lie in 1..{n} (got {podium_depth})"
        )
    ordered, perm = canonicalize(vector)

    q = [[0.0] * podium_depth for _ in range(n)]

    def credit(j: int, level: int, p: float) -> None:
        q[j][level] += p

    _podium_walk(ordered.stacks, podium_depth, credit)
    level_tied_groups(ordered.stacks, q)

    by_seat = [[0.0] * podium_depth for _ in range(n)]
    for pos, seat in enumerate(perm):
        by_seat[seat] = q[pos]
    return FinishMatrix(q=by_seat, model="icm")
