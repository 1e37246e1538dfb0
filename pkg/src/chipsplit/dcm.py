"""Game-tree prize equities (the dependent model).

The tournament is idealized as a sequence of all-in hands: every active
player wins the current hand with probability 1/n, chips move by
effective stacks, and anyone left broke is paid a finishing position on
the spot, worst remaining prize first.  Expected payouts come from a
depth-first walk of this tree.

The walk is truncated at a maximum depth and at a minimum branch
probability; a configurable leaf policy settles the prize money still
unassigned where the walk stops.  The default policy forces a bankruptcy
of everyone at the leaf, sharing the remaining prizes by current stack
order, and keeps the search deterministic and exactly conserving.

Internals work on stacks sorted ascending (identities dragged along), so
busted players always form a prefix and tie groups are contiguous runs.
"""

from __future__ import annotations

import math
import sys
import time
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .hands import canonicalize, level_tied_groups
from .model import (
    Budget,
    DcmConfig,
    EquityReport,
    LEAF_ANALYTIC_TWO_PLAYER,
    LEAF_ICM_TAIL,
    PrizeSchedule,
    ResourceLimitError,
    StackVector,
    as_prize_schedule,
    as_stack_vector,
)

# Reachable depth is bounded by the probability floor (each level halves
# the branch probability at least), so ~1100 frames covers every legal
# config; the ceiling only needs to beat the default 1000.
_RECURSION_HEADROOM = 4000

_DEADLINE_MASK = 4095  # check the wall clock every 4096 nodes


def _run_tree(
    stacks: list[int],
    ids: list[int],
    cursor: int,
    deep: int,
    q: float,
    worst_first: tuple[float, ...],
    n_total: int,
    config: DcmConfig,
    track_positions: bool,
    max_nodes: int | None,
    deadline: float | None,
) -> tuple[list[float], list[float], list[list[float]] | None, int, int]:
    """Depth-first walk of one subtree; returns raw accumulators.

    ``stacks`` must be ascending with ``ids`` parallel; ``cursor`` indexes
    the worst-first prize list (always n_total - len(stacks));
    ``q`` is the probability of reaching this node.
    """
    max_depth = config.max_depth
    min_prob = config.min_prob
    policy = config.leaf_policy
    shortcut = config.two_player_shortcut
    icm_leaf = policy == LEAF_ICM_TAIL
    analytic_leaf = policy == LEAF_ANALYTIC_TWO_PLAYER

    money = [0.0] * n_total
    win = [0.0] * n_total
    pos = [[0.0] * n_total for _ in range(n_total)] if track_positions else None

    prize_prefix = [0.0] * (len(worst_first) + 1)
    acc = 0.0
    for k, amount in enumerate(worst_first):
        acc += amount
        prize_prefix[k + 1] = acc

    nodes = 0
    pruned = 0
    monotonic = time.monotonic

    def settle_block(
        block_ids: Sequence[int], entering: Sequence[int], at: int, prob: float
    ) -> None:
        # entering stacks arrive ascending, so tie groups are runs; each
        # run pools its covered prizes and splits them evenly.
        count = len(entering)
        i = 0
        while i < count:
            k = i + 1
            value = entering[i]
            while k < count and entering[k] == value:
                k += 1
            size = k - i
            share = prob * (prize_prefix[at + k] - prize_prefix[at + i]) / size
            for m in range(i, k):
                money[block_ids[m]] += share
            if pos is not None:
                frac = prob / size
                for m in range(i, k):
                    row = pos[block_ids[m]]
                    for kk in range(at + i, at + k):
                        row[n_total - 1 - kk] += frac
            i = k

    def settle_two_player(
        low: int, high: int, low_id: int, high_id: int, at: int, prob: float
    ) -> None:
        # exact heads-up value: win probability is the chip share
        p_low = low / (low + high)
        p_high = 1.0 - p_low
        worse = worst_first[at]
        better = worst_first[at + 1]
        money[low_id] += prob * (p_low * better + p_high * worse)
        money[high_id] += prob * (p_high * better + p_low * worse)
        win[low_id] += prob * p_low
        win[high_id] += prob * p_high
        if pos is not None:
            first_col = n_total - 2 - at
            second_col = n_total - 1 - at
            pos[low_id][first_col] += prob * p_low
            pos[low_id][second_col] += prob * p_high
            pos[high_id][first_col] += prob * p_high
            pos[high_id][second_col] += prob * p_low

    def settle_icm_tail(
        leaf_stacks: Sequence[int], leaf_ids: Sequence[int], at: int, prob: float
    ) -> None:
        # pay the remaining prizes by the static model on the leaf state
        # and credit the static win odds
        n = len(leaf_stacks)
        total = 0
        for s in leaf_stacks:
            total += s
        for i in range(n):
            win[leaf_ids[i]] += prob * (leaf_stacks[i] / total)
        best = [worst_first[at + n - 1 - level] for level in range(n)]
        depth = 0
        for level, amount in enumerate(best):
            if amount > 0:
                depth = level + 1
        if pos is not None:
            depth = n
        if depth == 0:
            return
        used = [False] * n

        def walk(level: int, remaining: int, prob_here: float) -> None:
            last = level + 1 >= depth
            for i in range(n):
                if used[i]:
                    continue
                p_i = prob_here * (leaf_stacks[i] / remaining)
                money[leaf_ids[i]] += p_i * best[level]
                if pos is not None:
                    pos[leaf_ids[i]][level] += p_i
                if not last:
                    used[i] = True
                    walk(level + 1, remaining - leaf_stacks[i], p_i)
                    used[i] = False

        walk(0, total, prob)

    def settle_leaf(
        leaf_stacks: list[int], leaf_ids: list[int], at: int, node_q: float
    ) -> None:
        if analytic_leaf and len(leaf_stacks) == 2:
            settle_two_player(
                leaf_stacks[0], leaf_stacks[1], leaf_ids[0], leaf_ids[1], at, node_q
            )
        elif icm_leaf:
            settle_icm_tail(leaf_stacks, leaf_ids, at, node_q)
        else:
            settle_block(leaf_ids, leaf_stacks, at, node_q)

    def expand(
        node_stacks: list[int], node_ids: list[int], at: int, depth: int, node_q: float
    ) -> None:
        nonlocal nodes, pruned
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise ResourceLimitError(
                f"node budget exceeded ({max_nodes} nodes); "
                "lower max_depth or raise min_prob"
            )
        if deadline is not None and (nodes & _DEADLINE_MASK) == 0 and monotonic() > deadline:
            raise ResourceLimitError("time budget exceeded; lower max_depth or raise min_prob")
        n = len(node_stacks)
        if shortcut and n == 2:
            settle_two_player(
                node_stacks[0], node_stacks[1], node_ids[0], node_ids[1], at, node_q
            )
            return
        branch_q = node_q / n
        if depth >= max_depth or branch_q < min_prob:
            pruned += 1
            settle_leaf(node_stacks, node_ids, at, node_q)
            return
        if n == 1:
            only = node_ids[0]
            money[only] += node_q * worst_first[at]
            win[only] += node_q
            if pos is not None:
                pos[only][0] += node_q
            return
        for j in range(n):
            s = node_stacks[j]
            t = j
            while t + 1 < n and node_stacks[t + 1] == s:
                t += 1
            # everyone at or below the winner's stack is felted
            if t:
                settle_block(
                    node_ids[:j] + node_ids[j + 1 : t + 1],
                    node_stacks[:j] + node_stacks[j + 1 : t + 1],
                    at,
                    branch_q,
                )
            survivors = n - 1 - t
            new_stack = sum(node_stacks[: t + 1]) + s * survivors
            child_stacks = [node_stacks[i] - s for i in range(t + 1, n)]
            child_ids = node_ids[t + 1 :]
            spot = bisect_left(child_stacks, new_stack)
            child_stacks.insert(spot, new_stack)
            child_ids.insert(spot, node_ids[j])
            expand(child_stacks, child_ids, at + t, depth + 1, branch_q)

    if sys.getrecursionlimit() < _RECURSION_HEADROOM:
        sys.setrecursionlimit(_RECURSION_HEADROOM)
    expand(stacks, ids, cursor, deep, q)
    return money, win, pos, nodes, pruned


def _branch_task(args):
    (stacks, ids, cursor, deep, q, worst_first, n_total, config, max_nodes, deadline) = args
    money, win, _, nodes, pruned = _run_tree(
        stacks, ids, cursor, deep, q, worst_first, n_total, config,
        False, max_nodes, deadline,
    )
    return money, win, nodes, pruned


def _parallel_tree(
    stacks: list[int],
    ids: list[int],
    worst_first: tuple[float, ...],
    n_total: int,
    config: DcmConfig,
    max_nodes: int | None,
    deadline: float | None,
    workers: int,
) -> tuple[list[float], list[float], None, int, int]:
    """Root branches fanned out to worker processes, merged in branch order.

    Results match the sequential walk within float-reassociation noise;
    node budgets are enforced per branch rather than globally.
    """
    n = len(stacks)
    money = [0.0] * n_total
    win = [0.0] * n_total
    nodes = 1
    pruned = 0
    branch_q = 1.0 / n

    tasks = []
    root_settlements: list[tuple[list[int], list[int], int]] = []
    for j in range(n):
        s = stacks[j]
        t = j
        while t + 1 < n and stacks[t + 1] == s:
            t += 1
        if t:
            root_settlements.append(
                (ids[:j] + ids[j + 1 : t + 1], stacks[:j] + stacks[j + 1 : t + 1], t)
            )
        survivors = n - 1 - t
        new_stack = sum(stacks[: t + 1]) + s * survivors
        child_stacks = [stacks[i] - s for i in range(t + 1, n)]
        child_ids = ids[t + 1 :]
        spot = bisect_left(child_stacks, new_stack)
        child_stacks.insert(spot, new_stack)
        child_ids.insert(spot, ids[j])
        tasks.append(
            (child_stacks, child_ids, t, 2, branch_q,
             worst_first, n_total, config, max_nodes, deadline)
        )

    prize_prefix = [0.0] * (len(worst_first) + 1)
    acc = 0.0
    for k, amount in enumerate(worst_first):
        acc += amount
        prize_prefix[k + 1] = acc
    for block_ids, entering, count in root_settlements:
        i = 0
        while i < count:
            k = i + 1
            value = entering[i]
            while k < count and entering[k] == value:
                k += 1
            share = branch_q * (prize_prefix[k] - prize_prefix[i]) / (k - i)
            for m in range(i, k):
                money[block_ids[m]] += share
            i = k

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for task_money, task_win, task_nodes, task_pruned in pool.map(_branch_task, tasks):
            for i in range(n_total):
                money[i] += task_money[i]
                win[i] += task_win[i]
            nodes += task_nodes
            pruned += task_pruned
    return money, win, None, nodes, pruned


def _dcm_canonical(
    ordered: StackVector,
    worst_first: tuple[float, ...],
    config: DcmConfig,
    track_positions: bool,
    budget: Budget | None,
    workers: int | None,
) -> tuple[list[float], list[float], list[list[float]] | None, int, int]:
    """Run the engine on an already-sorted table and level tied players."""
    n = len(ordered)
    max_nodes = budget.max_nodes if budget else None
    deadline = budget.deadline if budget else None
    stacks = list(ordered.stacks)
    ids = list(range(n))

    parallel = (
        workers is not None
        and workers > 1
        and not track_positions
        and n >= 3
        and config.max_depth > 1
        and 1.0 / n >= config.min_prob
    )
    if parallel:
        money, win, pos, nodes, pruned = _parallel_tree(
            stacks, ids, worst_first, n, config, max_nodes, deadline, workers
        )
    else:
        money, win, pos, nodes, pruned = _run_tree(
            stacks, ids, 0, 1, 1.0, worst_first, n, config,
            track_positions, max_nodes, deadline,
        )

    level_tied_groups(ordered.stacks, money)
    level_tied_groups(ordered.stacks, win)
    if pos is not None:
        level_tied_groups(ordered.stacks, pos)
    return money, win, pos, nodes, pruned


def dcm_equities(
    stacks: StackVector | Sequence[int],
    prizes: PrizeSchedule | Sequence[float],
    config: DcmConfig | None = None,
    *,
    budget: Budget | None = None,
    workers: int | None = None,
) -> EquityReport:
    """Expected prize money per player under the dependent model.

    ``budget`` caps the search (node count, wall-clock deadline) and makes
    the call raise instead of degrading accuracy.  ``workers`` > 1 spreads
    the root branches over processes; results agree with the sequential
    walk within 1e-9 but are not bit-identical, so leave it unset when
    reproducibility matters.
    """
    vector = as_stack_vector(stacks)
    n = len(vector)
    schedule = as_prize_schedule(prizes, n)
    if config is None:
        config = DcmConfig()

    ordered, perm = canonicalize(vector)
    worst_first = schedule.padded_worst_first(n)
    money, win, _, nodes, pruned = _dcm_canonical(
        ordered, worst_first, config, False, budget, workers
    )

    equity = [0.0] * n
    win_prob = [0.0] * n
    for position, seat in enumerate(perm):
        equity[seat] = money[position]
        win_prob[seat] = win[position]
    return EquityReport(
        equity=equity,
        win_prob=win_prob,
        explored_mass=math.fsum(win),
        nodes_visited=nodes,
        pruned_nodes=pruned,
    )
