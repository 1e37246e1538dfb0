"""Brute-force verifier for the game-tree model on small tables.

Instead of walking the play tree, enumerate every reachable chip
distribution and solve the absorbing Markov chain for expected payouts.
Transitions reuse the same hand mechanics as the engine
(redistribute_chips, resolve_bankruptcy); what differs is the solution
method (fixed point versus path enumeration), which is exactly the
quantity worth cross-checking.

States are canonical: stacks sorted ascending, identities collapsed.
Within one player-count level each state has at most one same-level
successor (only a strict unique minimum can win without busting anyone),
so the per-level linear system is a set of chains and cycles that can be
solved exactly with rational arithmetic, or by value iteration when the
state space is large.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .hands import canonicalize, level_tied_groups, redistribute_chips, resolve_bankruptcy
from .model import (
    EquityReport,
    InternalError,
    PrizeSchedule,
    ResourceLimitError,
    StackVector,
    as_prize_schedule,
    as_stack_vector,
)

DEFAULT_STATE_BUDGET = 10**6
RATIONAL_STATE_LIMIT = 10**4
_ITERATION_CAP = 100_000


class Transition(NamedTuple):
    """One hand outcome: the player at ``winner`` (sorted position) takes it."""

    winner: int
    successor: tuple[int, ...]
    busted: tuple[int, ...]
    survivor_map: tuple[tuple[int, int], ...]


@dataclass
class StateGraph:
    """Reachable canonical states and their hand transitions."""

    initial: tuple[int, ...]
    player_count: int
    states: list[tuple[int, ...]]
    transitions: dict[tuple[int, ...], list[Transition]]


def enumerate_states(
    stacks: StackVector | Sequence[int], state_budget: int = DEFAULT_STATE_BUDGET
) -> StateGraph:
    """Closure of chip distributions reachable from the given table.

    Every outgoing hand is equally likely (probability 1/n).  States with
    one player are absorbing.  Raises a resource error when the closure
    exceeds ``state_budget`` states.
    """
    vector = as_stack_vector(stacks)
    ordered, _ = canonicalize(vector)
    initial = ordered.stacks
    seen = {initial}
    order = [initial]
    queue = deque([initial])
    transitions: dict[tuple[int, ...], list[Transition]] = {}
    while queue:
        state = queue.popleft()
        n = len(state)
        outgoing: list[Transition] = []
        if n > 1:
            for j in range(n):
                new_stacks, busted_seats = redistribute_chips(state, j + 1)
                busted = tuple(seat - 1 for seat in busted_seats)
                survivors = sorted(
                    (value, pos) for pos, value in enumerate(new_stacks) if value > 0
                )
                successor = tuple(value for value, _ in survivors)
                survivor_map = tuple((pos, k) for k, (_, pos) in enumerate(survivors))
                outgoing.append(Transition(j, successor, busted, survivor_map))
                if successor not in seen:
                    if len(seen) >= state_budget:
                        raise ResourceLimitError(
                            f"state budget exceeded ({state_budget} states); "
                            "reduce chip counts or raise state_budget"
                        )
                    seen.add(successor)
                    order.append(successor)
                    queue.append(successor)
        transitions[state] = outgoing
    return StateGraph(
        initial=initial,
        player_count=len(initial),
        states=order,
        transitions=transitions,
    )


def _level_system(graph, level_states, values, worst_first, inv, zero):
    """Bias vector and same-level links for one player-count level.

    Returns (bias, link) dicts keyed by state: per position, the expected
    immediate-plus-solved reward, and the (successor, position) pointer
    for the at-most-one same-level transition.
    """
    n = len(level_states[0])
    cursor = graph.player_count - n
    bias = {}
    link = {}
    for state in level_states:
        b = [zero] * n
        links_here: list[tuple[tuple[int, ...], int] | None] = [None] * n
        for tr in graph.transitions[state]:
            if tr.busted:
                entering = [state[pos] for pos in tr.busted]
                block = worst_first[cursor : cursor + len(tr.busted)]
                for idx, payout in resolve_bankruptcy(entering, block, inv):
                    b[tr.busted[idx]] += payout
            if len(tr.successor) == n:
                for from_pos, to_pos in tr.survivor_map:
                    links_here[from_pos] = (tr.successor, to_pos)
            else:
                succ_values = values[tr.successor]
                for from_pos, to_pos in tr.survivor_map:
                    b[from_pos] += inv * succ_values[to_pos]
        bias[state] = b
        link[state] = links_here
    return bias, link


def _solve_level_chains(level_states, bias, link, inv, one):
    """Exact per-level solve exploiting the chain/cycle structure.

    Each variable points to at most one same-level variable, so following
    links either reaches a known value or closes a cycle whose geometric
    sum has the closed form B / (1 - inv**length).
    """
    solved: dict[tuple[tuple[int, ...], int], object] = {}
    for state in level_states:
        for start in range(len(state)):
            if (state, start) in solved:
                continue
            path: list[tuple[tuple[int, ...], int]] = []
            on_path: dict[tuple[tuple[int, ...], int], int] = {}
            cur = (state, start)
            tail = None
            while True:
                if cur in solved:
                    tail = solved[cur]
                    break
                if cur in on_path:
                    k0 = on_path[cur]
                    acc = bias[path[-1][0]][path[-1][1]]
                    for s, i in reversed(path[k0:-1]):
                        acc = bias[s][i] + inv * acc
                    cycle_len = len(path) - k0
                    tail = acc / (one - inv**cycle_len)
                    solved[cur] = tail
                    path = path[:k0]
                    break
                on_path[cur] = len(path)
                path.append(cur)
                nxt = link[cur[0]][cur[1]]
                if nxt is None:
                    tail = None
                    break
                cur = nxt
            if tail is None:
                value = bias[path[-1][0]][path[-1][1]]
                solved[path[-1]] = value
                path = path[:-1]
                tail = value
            for s, i in reversed(path):
                tail = bias[s][i] + inv * tail
                solved[(s, i)] = tail
    return solved


def _solve_level_iterative(level_states, bias, link, inv, tol):
    """Value iteration for one level; contraction factor is at most 1/n."""
    current = {
        (state, i): 0.0 for state in level_states for i in range(len(level_states[0]))
    }
    for _ in range(_ITERATION_CAP):
        worst = 0.0
        updated = {}
        for var, _old in current.items():
            state, i = var
            nxt = link[state][i]
            value = bias[state][i]
            if nxt is not None:
                value += inv * current[nxt]
            updated[var] = value
            shift = abs(value - current[var])
            if shift > worst:
                worst = shift
        current = updated
        if worst <= tol:
            return current
    raise ResourceLimitError(
        f"value iteration did not converge within {_ITERATION_CAP} sweeps"
    )


def _solve(graph: StateGraph, worst_first, exact: bool, tol: float):
    """Expected payouts per (state, sorted position) for all states."""
    by_level: dict[int, list[tuple[int, ...]]] = {}
    for state in graph.states:
        by_level.setdefault(len(state), []).append(state)
    values: dict[tuple[int, ...], list] = {}
    top = worst_first[graph.player_count - 1]
    for n in sorted(by_level):
        level_states = by_level[n]
        if n == 1:
            for state in level_states:
                values[state] = [top]
            continue
        if exact:
            inv, one = Fraction(1, n), Fraction(1)
        else:
            inv, one = 1.0 / n, 1.0
        zero = one - one
        bias, link = _level_system(graph, level_states, values, worst_first, inv, zero)
        if exact:
            solved = _solve_level_chains(level_states, bias, link, inv, one)
        else:
            solved = _solve_level_iterative(level_states, bias, link, inv, tol)
        for state in level_states:
            values[state] = [solved[(state, i)] for i in range(n)]
    return values


def _exact_equities(graph: StateGraph, worst_first_exact) -> list[Fraction]:
    """Rational expected payouts at the initial state, with a conservation check."""
    values = _solve(graph, worst_first_exact, exact=True, tol=0.0)
    result = values[graph.initial]
    if sum(result) != sum(worst_first_exact):
        raise InternalError("rational solve lost prize mass")
    return result


def oracle_equities(
    stacks: StackVector | Sequence[int],
    prizes: PrizeSchedule | Sequence[float],
    tol: float = 1e-12,
    *,
    exact: bool | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> EquityReport:
    """Expected payouts by solving the absorbing chain over reachable states.

    ``exact`` forces or forbids rational arithmetic; by default rational
    solving is used when the state count is at most 10**4 and value
    iteration (to ``tol``) beyond that.  nodes_visited reports the state
    count.
    """
    vector = as_stack_vector(stacks)
    n = len(vector)
    schedule = as_prize_schedule(prizes, n)

    ordered, perm = canonicalize(vector)
    graph = enumerate_states(ordered, state_budget)
    worst_first = schedule.padded_worst_first(n)
    use_exact = exact if exact is not None else len(graph.states) <= RATIONAL_STATE_LIMIT

    win_indicator: tuple = (0,) * (n - 1) + (1,)
    if use_exact:
        money_exact = _exact_equities(graph, tuple(Fraction(c) for c in worst_first))
        win_exact = _solve(
            graph, tuple(Fraction(c) for c in win_indicator), exact=True, tol=0.0
        )[graph.initial]
        money = [float(v) for v in money_exact]
        win = [float(v) for v in win_exact]
    else:
        money_f = _solve(graph, worst_first, exact=False, tol=tol)[graph.initial]
        win_f = _solve(
            graph, tuple(float(c) for c in win_indicator), exact=False, tol=tol
        )[graph.initial]
        money = list(money_f)
        win = list(win_f)

    level_tied_groups(ordered.stacks, money)
    level_tied_groups(ordered.stacks, win)

    equity = [0.0] * n
    win_prob = [0.0] * n
    for position, seat in enumerate(perm):
        equity[seat] = money[position]
        win_prob[seat] = win[position]
    return EquityReport(
        equity=equity,
        win_prob=win_prob,
        explored_mass=math.fsum(win),
        nodes_visited=len(graph.states),
        pruned_nodes=0,
    )
