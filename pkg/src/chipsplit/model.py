"""Shared domain types, validation, and error classes.

Conventions used across the package:

* Stacks are positive integers, one per seat; seat ids are 1-based and
  travel with the stacks whenever anything is sorted.
* Prize schedules are given best-first (top prize first), the way people
  quote them at a table.  Engines pad them with zeros to one prize per
  player and work worst-first internally; the flip happens exactly once,
  at the API boundary.
* Money and probabilities are floats; chips are exact ints.
"""

from __future__ import annotations

from collections.abc import Sized
from dataclasses import dataclass, field
from typing import Sequence


class ChipsplitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ChipsplitError):
    """Bad caller input: stacks, prizes, config, or scenario."""


class ResourceLimitError(ChipsplitError):
    """A configured compute budget (nodes, states, time) was exceeded."""


class InternalError(ChipsplitError):
    """An internal invariant was violated; indicates a bug, not bad input."""


LEAF_FORCED_BANKRUPTCY = "forced-bankruptcy"
LEAF_ICM_TAIL = "icm-tail"
LEAF_ANALYTIC_TWO_PLAYER = "analytic-two-player"
LEAF_POLICIES = (LEAF_FORCED_BANKRUPTCY, LEAF_ICM_TAIL, LEAF_ANALYTIC_TWO_PLAYER)


def validate_stacks(stacks: Sequence[int]) -> tuple[int, ...]:
    """Check and normalize a stack list: non-empty, all positive integers."""
    if isinstance(stacks, (str, bytes)) or not isinstance(stacks, Sized):
        raise ValidationError(f"stacks: expected a list of chip counts (got {stacks!r})")
    if len(stacks) == 0:
        raise ValidationError("stacks: at least one player is required")
    clean: list[int] = []
    for seat, value in enumerate(stacks, start=1):
        if isinstance(value, float):
            if not value.is_integer():
                raise ValidationError(
                    f"stacks: chip counts must be whole numbers (got {value} at seat {seat})"
                )
            value = int(value)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(
                f"stacks: chip counts must be integers (got {value!r} at seat {seat})"
            )
        if value <= 0:
            raise ValidationError(
                f"stacks: every player must hold a positive stack (got {value} at seat {seat});"
                " remove busted players before calling"
            )
        clean.append(value)
    return tuple(clean)


def validate_prizes(prizes: Sequence[float], player_count: int) -> tuple[float, ...]:
    """Check a best-first prize list against the player count."""
    if isinstance(prizes, (str, bytes)) or not isinstance(prizes, Sized):
        raise ValidationError(f"prizes: expected a list of amounts (got {prizes!r})")
    if len(prizes) == 0:
        raise ValidationError("prizes: at least one prize is required")
    if len(prizes) > player_count:
        raise ValidationError(
            f"prizes: more prizes ({len(prizes)}) than players ({player_count})"
        )
    clean: list[float] = []
    for rank, value in enumerate(prizes, start=1):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(
                f"prizes: amounts must be numbers (got {value!r} at rank {rank})"
            )
        amount = float(value)
        if amount < 0:
            raise ValidationError(f"prizes: prize {rank} is negative ({value})")
        if clean and amount > clean[-1] + 1e-12:
            raise ValidationError(
                f"prizes: must be non-increasing best-first (prize {rank} = {value} "
                f"exceeds prize {rank - 1} = {clean[-1]})"
            )
        clean.append(amount)
    return tuple(clean)


@dataclass(frozen=True)
class StackVector:
    """Per-seat chip counts with the parallel list of player identities."""

    stacks: tuple[int, ...]
    identities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.stacks) != len(self.identities):
            raise ValidationError("stacks and identities must have equal length")
        if sorted(self.identities) != list(range(1, len(self.identities) + 1)):
            raise ValidationError("identities must be a permutation of 1..N")

    @classmethod
    def of(cls, stacks: Sequence[int]) -> "StackVector":
        clean = validate_stacks(stacks)
        return cls(clean, tuple(range(1, len(clean) + 1)))

    def __len__(self) -> int:
        return len(self.stacks)

    @property
    def total(self) -> int:
        return sum(self.stacks)


@dataclass(frozen=True)
class PrizeSchedule:
    """Prize money for podium positions, best-first (top prize first)."""

    prizes: tuple[float, ...]

    @classmethod
    def of(cls, prizes: Sequence[float], player_count: int) -> "PrizeSchedule":
        return cls(validate_prizes(prizes, player_count))

    def __len__(self) -> int:
        return len(self.prizes)

    @property
    def total(self) -> float:
        return sum(self.prizes)

    def padded_best_first(self, player_count: int) -> tuple[float, ...]:
        """Best-first list extended with zeros to one prize per player."""
        return self.prizes + (0.0,) * (player_count - len(self.prizes))

    def padded_worst_first(self, player_count: int) -> tuple[float, ...]:
        """Working form for the game-tree engines: zero-padded, worst prize first."""
        return tuple(reversed(self.padded_best_first(player_count)))


def as_stack_vector(stacks: "StackVector | Sequence[int]") -> "StackVector":
    return stacks if isinstance(stacks, StackVector) else StackVector.of(stacks)


def as_prize_schedule(
    prizes: "PrizeSchedule | Sequence[float]", player_count: int
) -> "PrizeSchedule":
    if isinstance(prizes, PrizeSchedule):
        validate_prizes(prizes.prizes, player_count)
        return prizes
    return PrizeSchedule.of(prizes, player_count)


@dataclass(frozen=True)
class DcmConfig:
    """Truncation policy for the dependent-chip game-tree search.

    The search stops expanding a node once the path depth reaches
    ``max_depth`` or the branch probability drops below ``min_prob``;
    ``leaf_policy`` decides how the remaining prizes are settled there.
    ``two_player_shortcut`` replaces any two-player subtree with the exact
    closed form instead of recursing.
    """

    max_depth: int = 50
    min_prob: float = 1e-15
    leaf_policy: str = LEAF_FORCED_BANKRUPTCY
    two_player_shortcut: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.max_depth, bool) or not isinstance(self.max_depth, int) \
                or self.max_depth < 1:
            raise ValidationError(f"config.max_depth must be a positive integer (got {self.max_depth})")
        if isinstance(self.min_prob, bool) or not isinstance(self.min_prob, (int, float)) \
                or not 0 < self.min_prob <= 1:
            raise ValidationError(f"config.min_prob must lie in (0, 1] (got {self.min_prob})")
        if self.leaf_policy not in LEAF_POLICIES:
            raise ValidationError(
                f"config.leaf_policy must be one of {', '.join(LEAF_POLICIES)} (got {self.leaf_policy!r})"
            )
        if not isinstance(self.two_player_shortcut, bool):
            raise ValidationError(
                f"config.two_player_shortcut must be true or false (got {self.two_player_shortcut!r})"
            )


@dataclass
class EquityReport:
    """Result of an equity computation, ordered by player id.

    ``explored_mass`` is the total win probability actually accumulated at
    finished paths; it reaches 1 exactly when no pruning occurred.
    """

    equity: list[float]
    win_prob: list[float]
    explored_mass: float
    nodes_visited: int
    pruned_nodes: int


@dataclass
class FinishMatrix:
    """Probabilities ``q[player][position]`` of finishing at each podium position."""

    q: list[list[float]]
    model: str

    def row_sums(self) -> list[float]:
        return [sum(row) for row in self.q]

    def col_sums(self) -> list[float]:
        return [sum(row[k] for row in self.q) for k in range(len(self.q[0]))]


@dataclass
class ComparisonRow:
    player: int
    stack: int
    icm: float
    dcm: float
    pct_diff: float | None


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow]
    icm_report: EquityReport
    dcm_report: EquityReport


@dataclass(frozen=True)
class DecisionScenario:
    """A three-branch call-or-fold spot at a final table.

    ``fold_stacks``, ``win_stacks`` and ``lose_stacks`` give the table
    state after each outcome; a zero entry means that player busted in the
    confrontation and is paid by finishing position.  ``hero_equity`` is
    the hero's probability of winning the confrontation if called.
    """

    prizes: tuple[float, ...]
    hero: int
    fold_stacks: tuple[int, ...]
    win_stacks: tuple[int, ...]
    lose_stacks: tuple[int, ...]
    hero_equity: float

    @classmethod
    def of(
        cls,
        prizes: Sequence[float],
        hero: int,
        fold_stacks: Sequence[int],
        win_stacks: Sequence[int],
        lose_stacks: Sequence[int],
        hero_equity: float,
    ) -> "DecisionScenario":
        fold_t = _validate_branch("fold_stacks", fold_stacks, allow_zero=True)
        win_t = _validate_branch("win_stacks", win_stacks, allow_zero=True)
        lose_t = _validate_branch("lose_stacks", lose_stacks, allow_zero=True)
        n = len(fold_t)
        if len(win_t) != n or len(lose_t) != n:
            raise ValidationError("fold_stacks, win_stacks and lose_stacks must list the same seats")
        totals = {sum(fold_t), sum(win_t), sum(lose_t)}
        if len(totals) != 1:
            raise ValidationError(
                f"branch states must conserve total chips (got totals {sorted(totals)})"
            )
        if isinstance(hero, bool) or not isinstance(hero, int):
            raise ValidationError(f"hero must be a seat id (got {hero!r})")
        if not 1 <= hero <= n:
            raise ValidationError(f"hero must be a seat id in 1..{n} (got {hero})")
        if fold_t[hero - 1] <= 0 or win_t[hero - 1] <= 0:
            raise ValidationError("hero must hold chips in the fold and win branches")
        if isinstance(hero_equity, bool) or not isinstance(hero_equity, (int, float)):
            raise ValidationError(f"hero_equity must be a number (got {hero_equity!r})")
        if not 0.0 <= hero_equity <= 1.0:
            raise ValidationError(f"hero_equity must lie in [0, 1] (got {hero_equity})")
        clean_prizes = validate_prizes(prizes, n)
        return cls(clean_prizes, hero, fold_t, win_t, lose_t, float(hero_equity))


def _validate_branch(name: str, stacks: Sequence[int], allow_zero: bool) -> tuple[int, ...]:
    if isinstance(stacks, (str, bytes)) or not isinstance(stacks, Sized):
        raise ValidationError(f"{name}: expected a list of chip counts (got {stacks!r})")
    if len(stacks) == 0:
        raise ValidationError(f"{name}: at least one player is required")
    clean: list[int] = []
    for seat, value in enumerate(stacks, start=1):
        if isinstance(value, float):
            if not value.is_integer():
                raise ValidationError(f"{name}: chip counts must be whole numbers "
                                      f"(got {value} at seat {seat})")
            value = int(value)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"{name}: chip counts must be integers (got {value!r} at seat {seat})")
        if value < 0 or (value == 0 and not allow_zero):
            raise ValidationError(f"{name}: invalid stack {value} at seat {seat}")
        clean.append(value)
    if sum(clean) <= 0:
        raise ValidationError(f"{name}: at least one player must hold chips")
    return tuple(clean)


@dataclass
class DecisionReport:
    """Call and fold expectations for a scenario under one model."""

    ev_call: float
    ev_fold: float
    recommendation: str
    threshold: float | None
    model: str
    hero_equity_win: float = field(repr=False, default=0.0)
    hero_equity_lose: float = field(repr=False, default=0.0)


@dataclass
class Budget:
    """Optional compute ceiling enforced inside the tree search."""

    max_nodes: int | None = None
    deadline: float | None = None  # absolute time.monotonic() value
