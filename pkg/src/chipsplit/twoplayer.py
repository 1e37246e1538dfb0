"""Heads-up all-in play: closed form and the direct recurrence.

With two players the repeated all-in game has a known fixed point: the
win probability is the chip share a/(a+b).  The recurrence is kept as an
independent check; each hand the effective stack e = min(a, b) either
doubles the short stack or busts it:

    p(a, b) = 1/2 p(a+e, b-e) + 1/2 p(a-e, b+e)

with p(x, 0) = 1, p(0, y) = 0, p(x, x) = 1/2.
"""

from __future__ import annotations

from .model import ValidationError


def _check_stacks(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise ValidationError(f"chip counts cannot be negative (got {a}, {b})")
    if a + b == 0:
        raise ValidationError("at least one player must hold chips")


def two_player_win_probability(a: int, b: int) -> float:
    """Probability that the player holding ``a`` chips ends up with all of them."""
    _check_stacks(a, b)
    return a / (a + b)


def two_player_win_probability_recursive(a: int, b: int, depth: int = 60) -> float:
    """Evaluate the all-in recurrence directly instead of using a/(a+b).

    Paths still alive after ``depth`` hands score 1 when ahead and 0 when
    behind.  One branch of every hand is terminal (someone busts or the
    stacks even out), so the unresolved probability mass after d hands is
    at most 2**-d and the absolute error is bounded by 2**-depth.
    """
    _check_stacks(a, b)
    if depth < 0:
        raise ValidationError(f"depth cannot be negative (got {depth})")

    def p(x: int, y: int, d: int) -> float:
        if x == 0:
            return 0.0
        if y == 0:
            return 1.0
        if x == y:
            return 0.5
        if d == 0:
            return 1.0 if x > y else 0.0
        e = min(x, y)
        return 0.5 * p(x + e, y - e, d - 1) + 0.5 * p(x - e, y + e, d - 1)

    return p(a, b, depth)


def two_player_expected_prize(a: int, b: int, first: float, second: float) -> float:
    """Expected payout for the ``a`` player when exactly two prizes remain."""
    _check_stacks(a, b)
    if second > first:
        raise ValidationError(
            f"first prize must be at least the second (got {first} < {second})"
        )
    if second < 0:
        raise ValidationError(f"prizes cannot be negative (got {second})")
    w = a / (a + b)
    return w * first + (1.0 - w) * second
