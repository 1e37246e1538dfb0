"""Single-hand chip mechanics shared by the tree engine and the oracle.

One simulated hand is an all-in confrontation: one winner collects the
effective stack (the min of the two stacks) from every opponent, so total
chips never change.  Players whose stack reaches zero are settled
immediately by finishing position, with equal entering stacks splitting
the covered prizes evenly.
"""

from __future__ import annotations

from typing import Sequence

from .model import InternalError, StackVector, ValidationError, validate_stacks


def redistribute_chips(
    stacks: Sequence[int], winner: int
) -> tuple[tuple[int, ...], list[int]]:
    """Apply one all-in hand won by seat ``winner`` (1-based).

    Returns the new stacks and the list of busted seat ids.  The winner
    gains min(own, other) from every opponent; total chips are conserved
    exactly.
    """
    clean = validate_stacks(stacks)
    if not 1 <= winner <= len(clean):
        raise ValidationError(f"winner must be a seat id in 1..{len(clean)} (got {winner})")
    w = winner - 1
    winning_stack = clean[w]
    new_stacks = list(clean)
    gained = 0
    busted: list[int] = []
    for i, held in enumerate(clean):
        if i == w:
            continue
        transfer = min(held, winning_stack)
        gained += transfer
        remaining = held - transfer
        new_stacks[i] = remaining
        if remaining == 0:
            busted.append(i + 1)
    new_stacks[w] = winning_stack + gained
    return tuple(new_stacks), busted


def tie_blocks(sorted_stacks: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of equal values in an ascending list, as (start, end) index pairs."""
    blocks: list[tuple[int, int]] = []
    i = 0
    n = len(sorted_stacks)
    while i < n:
        k = i
        while k + 1 < n and sorted_stacks[k + 1] == sorted_stacks[i]:
            k += 1
        blocks.append((i, k))
        i = k + 1
    return blocks


def resolve_bankruptcy(entering_stacks, prize_block, node_prob):
    """Split a block of prizes among players busting together.

    ``entering_stacks`` are the stacks the busting players held before the
    showdown; ``prize_block`` lists exactly as many prizes, worst-first.
    Players are ranked by entering stack ascending; equal stacks form a
    tied group whose covered prizes are pooled and split evenly.  Every
    payout is weighted by ``node_prob``.

    Arithmetic is generic: pass floats for the engine, Fractions for the
    exact oracle.

    Returns [(index into entering_stacks, payout), ...] so the caller can
    route each payout back to whoever busted.
    """
    count = len(entering_stacks)
    if count == 0:
        raise InternalError("resolve_bankruptcy called with no busted players")
    if len(prize_block) != count:
        raise InternalError(
            f"prize block size {len(prize_block)} does not match {count} busted players"
        )
    order = sorted(range(count), key=lambda i: entering_stacks[i])
    ranked = [entering_stacks[i] for i in order]
    payouts = [None] * count
    for start, end in tie_blocks(ranked):
        size = end - start + 1
        pooled = sum(prize_block[start : end + 1])
        share = node_prob * pooled / size
        for m in range(start, end + 1):
            payouts[m] = share
    return [(order[m], payouts[m]) for m in range(count)]


def level_tied_groups(sorted_stacks: Sequence[int], per_player: list) -> None:
    """Make tied players' results exactly equal, in place.

    ``per_player`` is indexed like ``sorted_stacks``; entries may be
    scalars or row lists.  Float accumulation order differs between tied
    players, so their totals can drift apart by a few ulps; each run of
    equal stacks is overwritten with the first member's value.
    """
    for start, end in tie_blocks(sorted_stacks):
        first = per_player[start]
        for m in range(start + 1, end + 1):
            per_player[m] = list(first) if isinstance(first, list) else first


def canonicalize(stacks: StackVector | Sequence[int]) -> tuple[StackVector, list[int]]:
    """Sort stacks ascending, dragging identities along (stable for ties).

    Returns the sorted vector and the permutation ``perm`` with
    ``sorted.stacks[i] == original.stacks[perm[i]]``, which maps results
    computed in sorted order back to the original seats.
    """
    if not isinstance(stacks, StackVector):
        stacks = StackVector.of(stacks)
    perm = sorted(range(len(stacks)), key=lambda i: stacks.stacks[i])
    sorted_vector = StackVector(
        tuple(stacks.stacks[i] for i in perm),
        tuple(stacks.identities[i] for i in perm),
    )
    return sorted_vector, perm
