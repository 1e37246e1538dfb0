import math
import time

import pytest

from chipsplit import (
    Budget,
    DcmConfig,
    LEAF_ANALYTIC_TWO_PLAYER,
    LEAF_FORCED_BANKRUPTCY,
    LEAF_ICM_TAIL,
    ResourceLimitError,
    ValidationError,
    dcm_equities,
    icm_equities,
)


# Published rows: stacks, prizes, printed DCM equities, and the node count
# of the default-config tree (a regression pin, not a published number).
PUBLISHED = [
    ((1000, 500, 100), (100, 50, 0), (80.79, 60.67, 8.54), 308),
    ((1000, 500, 100), (100, 50, 10), (80.88, 61.66, 17.46), 308),
    ((1000, 800, 500, 100), (100, 50, 0, 0), (65.28, 53.54, 25.98, 5.20), 4321),
    ((1000, 800, 500, 200, 100), (100, 50, 0, 0, 0), (61.08, 47.59, 24.19, 12.58, 4.57), 39807),
    ((1000, 800, 500, 200, 100), (100, 50, 10, 0, 0), (62.59, 50.65, 28.26, 13.08, 5.42), 39807),
]


@pytest.mark.parametrize("stacks,prizes,expected,node_count", PUBLISHED)
def test_published_equities_and_tree_sizes(stacks, prizes, expected, node_count):
    report = dcm_equities(stacks, prizes)
    for value, printed in zip(report.equity, expected):
        assert abs(value - printed) <= 0.02
    assert report.nodes_visited == node_count
    assert abs(math.fsum(report.equity) - math.fsum(prizes)) < 1e-9


def test_frozen_full_precision_row():
    report = dcm_equities((1000, 500, 100), (100, 50, 0))
    frozen = (80.79218037302988, 60.66632231404957, 8.541497312920525)
    for value, pin in zip(report.equity, frozen):
        assert abs(value - pin) < 1e-12
    assert report.nodes_visited == 308
    assert report.pruned_nodes == 3
    assert 0.999999999 < report.explored_mass <= 1.0


def test_single_prize_matches_chip_share():
    stacks = (5000, 4000, 3000, 2000, 1000)
    report = dcm_equities(stacks, (100,))
    total = sum(stacks)
    for value, stack in zip(report.equity, stacks):
        assert abs(value - 100.0 * stack / total) < 1e-9
    assert report.nodes_visited == 61084


def test_win_prob_tracks_chip_share():
    stacks = (1000, 500, 100)
    report = dcm_equities(stacks, (100, 50, 0))
    total = sum(stacks)
    for w, stack in zip(report.win_prob, stacks):
        assert abs(w - stack / total) < 1e-12
    assert abs(math.fsum(report.win_prob) - report.explored_mass) < 1e-15


def test_two_player_matches_closed_form():
    report = dcm_equities((1000, 500), (100, 50))
    assert abs(report.equity[0] - 250.0 / 3.0) < 1e-9
    assert abs(report.equity[1] - 200.0 / 3.0) < 1e-9
    assert report.nodes_visited == 99


def test_single_player_takes_top_prize():
    report = dcm_equities((500,), (100,))
    assert report.equity == [100.0]
    assert report.win_prob == [1.0]
    assert report.explored_mass == 1.0


def test_permutation_equivariance_is_exact():
    base = dcm_equities((1000, 500, 100), (100, 50, 0))
    shuffled = dcm_equities((100, 1000, 500), (100, 50, 0))
    assert shuffled.equity == [base.equity[2], base.equity[0], base.equity[1]]
    assert shuffled.win_prob == [base.win_prob[2], base.win_prob[0], base.win_prob[1]]


def test_tied_stacks_get_bit_identical_results():
    report = dcm_equities((700, 700, 100, 700), (100, 50, 0, 0))
    assert report.equity[0] == report.equity[1] == report.equity[3]
    assert report.win_prob[0] == report.win_prob[1] == report.win_prob[3]


def test_leaf_policies_agree_at_default_depth():
    results = {}
    for policy in (LEAF_FORCED_BANKRUPTCY, LEAF_ICM_TAIL, LEAF_ANALYTIC_TWO_PLAYER):
        report = dcm_equities((1000, 500, 100), (100, 50, 0), DcmConfig(leaf_policy=policy))
        results[policy] = report.equity
        assert abs(math.fsum(report.equity) - 150.0) < 1e-9
    base = results[LEAF_FORCED_BANKRUPTCY]
    for policy, equity in results.items():
        for a, b in zip(base, equity):
            assert abs(a - b) < 1e-9


def test_leaf_policies_differ_when_truncation_bites():
    shallow = DcmConfig(max_depth=3)
    forced = dcm_equities((1000, 500, 100), (100, 50, 0), shallow)
    tail = dcm_equities(
        (1000, 500, 100), (100, 50, 0), DcmConfig(max_depth=3, leaf_policy=LEAF_ICM_TAIL)
    )
    assert forced.equity != tail.equity
    # both policies settle the full prize pool no matter how early they stop
    assert abs(math.fsum(forced.equity) - 150.0) < 1e-9
    assert abs(math.fsum(tail.equity) - 150.0) < 1e-9
    # the static-model tail credits win probability at leaves, so its
    # explored mass stays complete while forced bankruptcy reports the gap
    assert forced.explored_mass < 0.9
    assert abs(tail.explored_mass - 1.0) < 1e-12


def test_analytic_two_player_leaf_is_exact_heads_up():
    config = DcmConfig(max_depth=1, leaf_policy=LEAF_ANALYTIC_TWO_PLAYER)
    report = dcm_equities((1000, 500), (100, 50), config)
    assert abs(report.equity[0] - 250.0 / 3.0) < 1e-12
    assert abs(report.equity[1] - 200.0 / 3.0) < 1e-12


def test_two_player_shortcut_matches_plain_run():
    plain = dcm_equities((1000, 500, 100), (100, 50, 0))
    fast = dcm_equities(
        (1000, 500, 100), (100, 50, 0), DcmConfig(two_player_shortcut=True)
    )
    for a, b in zip(plain.equity, fast.equity):
        assert abs(a - b) < 1e-9
    assert fast.nodes_visited == 94
    assert fast.nodes_visited < plain.nodes_visited


def test_deeper_search_changes_little_at_defaults():
    base = dcm_equities((1000, 500, 100), (100, 50, 0))
    deep = dcm_equities(
        (1000, 500, 100), (100, 50, 0), DcmConfig(max_depth=80, min_prob=1e-18)
    )
    for a, b in zip(base.equity, deep.equity):
        assert abs(a - b) < 1e-6


def test_node_budget_exhaustion():
    with pytest.raises(ResourceLimitError):
        dcm_equities(
            (1000, 800, 500, 200, 100),
            (100, 50, 0, 0, 0),
            budget=Budget(max_nodes=100),
        )


def test_deadline_exhaustion():
    with pytest.raises(ResourceLimitError):
        dcm_equities(
            (1001, 799, 503, 201, 101, 57),
            (100, 50, 0, 0, 0, 0),
            budget=Budget(deadline=time.monotonic() - 1.0),
        )


def test_parallel_workers_agree_with_sequential():
    stacks = (1000, 800, 500, 100)
    prizes = (100, 50, 0, 0)
    sequential = dcm_equities(stacks, prizes)
    parallel = dcm_equities(stacks, prizes, workers=3)
    for a, b in zip(sequential.equity, parallel.equity):
        assert abs(a - b) <= 1e-9
    assert parallel.nodes_visited == sequential.nodes_visited
    assert abs(math.fsum(parallel.equity) - 150.0) < 1e-9


def test_parallel_falls_back_for_small_tables():
    report = dcm_equities((1000, 500), (100, 50), workers=4)
    assert abs(report.equity[0] - 250.0 / 3.0) < 1e-9


def test_determinism_bitwise():
    first = dcm_equities((1234, 567, 89), (100, 40, 5))
    second = dcm_equities((1234, 567, 89), (100, 40, 5))
    assert first.equity == second.equity
    assert first.win_prob == second.win_prob
    assert first.nodes_visited == second.nodes_visited


def test_validation_errors():
    with pytest.raises(ValidationError):
        dcm_equities((0, 100), (100,))
    with pytest.raises(ValidationError):
        dcm_equities((100, 50), (100, 50, 25))
    with pytest.raises(ValidationError):
        dcm_equities((100, 50), (50, 100))
    with pytest.raises(ValidationError):
        DcmConfig(max_depth=0)
    with pytest.raises(ValidationError):
        DcmConfig(min_prob=0.0)
    with pytest.raises(ValidationError):
        DcmConfig(min_prob=1.5)
    with pytest.raises(ValidationError):
        DcmConfig(leaf_policy="nope")
