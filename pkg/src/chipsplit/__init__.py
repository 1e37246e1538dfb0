"""Tournament prize-equity engine: static and game-tree chip models.

The library answers one question two ways: given chip stacks and a prize
schedule, what is each player's fair share of the pool?  ``icm_equities``
prices stacks by chip proportion over podium orderings; ``dcm_equities``
plays out repeated all-in hands in a recursive game tree, which values
short stacks lower near the bubble.  On top of those sit finish-position
matrices, model comparisons, call/fold decision EVs, and a brute-force
Markov verifier for small tables.
"""

from .model import (
    Budget,
    ChipsplitError,
    ComparisonReport,
    ComparisonRow,
    DcmConfig,
    DecisionReport,
    DecisionScenario,
    EquityReport,
    FinishMatrix,
    InternalError,
    LEAF_ANALYTIC_TWO_PLAYER,
    LEAF_FORCED_BANKRUPTCY,
    LEAF_ICM_TAIL,
    LEAF_POLICIES,
    PrizeSchedule,
    ResourceLimitError,
    StackVector,
    ValidationError,
)
from .hands import canonicalize, redistribute_chips, resolve_bankruptcy
from .icm import icm_equities, icm_finish_distribution
from .twoplayer import (
    two_player_expected_prize,
    two_player_win_probability,
    two_player_win_probability_recursive,
)
from .dcm import dcm_equities
from .oracle import enumerate_states, oracle_equities
from .analysis import (
    compare_models,
    dcm_finish_distribution,
    decision_ev,
    reconstruct_equity,
    threshold_equity,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "ChipsplitError",
    "ComparisonReport",
    "ComparisonRow",
    "DcmConfig",
    "DecisionReport",
    "DecisionScenario",
    "EquityReport",
    "FinishMatrix",
    "InternalError",
    "LEAF_ANALYTIC_TWO_PLAYER",
    "LEAF_FORCED_BANKRUPTCY",
    "LEAF_ICM_TAIL",
    "LEAF_POLICIES",
    "PrizeSchedule",
    "ResourceLimitError",
    "StackVector",
    "ValidationError",
    "canonicalize",
    "compare_models",
    "dcm_equities",
    "dcm_finish_distribution",
    "decision_ev",
    "enumerate_states",
    "icm_equities",
    "icm_finish_distribution",
    "oracle_equities",
    "reconstruct_equity",
    "redistribute_chips",
    "resolve_bankruptcy",
    "threshold_equity",
    "two_player_expected_prize",
    "two_player_win_probability",
    "two_player_win_probability_recursive",
    "__version__",
]
