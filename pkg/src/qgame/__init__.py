"""Simulator and equilibrium analysis for quantized 2x2 games.

Players hold one qubit each of an entangled register; moves are local SU(2)
rotations drawn from restricted two- or three-parameter families, and the
classical game is recovered exactly at zero entanglement. The package locates
Nash equilibria, payoff curves, and classical-quantum entanglement thresholds
as functions of the entanglement parameter and the strategy family.
"""

__version__ = "0.1.0"

from .engine import (
    build_entangler,
    expected_payoffs,
    final_state,
    outcome_probabilities,
    play,
)
from .equilibrium import (
    Resolution,
    best_counter_payoff,
    best_response,
    counter_strategy_check,
    npd_ne_map,
    sin2_to_gamma,
    sweep,
    threshold_bisect,
    verify_ne,
)
from .games import (
    GameSpec,
    battle_of_sexes,
    chicken,
    n_player_pd,
    parse_game,
    prisoners_dilemma,
    validate_npd,
)
from .strategies import (
    FULL3,
    S1,
    S2,
    StrategyFamily,
    StrategyPoint,
    grid,
    parse_profile,
    resolve_named,
    s1k,
    s2k,
    to_matrix,
)

__all__ = [
    "__version__",
    "build_entangler", "expected_payoffs", "final_state",
    "outcome_probabilities", "play",
    "Resolution", "best_counter_payoff", "best_response",
    "counter_strategy_check", "npd_ne_map", "sin2_to_gamma", "sweep",
    "threshold_bisect", "verify_ne",
    "GameSpec", "battle_of_sexes", "chicken", "n_player_pd", "parse_game",
    "prisoners_dilemma", "validate_npd",
    "FULL3", "S1", "S2", "StrategyFamily", "StrategyPoint", "grid",
    "parse_profile", "resolve_named", "s1k", "s2k", "to_matrix",
]
