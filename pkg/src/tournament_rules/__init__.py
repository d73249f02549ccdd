"""Strategyproof tournament rules with exact probabilities, plus exhaustive audits."""

from .rules import (
    RULES,
    ScoreVectors,
    TournamentRule,
    UnsupportedSizeError,
    WinnerDistribution,
    get_rule,
    ngwcs,
    ngwss,
    rseb,
    simple_win_scores,
    tcc_rule,
    trivial_uniform,
    true_win_scores,
)
from .tournament import (
    ENUMERATION_CAP,
    Tournament,
    TournamentParseError,
    enumerate_all,
    gen_family,
    top_cycle,
)

__version__ = "0.1.0"

__all__ = [
    "ENUMERATION_CAP",
    "RULES",
    "ScoreVectors",
    "Tournament",
    "TournamentParseError",
    "TournamentRule",
    "UnsupportedSizeError",
    "WinnerDistribution",
    "enumerate_all",
    "gen_family",
    "get_rule",
    "ngwcs",
    "ngwss",
    "rseb",
    "simple_win_scores",
    "tcc_rule",
    "top_cycle",
    "trivial_uniform",
    "true_win_scores",
]
