"""Exhaustive property audits and worst-case manipulability constants."""

from .checks import (
    WitnessVerificationError,
    audit,
    check_condorcet_consistency,
    check_monotonicity,
    check_top_cycle_consistency,
    max_true_score_total,
    minimal_alpha,
    minimal_delta,
    minimal_lambda,
    reverify_witness,
    worst_on_family,
)
from .report import INF, PROPERTIES, AuditReport, Witness, parse_rational

__all__ = [
    "INF",
    "PROPERTIES",
    "AuditReport",
    "Witness",
    "WitnessVerificationError",
    "audit",
    "check_condorcet_consistency",
    "check_monotonicity",
    "check_top_cycle_consistency",
    "max_true_score_total",
    "minimal_alpha",
    "minimal_delta",
    "minimal_lambda",
    "parse_rational",
    "reverify_witness",
    "worst_on_family",
]
