"""Property checks and worst-case manipulability constants for tournament rules.

Ordered pairs ``(T, T')`` follow one convention throughout: ``T`` is the
witness ``tournament`` and ``T'`` the ``adjacent`` one.  The pairwise
constant measures the gain of moving from ``T`` to ``T'``; the multiplicative
and additive constants compare the coalition's mass on ``T`` to its mass on
``T'``.  Every ordered pair is scanned, so both directions are covered.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..rules import NormalizedGeometricWinStrength, TournamentRule, get_rule
from ..tournament import ENUMERATION_CAP, Tournament, count_tournaments, gen_family, top_cycle
from . import sweep as _sweep
from .instances import alpha_instance, coalitions, delta_instance, lambda_instance, nonzero_submasks
from .report import (
    CONSTANT_PROPERTIES,
    INF,
    AuditReport,
    Constant,
    Witness,
    normalize_property,
)

log = logging.getLogger(__name__)

MAX_COALITION = 3


class WitnessVerificationError(ValueError):
    """A witness is malformed: wrong size, not adjacent, or refers to absent teams."""


def _check_n(n: int) -> None:
    if not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"n must be in [1, {ENUMERATION_CAP}], got {n}")


def _resolve_k(prop: str, k: int | None) -> int | None:
    if prop == "nm_lambda":
        if k not in (None, 2):
            raise ValueError("nm-lambda is defined for pairs only (k=2)")
        return 2
    if prop in CONSTANT_PROPERTIES:
        k = 2 if k is None else k
        if not 2 <= k <= MAX_COALITION:
            raise ValueError(f"coalition size k must be in [2, {MAX_COALITION}], got {k}")
        return k
    return None


def _verdict(prop: str, worst: Constant | None, threshold: Fraction | None, violations: int) -> bool:
    if prop not in CONSTANT_PROPERTIES:
        return violations == 0
    if threshold is None:
        return worst != INF
    return worst <= threshold


def _finalize(prop: str, worst: Constant | None, keys: list) -> tuple[Constant | None, list]:
    if prop not in CONSTANT_PROPERTIES:
        return None, keys
    if worst is None:
        return Fraction(0), []
    if prop == "snm_alpha" and worst < 0:
        return Fraction(0), []
    return worst, keys


def _exhaustive(
    rule: str | TournamentRule,
    prop: str,
    n: int,
    k: int | None = None,
    threshold: Fraction | None = None,
    jobs: int = 1,
) -> AuditReport:
    rule = get_rule(rule)
    prop = normalize_property(prop)
    k = _resolve_k(prop, k)
    _check_n(n)
    rule.check_size(n)
    part = _sweep.sweep(rule, prop, n, k or 2, jobs=jobs)
    worst, keys = _finalize(prop, part.worst, part.keys)
    witnesses = [
        Witness(Tournament(n, t), tuple(c), None if adj < 0 else Tournament(n, adj))
        for t, c, adj in keys
    ]
    report = AuditReport(
        rule=rule.name,
        property=prop,
        passed=_verdict(prop, worst, threshold, len(keys)),
        n=n,
        k=k,
        worst_constant=worst,
        threshold=threshold,
        witnesses=witnesses,
        checked=part.checked,
    )
    log.info("%s %s n=%d: %s", rule.name, prop, n, report.result)
    return report


def _explicit(
    rule: str | TournamentRule,
    prop: str,
    tournaments: Sequence[Tournament],
    k: int,
    threshold: Fraction | None,
    family: str | None,
) -> AuditReport:
    """Scan each listed tournament against all of its adjacent tournaments, exactly."""
    rule = get_rule(rule)
    memo: dict[tuple[int, int], object] = {}

    def dist(t: Tournament):
        key = (t.n, t.bits)
        if key not in memo:
            memo[key] = rule(t)
        return memo[key]

    worst: Constant | None = None
    keys: list[tuple[int, tuple[int, ...], int]] = []
    found: dict[tuple[int, tuple[int, ...], int], tuple[Tournament, Tournament]] = {}
    for pos, t in enumerate(tournaments):
        rule.check_size(t.n)
        first = dist(t)
        for coalition in coalitions(t.n, k):
            for sub in nonzero_submasks(t.coalition_mask(coalition)):
                other = Tournament(t.n, t.bits ^ sub)
                second = dist(other)
                if prop == "nm_lambda":
                    value = lambda_instance(first, second, *coalition)
                elif prop == "mnm_delta":
                    value = delta_instance(first, second, coalition)
                else:
                    value = alpha_instance(first, second, coalition)
                if value is None:
                    continue
                key = (pos, coalition, other.bits)
                if worst is None or value > worst:
                    worst, keys = value, [key]
                elif value == worst:
                    keys.append(key)
                found[key] = (t, other)
    worst, keys = _finalize(prop, worst, sorted(keys)[: _sweep.WITNESS_LIMIT])
    sizes = sorted({t.n for t in tournaments})
    return AuditReport(
        rule=rule.name,
        property=prop,
        passed=_verdict(prop, worst, threshold, 0),
        n=sizes[0] if len(sizes) == 1 else None,
        family=family,
        k=k,
        worst_constant=worst,
        threshold=threshold,
        witnesses=[Witness(found[key][0], key[1], found[key][1]) for key in keys],
        checked=len(tournaments),
    )


def _constant(prop, rule, scope, k, threshold, jobs, family):
    prop = normalize_property(prop)
    k = _resolve_k(prop, k)
    if isinstance(scope, int):
        return _exhaustive(rule, prop, scope, k=k, threshold=threshold, jobs=jobs)
    return _explicit(rule, prop, list(scope), k, threshold, family)


def check_condorcet_consistency(rule, n: int, jobs: int = 1) -> AuditReport:
    return _exhaustive(rule, "condorcet_consistency", n, jobs=jobs)


def check_top_cycle_consistency(rule, n: int, jobs: int = 1) -> AuditReport:
    return _exhaustive(rule, "top_cycle_consistency", n, jobs=jobs)


def check_monotonicity(rule, n: int, jobs: int = 1) -> AuditReport:
    return _exhaustive(rule, "monotonicity", n, jobs=jobs)


def minimal_lambda(
    rule,
    scope: int | Iterable[Tournament],
    threshold: Fraction | None = None,
    jobs: int = 1,
    family: str | None = None,
) -> AuditReport:
    """Smallest pairwise selfishness constant the rule satisfies on ``scope``.

    ``scope`` is either ``n`` (all tournaments on ``n`` teams) or a list of
    tournaments, each checked against all its pair-adjacent neighbours.
    """
    return _constant("nm_lambda", rule, scope, 2, threshold, jobs, family)


def minimal_delta(
    rule,
    k: int,
    scope: int | Iterable[Tournament],
    threshold: Fraction | None = None,
    jobs: int = 1,
    family: str | None = None,
) -> AuditReport:
    return _constant("mnm_delta", rule, scope, k, threshold, jobs, family)


def minimal_alpha(
    rule,
    k: int,
    scope: int | Iterable[Tournament],
    threshold: Fraction | None = None,
    jobs: int = 1,
    family: str | None = None,
) -> AuditReport:
    return _constant("snm_alpha", rule, scope, k, threshold, jobs, family)


def audit(
    rule,
    prop: str,
    n: int,
    k: int | None = None,
    threshold: Fraction | None = None,
    jobs: int = 1,
) -> AuditReport:
    """Exhaustive audit of any property on all tournaments of size ``n``."""
    prop = normalize_property(prop)
    if prop not in CONSTANT_PROPERTIES:
        if k is not None:
            raise ValueError(f"{prop} takes no coalition size")
        if threshold is not None:
            raise ValueError(f"{prop} takes no threshold")
    return _exhaustive(rule, prop, n, k=k, threshold=threshold, jobs=jobs)


def worst_on_family(rule, prop: str, family: str, ns: Iterable[int], k: int | None = None) -> list[AuditReport]:
    """Worst constant on each family member and its adjacent tournaments, one report per ``n``."""
    prop = normalize_property(prop)
    if prop not in CONSTANT_PROPERTIES:
        raise ValueError(f"{prop} has no worst-case constant")
    k = _resolve_k(prop, k)
    name = family.replace("-", "_")
    return [_explicit(rule, prop, [gen_family(name, n)], k, None, name) for n in ns]


def max_true_score_total(n: int) -> tuple[Fraction | None, Tournament | None]:
    """Largest summed true win score over tournaments without a Condorcet winner."""
    _check_n(n)
    best, arg = -1, None
    total = count_tournaments(n)
    for lo in range(0, total, _sweep.CHUNK):
        idx = np.arange(lo, min(lo + _sweep.CHUNK, total), dtype=np.int64)
        sums = NormalizedGeometricWinStrength.true_score_totals(n, idx)
        pos = int(sums.argmax())
        if sums[pos] > best:
            best, arg = int(sums[pos]), int(idx[pos])
    if arg is None or best < 0:
        return None, None
    return Fraction(best, 1 << (n - 2)), Tournament(n, arg)


# --------------------------------------------------------------------------
# witness re-verification


def _witness_value(rule: TournamentRule, prop: str, w: Witness) -> Constant | None:
    if w.adjacent is None:
        raise WitnessVerificationError("pair property witness lacks an adjacent tournament")
    t, other = w.tournament, w.adjacent
    if other.n != t.n or any(not 0 <= i < t.n for i in w.coalition) or len(set(w.coalition)) < 2:
        raise WitnessVerificationError("witness coalition or sizes are inconsistent")
    if t == other or not t.is_s_adjacent(other, w.coalition):
        raise WitnessVerificationError("witness tournaments are not adjacent on the coalition")
    first, second = rule(t), rule(other)
    if prop == "nm_lambda":
        if len(w.coalition) != 2:
            raise WitnessVerificationError("pairwise witness needs exactly two teams")
        return lambda_instance(first, second, *w.coalition)
    if prop == "mnm_delta":
        return delta_instance(first, second, w.coalition)
    return alpha_instance(first, second, w.coalition)


def _witness_violates(rule: TournamentRule, prop: str, w: Witness) -> bool:
    t = w.tournament
    if any(not 0 <= i < t.n for i in w.coalition):
        raise WitnessVerificationError("witness refers to teams outside the tournament")
    dist = rule(t)
    if prop == "condorcet_consistency":
        (i,) = w.coalition
        return t.condorcet_winner() == i and dist[i] != 1
    if prop == "top_cycle_consistency":
        (i,) = w.coalition
        return i not in top_cycle(t) and dist[i] > 0
    winner, loser = w.coalition
    if w.adjacent is None or w.adjacent != t.flip_match(winner, loser) or not t.beats(winner, loser):
        raise WitnessVerificationError("monotonicity witness is not a single lost match")
    return dist[winner] < rule(w.adjacent)[winner]


def reverify_witness(report: AuditReport, rule: TournamentRule | None = None) -> bool:
    """Re-evaluate the rule on every witness and compare with the reported outcome.

    Returns False when a witness no longer reproduces the reported constant
    or violation; raises :class:`WitnessVerificationError` when a witness is
    structurally invalid.  ``rule`` overrides the lookup of ``report.rule``
    for rules outside the registry.
    """
    rule = get_rule(report.rule if rule is None else rule)
    prop = normalize_property(report.property)
    if prop not in CONSTANT_PROPERTIES:
        if report.passed:
            return not report.witnesses
        return bool(report.witnesses) and all(_witness_violates(rule, prop, w) for w in report.witnesses)
    if report.worst_constant is None:
        return False
    if not report.witnesses:
        return report.worst_constant == 0
    values = [_witness_value(rule, prop, w) for w in report.witnesses]
    ok = all(v is not None and v == report.worst_constant for v in values)
    if report.threshold is not None:
        ok = ok and report.passed == (report.worst_constant <= report.threshold)
    return ok
