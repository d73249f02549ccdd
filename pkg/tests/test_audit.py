import json
from fractions import Fraction as F

import pytest

from tournament_rules import RULES, enumerate_all, gen_family, top_cycle
from tournament_rules.audit import (
    INF,
    AuditReport,
    WitnessVerificationError,
    audit,
    check_condorcet_consistency,
    check_monotonicity,
    check_top_cycle_consistency,
    minimal_alpha,
    minimal_delta,
    minimal_lambda,
    reverify_witness,
)
from tournament_rules.audit import bruteforce, sweep
from tournament_rules.audit.report import Witness, parse_rational
from tournament_rules.rules import TournamentRule


class AlwaysUniform(TournamentRule):
    """Ignores the matches entirely; deliberately not Condorcet consistent."""

    name = "always-uniform"

    def weights(self, t):
        return (1,) * t.n, t.n


ALWAYS_UNIFORM = AlwaysUniform()


def rule_sizes(name):
    return [4] if name == "rseb" else [3, 4]


# --- boolean properties -----------------------------------------------------


@pytest.mark.parametrize("name", ["ngwcs", "ngwss", "tcc-ngwcs", "trivial-uniform"])
def test_condorcet_consistency_passes(name):
    report = check_condorcet_consistency(name, 5)
    assert report.passed and report.checked == 1024
    assert report.worst_constant is None and not report.witnesses


def test_broken_rule_fails_condorcet_consistency():
    report = check_condorcet_consistency(ALWAYS_UNIFORM, 3)
    assert not report.passed
    assert report.witnesses
    witness = report.witnesses[0]
    assert witness.tournament.condorcet_winner() == witness.coalition[0]
    assert sorted(witness.tournament.outdegrees) == [0, 1, 2]
    assert reverify_witness(report, ALWAYS_UNIFORM)


def test_top_cycle_consistency():
    assert check_top_cycle_consistency("tcc-ngwcs", 5).passed
    fail = check_top_cycle_consistency("ngwcs", 4)
    assert not fail.passed
    w = fail.witnesses[0]
    assert w.coalition[0] not in top_cycle(w.tournament)
    assert reverify_witness(fail)
    assert check_top_cycle_consistency("trivial-uniform", 3).passed
    four = check_top_cycle_consistency("trivial-uniform", 4)
    assert not four.passed
    loser = four.witnesses[0].coalition[0]
    assert four.witnesses[0].tournament.outdegree(loser) == 0


@pytest.mark.parametrize("name", ["ngwcs", "ngwss", "tcc-ngwcs"])
def test_monotonicity_six(name):
    assert check_monotonicity(name, 6).passed


def test_monotonicity_flags_a_rule_that_rewards_losing():
    class Contrarian(TournamentRule):
        name = "contrarian"

        def weights(self, t):
            scores = tuple(1 << (t.n - 1 - d) for d in t.outdegrees)
            return scores, sum(scores)

    contrarian = Contrarian()
    report = check_monotonicity(contrarian, 3)
    assert not report.passed
    assert reverify_witness(report, contrarian)


# --- worst-case constants -----------------------------------------------------


def test_trivial_lambda_values():
    assert minimal_lambda("trivial-uniform", 3).worst_constant == 1
    assert minimal_lambda("trivial-uniform", 5).worst_constant == 3


def test_ngwss_lambda_bound():
    for n in (3, 4, 5, 6):
        assert minimal_lambda("ngwss", n, threshold=F(11)).passed


def test_ngwcs_delta_values():
    three = minimal_delta("ngwcs", 2, 3)
    assert three.worst_constant == F(3, 2)
    assert all(w.adjacent.condorcet_winner() is None for w in three.witnesses)
    for n in (4, 5, 6):
        assert minimal_delta("ngwcs", 2, n).worst_constant <= F(7, 2)


def test_rseb_delta_infinite(bracket_pair):
    report = minimal_delta("rseb", 2, 4)
    assert report.worst_constant == INF and not report.passed
    t, t2 = bracket_pair
    explicit = minimal_delta("rseb", 2, [t2])
    assert explicit.worst_constant == INF
    assert reverify_witness(explicit)
    assert any(w.adjacent == t and w.coalition == (0, 1) for w in explicit.witnesses)


def test_tcc_delta_bound():
    for n in (3, 4, 5, 6):
        assert minimal_delta("tcc-ngwcs", 2, n, threshold=F(5)).passed


def test_alpha_values():
    assert minimal_alpha(ALWAYS_UNIFORM, 2, 4).worst_constant == 0
    assert minimal_alpha(ALWAYS_UNIFORM, 3, 4).worst_constant == 0
    assert minimal_alpha("trivial-uniform", 2, 3).worst_constant == F(1, 3)
    assert minimal_alpha("ngwcs", 2, 3).worst_constant == F(1, 3)


def test_family_lambda_grows_for_ngwcs():
    values = [minimal_lambda("ngwcs", [gen_family("superman_kryptonite", n)]).worst_constant for n in (8, 16)]
    assert values == [63, 16383]


def test_explicit_scope_matches_exhaustive():
    for name in ("ngwcs", "ngwss", "trivial-uniform"):
        everything = list(enumerate_all(4))
        assert minimal_lambda(name, everything).worst_constant == minimal_lambda(name, 4).worst_constant
        assert minimal_delta(name, 3, everything).worst_constant == minimal_delta(name, 3, 4).worst_constant


def test_usage_errors():
    with pytest.raises(ValueError):
        minimal_delta("ngwcs", 4, 4)
    with pytest.raises(ValueError):
        audit("ngwcs", "nm-lambda", 4, k=3)
    with pytest.raises(ValueError):
        audit("nope", "monotonicity", 4)
    with pytest.raises(ValueError):
        audit("ngwcs", "fairness", 4)
    with pytest.raises(ValueError):
        audit("ngwcs", "monotonicity", 9)
    with pytest.raises(ValueError):
        audit("rseb", "mnm-delta", 5)


# --- invariants ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["ngwcs", "ngwss", "tcc-ngwcs", "trivial-uniform"])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_simplified_lambda_agrees_for_monotone_rules(name, n):
    rule = RULES[name]
    cache = {}

    def r(t):
        if t.bits not in cache:
            cache[t.bits] = rule(t)
        return cache[t.bits]

    worst = F(0)
    for t in enumerate_all(n):
        for i in range(n):
            for j in t.defeated_set(i):
                t2 = t.flip_match(i, j)
                loss = r(t)[i] - r(t2)[i]
                gain_j = r(t2)[j] - r(t)[j]
                if loss > 0:
                    worst = max(worst, gain_j / loss - 1)
                elif gain_j > 0:
                    worst = INF
    assert minimal_lambda(name, n).worst_constant == worst


@pytest.mark.parametrize("name", ["ngwcs", "ngwss", "tcc-ngwcs", "trivial-uniform"])
def test_delta_at_least_one_when_constrained(name):
    for k in (2, 3):
        assert minimal_delta(name, k, 4).worst_constant >= 1
    assert minimal_delta(ALWAYS_UNIFORM, 2, 4).worst_constant == 1


@pytest.mark.parametrize("prop", ["nm_lambda", "mnm_delta", "snm_alpha"])
def test_threshold_coherence(prop):
    worst = audit("ngwcs", prop, 4).worst_constant
    assert audit("ngwcs", prop, 4, threshold=worst).passed
    assert not audit("ngwcs", prop, 4, threshold=worst - F(1, 1000)).passed


@pytest.mark.parametrize("name", sorted(RULES))
@pytest.mark.parametrize("prop", ["nm_lambda", "mnm_delta", "snm_alpha"])
def test_matches_brute_force(name, prop):
    for n in rule_sizes(name):
        for k in ([2] if prop == "nm_lambda" else [2, 3]):
            assert audit(name, prop, n, k=k if prop != "nm_lambda" else None).worst_constant == \
                bruteforce.brute_constant(name, prop, n, k)


@pytest.mark.parametrize("name", sorted(RULES))
def test_boolean_checks_match_brute_force(name):
    for n in rule_sizes(name):
        assert check_condorcet_consistency(name, n).passed == bruteforce.brute_condorcet(name, n)
        assert check_monotonicity(name, n).passed == bruteforce.brute_monotone(name, n)
        assert check_top_cycle_consistency(name, n).passed == bruteforce.brute_top_cycle_consistent(name, n)


def test_partitioned_sweeps_merge_to_the_same_answer(monkeypatch):
    rule = RULES["ngwss"]
    whole = sweep.sweep_range(rule, "nm_lambda", 6, 2, 0, 32768)
    parts = [sweep.sweep_range(rule, "nm_lambda", 6, 2, lo, lo + 4096) for lo in range(0, 32768, 4096)]
    merged = sweep.Partial()
    for part in reversed(parts):
        merged = merged.merge(part)
    assert (merged.worst, merged.keys, merged.checked) == (whole.worst, whole.keys, whole.checked)

    monkeypatch.setattr(sweep, "CHUNK", 1024)
    single = audit("ngwcs", "mnm-delta", 6, k=3)
    parallel = audit("ngwcs", "mnm-delta", 6, k=3, jobs=2)
    assert parallel.to_dict() == single.to_dict()


# --- reports and witnesses --------------------------------------------------


def test_report_json_round_trip_and_reverify():
    for report in (
        minimal_lambda("ngwss", 4),
        minimal_delta("rseb", 2, 4),
        check_monotonicity("ngwcs", 4),
        check_top_cycle_consistency("ngwcs", 4),
    ):
        data = json.loads(report.to_json())
        assert set(data) >= {"rule", "property", "k", "n", "result", "worst_constant",
                             "worst_constant_float", "witnesses", "checked"}
        again = AuditReport.from_json(report.to_json())
        assert again.to_dict() == report.to_dict()
        assert reverify_witness(again)
    assert json.loads(minimal_delta("rseb", 2, 4).to_json())["worst_constant"] == "inf"
    assert json.loads(minimal_delta("ngwcs", 2, 3).to_json())["worst_constant"] == {"num": 3, "den": 2}


def test_reverify_detects_altered_constant():
    report = minimal_delta("ngwcs", 2, 4)
    assert reverify_witness(report)
    report.worst_constant += F(1, 7)
    assert not reverify_witness(report)


def test_reverify_rejects_corrupt_witness(bracket_pair):
    report = minimal_lambda("ngwss", 4)
    t, _ = bracket_pair
    report.witnesses = [Witness(t, (0, 1), t.flip_match(2, 3))]
    with pytest.raises(WitnessVerificationError):
        reverify_witness(report)
    report.witnesses = [Witness(t, (0, 1), None)]
    with pytest.raises(WitnessVerificationError):
        reverify_witness(report)


def test_bracket_pair_rseb_witness_reverifies(bracket_pair):
    t, t2 = bracket_pair
    report = AuditReport("rseb", "mnm_delta", passed=False, n=4, k=2, worst_constant=INF,
                         witnesses=[Witness(t2, (0, 1), t)])
    assert reverify_witness(report)


def test_witness_tie_break_is_lexicographic():
    report = minimal_lambda("trivial-uniform", 4)
    keys = [(w.tournament.bits, w.coalition, w.adjacent.bits) for w in report.witnesses]
    assert keys == sorted(keys)
    brute = []
    for t in enumerate_all(4):
        for i, j in [(a, b) for a in range(4) for b in range(a + 1, 4)]:
            t2 = t.flip_match(i, j)
            r, r2 = RULES["trivial-uniform"](t), RULES["trivial-uniform"](t2)
            gain = r2[i] + r2[j] - r[i] - r[j]
            drop = max(r[i] - r2[i], r[j] - r2[j])
            if gain > 0 and drop > 0 and gain / drop == report.worst_constant:
                brute.append((t.bits, (i, j), t2.bits))
    assert keys == sorted(brute)[: len(keys)]


def test_parse_rational():
    assert parse_rational("7/2") == F(7, 2)
    assert parse_rational("3.5") == F(7, 2)
    with pytest.raises(ValueError):
        parse_rational("x/2")
