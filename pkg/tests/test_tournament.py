import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournament_rules import Tournament, TournamentParseError, enumerate_all, gen_family, top_cycle
from tournament_rules.audit.bruteforce import minimal_dominant_set
from tournament_rules.tournament import count_tournaments, is_dominant, num_pairs


@st.composite
def tournaments(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << num_pairs(n)) - 1))
    return Tournament(n, bits)


def test_beats_on_cycle(cycle3):
    assert cycle3.beats(0, 1)
    assert not cycle3.beats(1, 0)
    assert cycle3.beats(1, 2) and cycle3.beats(2, 0)


@pytest.mark.parametrize("i, j", [(0, 0), (0, 3), (-1, 1)])
def test_beats_rejects_bad_teams(cycle3, i, j):
    with pytest.raises(ValueError):
        cycle3.beats(i, j)


def test_outdegrees():
    assert gen_family("cycle3").outdegrees == (1, 1, 1)
    assert gen_family("transitive", 4).outdegrees == (3, 2, 1, 0)
    assert gen_family("superman_kryptonite", 5).outdegrees == (3, 3, 2, 1, 1)
    with pytest.raises(ValueError):
        gen_family("cycle3").outdegree(3)


def test_defeated_sets(cycle3):
    assert cycle3.defeated_set(0) == {1}
    assert gen_family("transitive", 5).defeated_set(0) == {1, 2, 3, 4}
    sk = gen_family("superman_kryptonite", 5)
    assert sk.defeated_set(4) == {0}
    assert sk.defeated_set(0) == {1, 2, 3}


def test_flip_makes_condorcet_winner(cycle3):
    flipped = cycle3.flip_match(0, 1)
    assert flipped.outdegrees == (0, 2, 1)
    assert flipped.condorcet_winner() == 1
    assert flipped.flip_match(1, 0) == cycle3
    with pytest.raises(ValueError):
        cycle3.flip_match(2, 2)


def test_bracket_pair_pair_is_single_flip(bracket_pair):
    t, t2 = bracket_pair
    assert t2 == Tournament.from_wins(4, {1: [0, 2], 2: [0, 3], 3: [0, 1]})
    assert t.is_s_adjacent(t2, {0, 1})
    assert not t.is_s_adjacent(t2, {2, 3})


def test_s_adjacent_variants(cycle3):
    variants = cycle3.s_adjacent_variants({0, 1})
    assert len(variants) == 2
    assert set(variants) == {cycle3, cycle3.flip_match(0, 1)}
    t = gen_family("random", 6, seed=11)
    triple = t.s_adjacent_variants({1, 3, 4})
    assert len(triple) == 8 == len(set(triple))
    assert t in triple
    for other in triple:
        for i, j in itertools.combinations(range(6), 2):
            if not {i, j} <= {1, 3, 4}:
                assert other.beats(i, j) == t.beats(i, j)
    with pytest.raises(ValueError):
        t.s_adjacent_variants({2})


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 8), (4, 64), (6, 32768)])
def test_enumeration_counts(n, expected):
    assert count_tournaments(n) == expected
    if n <= 4:
        seen = list(enumerate_all(n))
        assert len(seen) == len(set(seen)) == expected


def test_enumerate_all_partitions_and_cap():
    whole = list(enumerate_all(4))
    assert list(enumerate_all(4, 0, 20)) + list(enumerate_all(4, 20)) == whole
    with pytest.raises(ValueError):
        next(enumerate_all(9))


def test_three_team_cycles():
    no_winner = [t for t in enumerate_all(3) if t.condorcet_winner() is None]
    assert len(no_winner) == 2
    assert all(top_cycle(t) == {0, 1, 2} for t in no_winner)


def test_families():
    assert gen_family("transitive", 4).condorcet_winner() == 0
    assert gen_family("random", 6, seed=7) == gen_family("random", 6, seed=7)
    assert gen_family("superman-kryptonite", 9).outdegrees[0] == 7
    for bad in [("nope", 4, None), ("cycle3", 4, None), ("superman_kryptonite", 2, None), ("random", 5, None)]:
        with pytest.raises(ValueError):
            gen_family(*bad)


def test_top_cycle_examples(bracket_pair):
    t, t2 = bracket_pair
    assert top_cycle(gen_family("transitive", 5)) == {0}
    assert top_cycle(gen_family("cycle3")) == {0, 1, 2}
    assert top_cycle(t2) == {1, 2, 3}
    assert top_cycle(t) == {0, 1, 2, 3}
    assert top_cycle(Tournament(1)) == {0}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_top_cycle_matches_subset_search(n):
    for t in enumerate_all(n):
        assert top_cycle(t) == minimal_dominant_set(t.matrix())


@given(tournaments())
def test_top_cycle_dominant_and_minimal(t):
    cycle = top_cycle(t)
    assert cycle and is_dominant(t, cycle)
    assert len(cycle) != 2
    # the member with fewest internal wins cannot be dropped
    if len(cycle) > 1:
        weakest = min(cycle, key=lambda i: len(t.defeated_set(i) & cycle))
        assert not is_dominant(t, cycle - {weakest})


@given(tournaments(min_n=2))
def test_antisymmetry_and_degree_sum(t):
    for i, j in itertools.permutations(range(t.n), 2):
        assert t.beats(i, j) != t.beats(j, i)
    assert sum(t.outdegrees) == num_pairs(t.n)


@given(tournaments(min_n=2), st.data())
def test_flip_involution(t, data):
    i, j = data.draw(st.lists(st.integers(0, t.n - 1), min_size=2, max_size=2, unique=True))
    assert t.flip_match(i, j).flip_match(i, j) == t
    assert set(t.s_adjacent_variants({i, j})) == {t, t.flip_match(i, j)}


def _cycle_growth_holds(t, i, j):
    """With i beating j in t: if i stays in the top cycle after losing, no member leaves."""
    before = top_cycle(t)
    after = top_cycle(t.flip_match(i, j))
    if i not in before or i not in after:
        return True
    return before <= after


@settings(max_examples=300)
@given(tournaments(min_n=3, max_n=7), st.data())
def test_top_cycle_keeps_members_when_one_loses(t, data):
    i = data.draw(st.sampled_from(sorted(top_cycle(t))))
    beaten = sorted(t.defeated_set(i))
    if beaten:
        assert _cycle_growth_holds(t, i, data.draw(st.sampled_from(beaten)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_top_cycle_growth_exhaustive(n):
    for t in enumerate_all(n):
        for i in range(n):
            for j in t.defeated_set(i):
                assert _cycle_growth_holds(t, i, j)


def test_top_cycle_can_collapse_when_member_drops_out():
    # team 0's only win is over 4; losing it hands 4 every match
    t = Tournament(6, 17000)
    assert top_cycle(t) == set(range(6))
    assert top_cycle(t.flip_match(0, 4)) == {4}


@given(tournaments())
def test_text_round_trip(t):
    assert Tournament.parse(t.to_text()) == t
    assert Tournament.from_rows(t.rows()) == t


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("x\n", 1, 1),
        ("3\n0 1 0\n0 0 1\n", 4, 1),
        ("3\n0 1 0\n0 0 1\n1 0 7\n", 4, 5),
        ("3\n1 1 0\n0 0 1\n1 0 0\n", 2, 1),
        ("3\n0 1 0\n1 0 1\n1 0 0\n", 3, 1),
        ("2\n0 1 1\n0 0\n", 2, 1),
    ],
)
def test_parse_errors_locate_problem(text, line, column):
    with pytest.raises(TournamentParseError) as info:
        Tournament.parse(text)
    assert (info.value.line, info.value.column) == (line, column)
