"""Tournament rules: exact maps from a tournament to a winner distribution.

Every rule offers two evaluation routes.  Calling the rule returns a
:class:`WinnerDistribution` of :class:`~fractions.Fraction` values computed
straight from the scoring formulas.  :meth:`TournamentRule.weights` returns
integer numerators over one common denominator, which is what the exhaustive
audits consume; :meth:`TournamentRule.weight_table` evaluates that form over
a whole array of tournament indices at once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .tournament import Tournament, num_pairs, pair_list, top_cycle

HALF = Fraction(1, 2)

#: Max size accepted by the bracket rule; beyond this the n! playouts are out of reach.
RSEB_MAX_N = 8


class UnsupportedSizeError(ValueError):
    """The rule is not defined for this number of teams."""


@dataclass(frozen=True)
class WinnerDistribution:
    """Per-team winning probabilities; non-negative and summing to exactly 1."""

    probabilities: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        probs = tuple(Fraction(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if any(p < 0 for p in probs):
            raise ValueError(f"negative probability in {probs}")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")

    @classmethod
    def from_weights(cls, nums: Sequence[int], den: int) -> WinnerDistribution:
        return cls(tuple(Fraction(int(a), int(den)) for a in nums))

    def __getitem__(self, i: int) -> Fraction:
        return self.probabilities[i]

    def __len__(self) -> int:
        return len(self.probabilities)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probabilities)

    def total(self, coalition: Iterable[int]) -> Fraction:
        return sum((self.probabilities[i] for i in coalition), Fraction(0))

    def relabel(self, perm: Sequence[int]) -> WinnerDistribution:
        """Distribution with team ``perm[i]`` holding what team ``i`` held."""
        out = [Fraction(0)] * len(self)
        for i, p in enumerate(self.probabilities):
            out[perm[i]] = p
        return WinnerDistribution(tuple(out))


@dataclass(frozen=True)
class ScoreVectors:
    """Simple win scores and, when requested, true win scores."""

    simple: tuple[Fraction, ...]
    true_score: tuple[Fraction, ...] | None = None


def simple_win_scores(t: Tournament) -> ScoreVectors:
    n = t.n
    return ScoreVectors(tuple(HALF ** ((n - 2) - d) for d in t.outdegrees))


def true_win_scores(t: Tournament) -> ScoreVectors:
    s = simple_win_scores(t).simple
    true_score = tuple(2 * s[i] + sum((s[j] for j in t.defeated_set(i)), Fraction(0)) for i in range(t.n))
    return ScoreVectors(s, true_score)


def _point_mass(n: int, i: int) -> tuple[tuple[int, ...], int]:
    return tuple(1 if k == i else 0 for k in range(n)), 1


# --------------------------------------------------------------------------
# vectorised helpers for weight tables


def index_bits(n: int, indices: np.ndarray) -> np.ndarray:
    """``(N, C(n,2))`` 0/1 array of match bits for each tournament index."""
    m = num_pairs(n)
    idx = np.asarray(indices, dtype=np.int64)
    return ((idx[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(np.int64)


def outdegree_table(n: int, bits: np.ndarray) -> np.ndarray:
    """Outdegrees ``(N, n)`` from a match-bit array."""
    pairs = pair_list(n)
    incidence = np.zeros((len(pairs), n), dtype=np.int64)
    losses_if_unset = np.zeros(n, dtype=np.int64)
    for p, (i, j) in enumerate(pairs):
        incidence[p, i] += 1
        incidence[p, j] -= 1
        losses_if_unset[j] += 1
    return bits @ incidence + losses_if_unset


def _condorcet_rows(n: int, deg: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Boolean row mask of tournaments with a Condorcet winner, and the point masses."""
    winner = deg == n - 1
    return winner.any(axis=1), winner.astype(np.int64)


class TournamentRule:
    """Interface shared by all rules; subclasses set ``name``."""

    name: str = ""

    def check_size(self, n: int) -> None:
        if n < 1:
            raise UnsupportedSizeError("a tournament has at least one team")

    def __call__(self, t: Tournament) -> WinnerDistribution:
        return WinnerDistribution.from_weights(*self.weights(t))

    def weights(self, t: Tournament) -> tuple[tuple[int, ...], int]:
        raise NotImplementedError

    def weight_table(self, n: int, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Integer numerators ``(N, n)`` and denominators ``(N,)`` for many tournaments."""
        self.check_size(n)
        idx = np.asarray(indices, dtype=np.int64)
        nums = np.empty((len(idx), n), dtype=np.int64)
        dens = np.empty(len(idx), dtype=np.int64)
        for row, bits in enumerate(idx.tolist()):
            a, d = self.weights(Tournament(n, bits))
            nums[row] = a
            dens[row] = d
        return nums, dens

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class NormalizedGeometricWinCount(TournamentRule):
    """Probability proportional to ``2 ** outdegree``; a Condorcet winner takes all."""

    name = "ngwcs"

    def __call__(self, t: Tournament) -> WinnerDistribution:
        s = simple_win_scores(t).simple
        for i, si in enumerate(s):
            if si == 2:
                return WinnerDistribution.from_weights(*_point_mass(t.n, i))
        total = sum(s)
        return WinnerDistribution(tuple(si / total for si in s))

    def weights(self, t):
        cw = t.condorcet_winner()
        if cw is not None:
            return _point_mass(t.n, cw)
        scores = tuple(1 << d for d in t.outdegrees)
        return scores, sum(scores)

    def weight_table(self, n, indices):
        self.check_size(n)
        deg = outdegree_table(n, index_bits(n, indices))
        has_cw, point = _condorcet_rows(n, deg)
        nums = np.left_shift(1, deg)
        nums[has_cw] = point[has_cw]
        return nums, nums.sum(axis=1)


class NormalizedGeometricWinStrength(TournamentRule):
    """Scores reward beating strong teams; mass left over is spread uniformly."""

    name = "ngwss"
    #: Upper bound on the summed true win scores when no Condorcet winner exists.
    TRUE_SCORE_BUDGET = 14

    def __call__(self, t: Tournament) -> WinnerDistribution:
        scores = true_win_scores(t)
        for i, si in enumerate(scores.simple):
            if si == 2:
                return WinnerDistribution.from_weights(*_point_mass(t.n, i))
        budget = self.TRUE_SCORE_BUDGET
        tt = scores.true_score
        residual = (1 - sum(tt) / budget) / t.n
        return WinnerDistribution(tuple(ti / budget + residual for ti in tt))

    def weights(self, t):
        n = t.n
        cw = t.condorcet_winner()
        if cw is not None:
            return _point_mass(n, cw)
        # n >= 3 here: with n <= 2 some team always wins every match
        s = [1 << d for d in t.outdegrees]
        tt = [2 * s[i] + sum(s[j] for j in t.defeated_set(i)) for i in range(n)]
        scale = self.TRUE_SCORE_BUDGET << (n - 2)
        total = sum(tt)
        return tuple(n * x + scale - total for x in tt), n * scale

    def weight_table(self, n, indices):
        self.check_size(n)
        bits = index_bits(n, indices)
        deg = outdegree_table(n, bits)
        has_cw, point = _condorcet_rows(n, deg)
        s = np.left_shift(1, deg)
        tt = 2 * s
        for p, (i, j) in enumerate(pair_list(n)):
            b = bits[:, p]
            tt[:, i] += b * s[:, j]
            tt[:, j] += (1 - b) * s[:, i]
        if n >= 3:
            scale = self.TRUE_SCORE_BUDGET << (n - 2)
            nums = n * tt + (scale - tt.sum(axis=1))[:, None]
            dens = np.full(len(nums), n * scale, dtype=np.int64)
        else:
            nums = point.copy()
            dens = np.ones(len(nums), dtype=np.int64)
        nums[has_cw] = point[has_cw]
        dens[has_cw] = 1
        return nums, dens

    @staticmethod
    def true_score_totals(n: int, indices: np.ndarray) -> np.ndarray:
        """Summed true win scores scaled by ``2**(n-2)``; rows with a Condorcet winner are -1."""
        bits = index_bits(n, indices)
        deg = outdegree_table(n, bits)
        has_cw, _ = _condorcet_rows(n, deg)
        s = np.left_shift(1, deg)
        beat_sum = np.zeros_like(s)
        for p, (i, j) in enumerate(pair_list(n)):
            b = bits[:, p]
            beat_sum[:, i] += b * s[:, j]
            beat_sum[:, j] += (1 - b) * s[:, i]
        total = (2 * s + beat_sum).sum(axis=1)
        total[has_cw] = -1
        return total


class TopCycleGeometricWinCount(TournamentRule):
    """The win-count rule played out on the top cycle alone; everyone else gets 0."""

    name = "tcc-ngwcs"

    def __call__(self, t: Tournament) -> WinnerDistribution:
        cycle = top_cycle(t)
        size = len(cycle)
        s = []
        for i in range(t.n):
            if i in cycle:
                d = len(t.defeated_set(i) & cycle)
                s.append(HALF ** ((size - 2) - d))
            else:
                s.append(Fraction(0))
        total = sum(s)
        return WinnerDistribution(tuple(si / total for si in s))

    def weights(self, t):
        cycle = top_cycle(t)
        inside = sum(1 << i for i in cycle)
        scores = tuple(
            1 << (t.win_masks[i] & inside).bit_count() if i in cycle else 0 for i in range(t.n)
        )
        return scores, sum(scores)


class RandomizedSingleEliminationBracket(TournamentRule):
    """Winner of a uniformly random leaf labeling of a balanced knockout bracket.

    Computed exactly by playing out all ``n!`` labelings.
    """

    name = "rseb"

    def check_size(self, n):
        if n < 1 or n & (n - 1) or n > RSEB_MAX_N:
            raise UnsupportedSizeError(
                f"single elimination brackets need n a power of two up to {RSEB_MAX_N}, got {n}"
            )

    def weights(self, t):
        n = t.n
        self.check_size(n)
        masks = t.win_masks
        wins = [0] * n
        for order in itertools.permutations(range(n)):
            field = list(order)
            while len(field) > 1:
                field = [
                    a if (masks[a] >> b) & 1 else b for a, b in zip(field[::2], field[1::2])
                ]
            wins[field[0]] += 1
        return tuple(wins), math.factorial(n)


class CondorcetElseUniform(TournamentRule):
    """A Condorcet winner if there is one, otherwise a uniformly random team."""

    name = "trivial-uniform"

    def weights(self, t):
        cw = t.condorcet_winner()
        if cw is not None:
            return _point_mass(t.n, cw)
        return (1,) * t.n, t.n

    def weight_table(self, n, indices):
        self.check_size(n)
        deg = outdegree_table(n, index_bits(n, indices))
        has_cw, point = _condorcet_rows(n, deg)
        nums = np.ones_like(deg)
        nums[has_cw] = point[has_cw]
        dens = np.full(len(nums), n, dtype=np.int64)
        dens[has_cw] = 1
        return nums, dens


RULES: dict[str, TournamentRule] = {
    rule.name: rule
    for rule in (
        NormalizedGeometricWinCount(),
        NormalizedGeometricWinStrength(),
        TopCycleGeometricWinCount(),
        RandomizedSingleEliminationBracket(),
        CondorcetElseUniform(),
    )
}


def get_rule(name: str | TournamentRule) -> TournamentRule:
    """Look a rule up by name; underscores and dashes are interchangeable."""
    if isinstance(name, TournamentRule):
        return name
    key = name.replace("_", "-")
    try:
        return RULES[key]
    except KeyError:
        raise ValueError(f"unknown rule {name!r}; expected one of {', '.join(RULES)}") from None


def ngwcs(t: Tournament) -> WinnerDistribution:
    return RULES["ngwcs"](t)


def ngwss(t: Tournament) -> WinnerDistribution:
    return RULES["ngwss"](t)


def tcc_rule(t: Tournament) -> WinnerDistribution:
    return RULES["tcc-ngwcs"](t)


def rseb(t: Tournament) -> WinnerDistribution:
    RULES["rseb"].check_size(t.n)
    return RULES["rseb"](t)


def trivial_uniform(t: Tournament) -> WinnerDistribution:
    return RULES["trivial-uniform"](t)
