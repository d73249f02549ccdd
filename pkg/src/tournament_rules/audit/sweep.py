"""Exhaustive, vectorised sweeps over every tournament on ``n`` teams.

A sweep covers the tournament indices ``[start, stop)``.  For each index
``T`` and each coalition it pairs ``T`` with every ``T ^ mask`` where ``mask``
is a nonempty set of the coalition's internal match bits, so every ordered
adjacent pair is visited exactly once across the full index range.

All arithmetic on probabilities is integer arithmetic on the rules' common
denominator form.  Maxima of ratios are located by a float64 screen and then
settled exactly: numerators and denominators stay below 2**53, so each float
quotient is correctly rounded and rounding is monotone, which means the exact
maximum is among the entries whose float equals the float maximum.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..rules import TournamentRule, index_bits, outdegree_table
from ..tournament import count_tournaments, pair_bit, pair_list, top_cycle, Tournament
from .instances import coalitions, nonzero_submasks
from .report import INF, Constant

WITNESS_LIMIT = 5
CHUNK = 1 << 17
_FLOAT_EXACT = 1 << 53

# (tournament index, coalition, adjacent index or -1)
Key = tuple[int, tuple[int, ...], int]


@dataclass
class Partial:
    """Result of sweeping one index range; merge is associative and commutative."""

    worst: Constant | None = None
    keys: list[Key] = field(default_factory=list)
    checked: int = 0

    def merge(self, other: Partial) -> Partial:
        checked = self.checked + other.checked
        if other.worst is not None and (self.worst is None or other.worst > self.worst):
            return Partial(other.worst, list(other.keys), checked)
        if self.worst is None and other.worst is None or self.worst == other.worst:
            keys = sorted(set(self.keys) | set(other.keys))[:WITNESS_LIMIT]
            return Partial(self.worst, keys, checked)
        return Partial(self.worst, list(self.keys), checked)


@lru_cache(maxsize=4)
def rule_table(rule: TournamentRule, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Weights of ``rule`` on every tournament of size ``n``; the per-process memo."""
    total = count_tournaments(n)
    nums = np.empty((total, n), dtype=np.int64)
    dens = np.empty(total, dtype=np.int64)
    for lo in range(0, total, CHUNK):
        hi = min(lo + CHUNK, total)
        nums[lo:hi], dens[lo:hi] = rule.weight_table(n, np.arange(lo, hi, dtype=np.int64))
    if dens.size and dens.max() ** 2 * 2 >= _FLOAT_EXACT:
        raise OverflowError(f"denominators of {rule.name} at n={n} too large for the sweep")
    return nums, dens


@lru_cache(maxsize=2)
def top_cycle_table(n: int) -> np.ndarray:
    """Bitmask of top-cycle members for every tournament index."""
    out = np.empty(count_tournaments(n), dtype=np.int64)
    for bits in range(len(out)):
        out[bits] = sum(1 << i for i in top_cycle(Tournament(n, bits)))
    return out


def _exact_max(num: np.ndarray, den: np.ndarray) -> tuple[Fraction, np.ndarray]:
    """Exact max of ``num/den`` (``den > 0``) and the positions attaining it."""
    ratio = num.astype(np.float64) / den.astype(np.float64)
    cand = np.flatnonzero(ratio == ratio.max())
    g = np.gcd(num[cand], den[cand])
    pairs = np.stack([num[cand] // g, den[cand] // g], axis=1)
    distinct = np.unique(pairs, axis=0)
    best = max(Fraction(int(a), int(b)) for a, b in distinct)
    hit = (pairs[:, 0] == best.numerator) & (pairs[:, 1] == best.denominator)
    return best, cand[hit]


def _block_constant(
    finite_num: np.ndarray,
    finite_den: np.ndarray,
    finite: np.ndarray,
    infinite: np.ndarray,
) -> tuple[Constant | None, np.ndarray]:
    if infinite.any():
        return INF, np.flatnonzero(infinite)[:WITNESS_LIMIT]
    if not finite.any():
        return None, np.empty(0, dtype=np.int64)
    pos = np.flatnonzero(finite)
    best, hit = _exact_max(finite_num[pos], finite_den[pos])
    return best, pos[hit][:WITNESS_LIMIT]


def _constant_block(prop: str, nums, dens, idx, coalition, mask) -> Partial:
    partner = idx ^ mask
    a, b = nums[idx], nums[partner]
    da, db = dens[idx], dens[partner]
    cols = list(coalition)
    if prop == "nm_lambda":
        i, j = cols
        gain = (b[:, i] + b[:, j]) * da - (a[:, i] + a[:, j]) * db
        drop = np.maximum(a[:, i] * db - b[:, i] * da, a[:, j] * db - b[:, j] * da)
        constraining = gain > 0
        infinite = constraining & (drop <= 0)
        finite = constraining & (drop > 0)
        num, den = gain, np.where(finite, drop, 1)
    elif prop == "mnm_delta":
        num = a[:, cols].sum(axis=1) * db
        den_raw = b[:, cols].sum(axis=1) * da
        constraining = num > 0
        infinite = constraining & (den_raw == 0)
        finite = constraining & (den_raw > 0)
        den = np.where(finite, den_raw, 1)
    elif prop == "snm_alpha":
        num = a[:, cols].sum(axis=1) * db - b[:, cols].sum(axis=1) * da
        den = da * db
        finite = np.ones(len(idx), dtype=bool)
        infinite = np.zeros(len(idx), dtype=bool)
    else:
        raise ValueError(prop)
    worst, pos = _block_constant(num, den, finite, infinite)
    keys = [(int(idx[p]), coalition, int(partner[p])) for p in pos]
    return Partial(worst, keys)


def _condorcet_block(n, nums, dens, idx) -> Partial:
    deg = outdegree_table(n, index_bits(n, idx))
    is_cw = deg == n - 1
    rows = np.flatnonzero(is_cw.any(axis=1))
    teams = is_cw[rows].argmax(axis=1)
    bad = nums[idx[rows], teams] != dens[idx[rows]]
    keys = [(int(idx[r]), (int(w),), -1) for r, w in zip(rows[bad], teams[bad])]
    return Partial(None, keys[:WITNESS_LIMIT])


def _top_cycle_block(n, nums, idx) -> Partial:
    members = top_cycle_table(n)[idx]
    keys: list[Key] = []
    for i in range(n):
        bad = ((members >> i) & 1 == 0) & (nums[idx, i] > 0)
        keys.extend((int(t), (i,), -1) for t in idx[bad][:WITNESS_LIMIT])
    return Partial(None, sorted(keys)[:WITNESS_LIMIT])


def _monotonicity_block(n, nums, dens, idx) -> Partial:
    keys: list[Key] = []
    for p, (i, j) in enumerate(pair_list(n)):
        partner = idx ^ (1 << p)
        won = ((idx >> p) & 1).astype(bool)
        winner = np.where(won, i, j)
        a = nums[idx, winner]
        b = nums[partner, winner]
        bad = np.flatnonzero(a * dens[partner] < b * dens[idx])[:WITNESS_LIMIT]
        for r in bad:
            w = int(winner[r])
            keys.append((int(idx[r]), (w, i + j - w), int(partner[r])))
    return Partial(None, sorted(keys)[:WITNESS_LIMIT])


def sweep_range(rule: TournamentRule, prop: str, n: int, k: int, start: int, stop: int) -> Partial:
    """Sweep the tournament indices ``[start, stop)`` for one property."""
    nums, dens = rule_table(rule, n)
    result = Partial()
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        part = Partial()
        if prop == "condorcet_consistency":
            part = _condorcet_block(n, nums, dens, idx)
        elif prop == "top_cycle_consistency":
            part = _top_cycle_block(n, nums, idx)
        elif prop == "monotonicity":
            part = _monotonicity_block(n, nums, dens, idx)
        else:
            for coalition in coalitions(n, k):
                mask = sum(1 << pair_bit(n, x, y) for x, y in itertools.combinations(coalition, 2))
                for sub in nonzero_submasks(mask):
                    part = part.merge(_constant_block(prop, nums, dens, idx, coalition, sub))
        part.checked = len(idx)
        result = result.merge(part)
    return result


def _sweep_args(args):
    return sweep_range(*args)


def sweep(rule: TournamentRule, prop: str, n: int, k: int = 2, jobs: int = 1) -> Partial:
    """Sweep all tournaments on ``n`` teams, optionally across ``jobs`` processes.

    The outcome does not depend on ``jobs``.
    """
    total = count_tournaments(n)
    if jobs <= 1 or total < 2 * CHUNK:
        return sweep_range(rule, prop, n, k, 0, total)
    # fill the memo before forking so workers inherit it
    rule_table(rule, n)
    if prop == "top_cycle_consistency":
        top_cycle_table(n)
    parts = max(jobs, total // (4 * CHUNK))
    bounds = [total * q // parts for q in range(parts + 1)]
    tasks = [(rule, prop, n, k, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    result = Partial()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_sweep_args, tasks):
            result = result.merge(part)
    return result
