"""Per-instance manipulability constants for one ordered pair of adjacent tournaments.

``first`` is the distribution on the tournament ``T`` and ``second`` the one
on the adjacent ``T'``.  A return value of ``None`` means the instance puts
no constraint on the constant.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

from ..rules import WinnerDistribution
from .report import INF, Constant


def lambda_instance(
    first: WinnerDistribution, second: WinnerDistribution, i: int, j: int
) -> Constant | None:
    """Smallest ``lam`` with ``gain <= lam * drop`` when moving from ``T`` to ``T'``."""
    gain = (second[i] + second[j]) - (first[i] + first[j])
    if gain <= 0:
        return None
    drop = max(first[i] - second[i], first[j] - second[j])
    if drop <= 0:
        return INF
    return gain / drop


def delta_instance(
    first: WinnerDistribution, second: WinnerDistribution, coalition: Sequence[int]
) -> Constant | None:
    """Ratio of the coalition's mass on ``T`` to its mass on ``T'``."""
    num = first.total(coalition)
    if num == 0:
        return None
    den = second.total(coalition)
    if den == 0:
        return INF
    return num / den


def alpha_instance(
    first: WinnerDistribution, second: WinnerDistribution, coalition: Sequence[int]
) -> Fraction:
    return first.total(coalition) - second.total(coalition)


def coalitions(n: int, k: int) -> list[tuple[int, ...]]:
    """All coalitions of 2..k teams, in lexicographic tuple order."""
    out: list[tuple[int, ...]] = []
    for size in range(2, k + 1):
        out.extend(itertools.combinations(range(n), size))
    return sorted(out)


def nonzero_submasks(mask: int) -> Iterator[int]:
    sub = mask
    subs = []
    while sub:
        subs.append(sub)
        sub = (sub - 1) & mask
    return iter(sorted(subs))
