"""Slow reference scanner that follows the property definitions literally.

It enumerates tournaments as adjacency matrices, tests adjacency by
comparing matrices entry by entry, and compares every ordered pair of
distinct tournaments for every coalition.  Nothing is shared with the
optimised sweep beyond the rules themselves, so agreement between the two
is a meaningful check.  Quadratic in the number of tournaments; meant for
``n <= 4``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..rules import get_rule
from ..tournament import Tournament

INF = float("inf")


def all_matrices(n: int) -> list[tuple[tuple[int, ...], ...]]:
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for outcome in itertools.product((0, 1), repeat=len(pairs)):
        m = [[0] * n for _ in range(n)]
        for (i, j), first_wins in zip(pairs, outcome):
            if first_wins:
                m[i][j] = 1
            else:
                m[j][i] = 1
        out.append(tuple(tuple(row) for row in m))
    return out


def adjacent(m1, m2, coalition) -> bool:
    n = len(m1)
    return all(
        m1[a][b] == m2[a][b]
        for a in range(n)
        for b in range(n)
        if not (a in coalition and b in coalition)
    )


def minimal_dominant_set(m) -> frozenset[int]:
    """Smallest nonempty team set beating everyone outside it, by trying all subsets."""
    n = len(m)
    best = None
    for mask in range(1, 1 << n):
        inside = [i for i in range(n) if (mask >> i) & 1]
        outside = [j for j in range(n) if not (mask >> j) & 1]
        if all(m[i][j] for i in inside for j in outside):
            if best is None or len(inside) < len(best):
                best = inside
    return frozenset(best)


def _distributions(rule_name: str, n: int):
    rule = get_rule(rule_name)
    mats = all_matrices(n)
    return mats, [rule(Tournament.from_matrix(m)) for m in mats]


def brute_constant(rule_name: str, prop: str, n: int, k: int = 2):
    """Worst constant straight from the defining inequality; 0 if nothing constrains it."""
    mats, dists = _distributions(rule_name, n)
    sizes = [2] if prop == "nm_lambda" else range(2, k + 1)
    groups = [c for size in sizes for c in itertools.combinations(range(n), size)]
    worst = Fraction(0)
    for a, b in itertools.permutations(range(len(mats)), 2):
        for group in groups:
            if not adjacent(mats[a], mats[b], group):
                continue
            r, r2 = dists[a], dists[b]
            if prop == "nm_lambda":
                i, j = group
                lhs = r2[i] + r2[j] - r[i] - r[j]
                rhs = max(r[i] - r2[i], r[j] - r2[j])
                # need lhs <= lam * rhs
                if lhs <= 0:
                    continue
                needed = lhs / rhs if rhs > 0 else INF
            elif prop == "mnm_delta":
                top = sum(r[i] for i in group)
                bottom = sum(r2[i] for i in group)
                # need top <= delta * bottom
                if top == 0:
                    continue
                needed = top / bottom if bottom > 0 else INF
            elif prop == "snm_alpha":
                needed = sum(r[i] for i in group) - sum(r2[i] for i in group)
            else:
                raise ValueError(prop)
            worst = max(worst, needed)
    return worst


def brute_condorcet(rule_name: str, n: int) -> bool:
    mats, dists = _distributions(rule_name, n)
    for m, r in zip(mats, dists):
        for i in range(n):
            if all(m[i][j] for j in range(n) if j != i) and r[i] != 1:
                return False
    return True


def brute_monotone(rule_name: str, n: int) -> bool:
    mats, dists = _distributions(rule_name, n)
    for a, b in itertools.permutations(range(len(mats)), 2):
        for i, j in itertools.permutations(range(n), 2):
            if mats[a][i][j] and not mats[b][i][j] and adjacent(mats[a], mats[b], (i, j)):
                if dists[a][i] < dists[b][i]:
                    return False
    return True


def brute_top_cycle_consistent(rule_name: str, n: int) -> bool:
    mats, dists = _distributions(rule_name, n)
    for m, r in zip(mats, dists):
        cycle = minimal_dominant_set(m)
        if any(r[i] > 0 for i in range(n) if i not in cycle):
            return False
    return True
