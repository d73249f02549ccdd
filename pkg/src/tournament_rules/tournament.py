"""Round-robin tournaments on labeled teams.

A tournament on ``n`` teams is stored as one integer holding ``C(n, 2)`` bits,
one per unordered pair ``(i, j)`` with ``i < j``, pairs ordered
lexicographically.  Bit ``p`` set means the lower-indexed team of pair ``p``
won.  That integer is also the tournament's position in :func:`enumerate_all`,
so index ranges partition the space of all tournaments directly.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

#: Largest ``n`` accepted by :func:`enumerate_all` (2**28 tournaments).
ENUMERATION_CAP = 8

_TOKEN = re.compile(r"\S+")

FAMILIES = ("cycle3", "transitive", "superman_kryptonite", "random")


class TournamentParseError(ValueError):
    """Malformed tournament text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs ``(i, j)`` with ``i < j`` in bit order."""
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def _pair_bits(n: int) -> dict[tuple[int, int], int]:
    return {pair: p for p, pair in enumerate(pair_list(n))}


def pair_bit(n: int, i: int, j: int) -> int:
    """Bit position of the match between ``i`` and ``j`` (order-insensitive)."""
    if i > j:
        i, j = j, i
    return _pair_bits(n)[(i, j)]


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class Tournament:
    """Immutable complete tournament.

    ``bits`` is in ``[0, 2**C(n,2))``; see the module docstring for the layout.
    """

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"a tournament needs at least one team, got n={self.n}")
        if not 0 <= self.bits < (1 << num_pairs(self.n)):
            raise ValueError(f"bits {self.bits} out of range for n={self.n}")

    # construction -----------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Tournament:
        """Build from a 0/1 matrix with ``M[i][j] == 1`` iff ``i`` beats ``j``."""
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise ValueError("matrix must be square")
        bits = 0
        for p, (i, j) in enumerate(pair_list(n)):
            a, b = matrix[i][j], matrix[j][i]
            if a + b != 1 or a not in (0, 1) or b not in (0, 1):
                raise ValueError(f"entries ({i},{j}) and ({j},{i}) must be 0/1 and sum to 1")
            if a:
                bits |= 1 << p
        for i in range(n):
            if matrix[i][i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) must be 0")
        return cls(n, bits)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> Tournament:
        """Inverse of :meth:`rows`."""
        return cls.from_matrix([[int(c) for c in row] for row in rows])

    @classmethod
    def from_wins(cls, n: int, wins: dict[int, Iterable[int]]) -> Tournament:
        """Build from ``{team: teams it beats}``; every pair must be covered once."""
        matrix = [[0] * n for _ in range(n)]
        for i, beaten in wins.items():
            for j in beaten:
                matrix[i][j] = 1
        return cls.from_matrix(matrix)

    # queries ----------------------------------------------------------

    def _check_team(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise ValueError(f"team {i} out of range for n={self.n}")

    def beats(self, i: int, j: int) -> bool:
        self._check_team(i)
        self._check_team(j)
        if i == j:
            raise ValueError("a team does not play itself")
        bit = (self.bits >> pair_bit(self.n, i, j)) & 1
        return bool(bit) if i < j else not bit

    @cached_property
    def win_masks(self) -> tuple[int, ...]:
        """Per team, a bitmask over teams (bit ``j``) of the teams it beats."""
        masks = [0] * self.n
        for p, (i, j) in enumerate(pair_list(self.n)):
            if (self.bits >> p) & 1:
                masks[i] |= 1 << j
            else:
                masks[j] |= 1 << i
        return tuple(masks)

    @cached_property
    def outdegrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.win_masks)

    def outdegree(self, i: int) -> int:
        self._check_team(i)
        return self.outdegrees[i]

    def defeated_set(self, i: int) -> frozenset[int]:
        self._check_team(i)
        mask = self.win_masks[i]
        return frozenset(j for j in range(self.n) if (mask >> j) & 1)

    def condorcet_winner(self) -> int | None:
        for i, d in enumerate(self.outdegrees):
            if d == self.n - 1:
                return i
        return None

    # adjacency --------------------------------------------------------

    def flip_match(self, i: int, j: int) -> Tournament:
        self._check_team(i)
        self._check_team(j)
        if i == j:
            raise ValueError("a team does not play itself")
        return Tournament(self.n, self.bits ^ (1 << pair_bit(self.n, i, j)))

    def coalition_mask(self, coalition: Iterable[int]) -> int:
        """Bitmask of the matches internal to ``coalition``."""
        members = sorted(set(coalition))
        for i in members:
            self._check_team(i)
        mask = 0
        for i, j in itertools.combinations(members, 2):
            mask |= 1 << pair_bit(self.n, i, j)
        return mask

    def s_adjacent_variants(self, coalition: Iterable[int]) -> list[Tournament]:
        """Every tournament agreeing with this one outside ``coalition``, itself included.

        Ordered by the internal orientation read as an integer over the
        coalition's match bits.
        """
        members = set(coalition)
        if len(members) < 2:
            raise ValueError("a coalition needs at least two teams")
        mask = self.coalition_mask(members)
        base = self.bits & ~mask
        return [Tournament(self.n, base | sub) for sub in submasks(mask)]

    def is_s_adjacent(self, other: Tournament, coalition: Iterable[int]) -> bool:
        if other.n != self.n:
            return False
        outside = ~self.coalition_mask(coalition)
        return (self.bits ^ other.bits) & outside == 0

    def relabel(self, perm: Sequence[int]) -> Tournament:
        """Tournament in which team ``perm[i]`` plays the role of team ``i``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the teams")
        matrix = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                if i != j and self.beats(i, j):
                    matrix[perm[i]][perm[j]] = 1
        return Tournament.from_matrix(matrix)

    # text form --------------------------------------------------------

    def matrix(self) -> list[list[int]]:
        return [[(m >> j) & 1 for j in range(self.n)] for m in self.win_masks]

    def rows(self) -> list[str]:
        return ["".join(str(x) for x in row) for row in self.matrix()]

    def to_text(self) -> str:
        lines = [str(self.n)] + [" ".join(str(x) for x in row) for row in self.matrix()]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> Tournament:
        """Parse the text format: ``n`` on line 1, then ``n`` rows of 0/1 entries."""
        lines = text.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise TournamentParseError("empty input", 1, 1)
        head = lines[0].strip()
        try:
            n = int(head)
        except ValueError:
            raise TournamentParseError(f"expected team count, got {head!r}", 1, 1) from None
        if n < 1:
            raise TournamentParseError("team count must be at least 1", 1, 1)
        if len(lines) - 1 != n:
            raise TournamentParseError(
                f"expected {n} matrix rows, got {len(lines) - 1}", min(len(lines), n + 1) + 1, 1
            )
        matrix: list[list[int]] = []
        columns: list[list[int]] = []
        for r, line in enumerate(lines[1:]):
            lineno = r + 2
            tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]
            if len(tokens) != n:
                raise TournamentParseError(f"expected {n} entries, got {len(tokens)}", lineno, 1)
            row = []
            for col, tok in tokens:
                if tok not in ("0", "1"):
                    raise TournamentParseError(f"entry must be 0 or 1, got {tok!r}", lineno, col)
                row.append(int(tok))
            matrix.append(row)
            columns.append([c for c, _ in tokens])
        for i in range(n):
            if matrix[i][i] != 0:
                raise TournamentParseError("diagonal entry must be 0", i + 2, columns[i][i])
            for j in range(i + 1, n):
                if matrix[i][j] + matrix[j][i] != 1:
                    raise TournamentParseError(
                        f"entries ({i},{j}) and ({j},{i}) must sum to 1", j + 2, columns[j][i]
                    )
        return cls.from_matrix(matrix)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order, ``0`` first."""
    bits = [1 << b for b in range(mask.bit_length()) if (mask >> b) & 1]
    for r in range(1 << len(bits)):
        yield sum(b for k, b in enumerate(bits) if (r >> k) & 1)


def enumerate_all(n: int, start: int = 0, stop: int | None = None) -> Iterator[Tournament]:
    """Yield every labeled tournament on ``n`` teams in bit-integer order.

    ``start``/``stop`` restrict to an index range so sweeps can be split
    across workers.
    """
    if not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"n must be in [1, {ENUMERATION_CAP}], got {n}")
    total = 1 << num_pairs(n)
    stop = total if stop is None else min(stop, total)
    for bits in range(start, stop):
        yield Tournament(n, bits)


def count_tournaments(n: int) -> int:
    return 1 << num_pairs(n)


def gen_family(name: str, n: int | None = None, seed: int | None = None) -> Tournament:
    """Named tournament families.

    ``cycle3``: 0 beats 1 beats 2 beats 0.  ``transitive``: ``i`` beats ``j``
    iff ``i < j``.  ``superman_kryptonite``: team 0 beats everyone but team
    ``n-1``, team ``n-1`` beats only team 0, and otherwise lower beats higher.
    ``random``: uniform bits drawn from ``random.Random(seed)``.
    """
    name = name.replace("-", "_")
    if name == "cycle3":
        if n not in (None, 3):
            raise ValueError("cycle3 is defined only for n=3")
        return Tournament.from_wins(3, {0: [1], 1: [2], 2: [0]})
    if n is None:
        raise ValueError(f"family {name!r} needs n")
    if n < 1:
        raise ValueError("n must be at least 1")
    m = num_pairs(n)
    if name == "transitive":
        return Tournament(n, (1 << m) - 1)
    if name == "superman_kryptonite":
        if n < 3:
            raise ValueError("superman_kryptonite needs n >= 3")
        return Tournament(n, ((1 << m) - 1) ^ (1 << pair_bit(n, 0, n - 1)))
    if name == "random":
        if seed is None:
            raise ValueError("the random family needs a seed")
        return Tournament(n, random.Random(seed).getrandbits(m) if m else 0)
    raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def top_cycle(t: Tournament) -> frozenset[int]:
    """Minimal nonempty set of teams beating every team outside it.

    The condensation of a tournament is a total order, and a team of maximum
    outdegree always sits in its source component, so the top cycle is the
    set of teams that can reach that team.
    """
    n = t.n
    masks = t.win_masks
    king = max(range(n), key=lambda i: t.outdegrees[i])
    beaten_by = [0] * n
    for i, m in enumerate(masks):
        for j in range(n):
            if (m >> j) & 1:
                beaten_by[j] |= 1 << i
    reached = 1 << king
    frontier = reached
    while frontier:
        new = 0
        v = frontier
        while v:
            low = v & -v
            new |= beaten_by[low.bit_length() - 1]
            v ^= low
        frontier = new & ~reached
        reached |= frontier
    members = frozenset(i for i in range(n) if (reached >> i) & 1)
    assert len(members) != 2, "a tournament's top cycle never has exactly two teams"
    return members


def is_dominant(t: Tournament, members: Iterable[int]) -> bool:
    """True if every team in ``members`` beats every team outside it."""
    inside = 0
    for i in members:
        inside |= 1 << i
    outside = ((1 << t.n) - 1) & ~inside
    return all(t.win_masks[i] & outside == outside for i in range(t.n) if (inside >> i) & 1)
