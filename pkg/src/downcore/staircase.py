"""Staircase encodings of permutations and their downcore.

A permutation with ``a`` left-to-right minima is encoded on the staircase
``B_a``: box ``(i, j)`` with ``1 <= i <= j <= a`` (row ``i`` from the top,
column ``j`` from the left) counts the entries whose value lies strictly
between the ``i``-th and ``(i-1)``-th minimum and whose position lies
strictly between the ``j``-th and ``(j+1)``-th minimum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .exceptions import DomainError
from .grids import DowncoreGraph
from .permutations import Permutation, extremal_profile

StaircaseBox = tuple[int, int]


def staircase_boxes(a: int) -> list[StaircaseBox]:
    return [(i, j) for i in range(1, a + 1) for j in range(i, a + 1)]


@dataclass(frozen=True)
class StaircaseEncoding:
    size: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.size < 0:
            raise DomainError("staircase size must be nonnegative")
        if len(self.rows) != self.size:
            raise DomainError(f"expected {self.size} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows, start=1):
            if len(row) != self.size - i + 1:
                raise DomainError(
                    f"row {i} of a size-{self.size} staircase needs "
                    f"{self.size - i + 1} entries, got {len(row)}"
                )
            if any(c < 0 for c in row):
                raise DomainError(f"row {i} has a negative count")

    @classmethod
    def from_counts(cls, size: int, counts: Mapping[StaircaseBox, int]) -> "StaircaseEncoding":
        rows = tuple(
            tuple(int(counts.get((i, j), 0)) for j in range(i, size + 1))
            for i in range(1, size + 1)
        )
        return cls(size, rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "StaircaseEncoding":
        return cls(len(rows), tuple(tuple(int(c) for c in r) for r in rows))

    def __getitem__(self, box: StaircaseBox) -> int:
        i, j = box
        if not 1 <= i <= j <= self.size:
            raise KeyError(box)
        return self.rows[i - 1][j - i]

    @property
    def counts(self) -> dict[StaircaseBox, int]:
        return {(i, j): self[i, j] for i, j in staircase_boxes(self.size)}

    @property
    def total(self) -> int:
        """Length of any permutation with this encoding."""
        return self.size + sum(map(sum, self.rows))

    def nonzero_boxes(self) -> list[StaircaseBox]:
        return [b for b, c in self.counts.items() if c]

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def column_sums(self) -> list[int]:
        return [sum(self[i, j] for i in range(1, j + 1)) for j in range(1, self.size + 1)]

    def to_json(self) -> dict:
        return {"size": self.size, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict | str) -> "StaircaseEncoding":
        if isinstance(data, str):
            data = json.loads(data)
        enc = cls.from_rows(data["rows"])
        if enc.size != data.get("size", enc.size):
            raise DomainError("size field does not match the number of rows")
        return enc

    def render(self) -> str:
        """Right-justified rows, top row first, as the staircase is drawn."""
        width = max((len(str(c)) for r in self.rows for c in r), default=1)
        lines = []
        for i, row in enumerate(self.rows):
            cells = " ".join(str(c).rjust(width) for c in row)
            lines.append(" " * ((width + 1) * i) + cells)
        return "\n".join(lines)


def encode(perm: Sequence[int]) -> StaircaseEncoding:
    """Staircase encoding of any nonempty permutation (132-avoiding or not)."""
    n = len(perm)
    if n == 0:
        raise DomainError("the empty permutation has no staircase encoding")
    positions = list(extremal_profile(perm).ltr_min_positions)
    a = len(positions)
    values = [perm[k - 1] for k in positions]
    # sentinels: value above the first minimum, position after the last one
    bands = [n + 1, *values]
    cuts = [*positions, n + 1]
    counts: dict[StaircaseBox, int] = {}
    for j in range(1, a + 1):
        for p in range(cuts[j - 1] + 1, cuts[j]):
            v = perm[p - 1]
            # the row band holding v; v exceeds the j-th minimum, so i <= j
            i = next(r for r in range(1, a + 1) if bands[r] < v < bands[r - 1])
            counts[i, j] = counts.get((i, j), 0) + 1
    return StaircaseEncoding.from_counts(a, counts)


def staircase_downcore(a: int) -> DowncoreGraph:
    """Downcore of ``B_a``: ``(i,j) ~ (k,l)`` iff ``i < k <= j < l`` or vice versa."""
    if a < 1:
        raise DomainError("staircase size must be at least 1")
    boxes = staircase_boxes(a)
    edges = [
        (p, q)
        for p, q in combinations(boxes, 2)
        if _staircase_adjacent(p, q)
    ]
    return DowncoreGraph.from_edges(boxes, edges)


def _staircase_adjacent(p: StaircaseBox, q: StaircaseBox) -> bool:
    (i, j), (k, l) = p, q
    return i < k <= j < l or k < i <= l < j


def conflicting_pair(enc: StaircaseEncoding) -> tuple[StaircaseBox, StaircaseBox] | None:
    """First pair of nonzero boxes joined in the downcore, if any."""
    for p, q in combinations(enc.nonzero_boxes(), 2):
        if _staircase_adjacent(p, q):
            return p, q
    return None


def is_valid_132_encoding(enc: StaircaseEncoding) -> bool:
    """Nonzero boxes form an independent set of the downcore."""
    return conflicting_pair(enc) is None


def nonzero_count(enc: StaircaseEncoding) -> int:
    return len(enc.nonzero_boxes())


def decode(enc: StaircaseEncoding) -> Permutation:
    """The unique 132-avoider with the given encoding.

    Row ``i`` owns the block of values just below the ``(i-1)``-th minimum;
    it hands them out left to right in increasing order. Each column segment
    then lists everything it received in increasing order, which is forced:
    any descent inside a segment would form a 132 with the minimum on its left.
    """
    bad = conflicting_pair(enc)
    if bad is not None:
        p, q = bad
        raise DomainError(
            f"boxes {p} and {q} are both nonzero but adjacent in the downcore; "
            "no 132-avoiding permutation has this encoding"
        )
    a = enc.size
    if a == 0:
        return Permutation()
    n = enc.total
    minima = []
    top = n + 1
    segment_values: list[list[int]] = [[] for _ in range(a + 1)]
    for i in range(1, a + 1):
        r = sum(enc.rows[i - 1])
        m = top - r - 1
        minima.append(m)
        block = iter(range(m + 1, top))
        for j in range(i, a + 1):
            for _ in range(enc[i, j]):
                segment_values[j].append(next(block))
        top = m
    out: list[int] = []
    for j in range(1, a + 1):
        out.append(minima[j - 1])
        out.extend(sorted(segment_values[j]))
    return Permutation(out)


def iter_encodings(total: int) -> Iterator[StaircaseEncoding]:
    """Every staircase encoding whose total is ``total`` (any validity)."""
    for a in range(1, total + 1):
        boxes = staircase_boxes(a)
        for fill in _compositions(total - a, len(boxes)):
            yield StaircaseEncoding.from_counts(a, dict(zip(boxes, fill)))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def staircase_to_cartesian(box: StaircaseBox, a: int) -> tuple[int, int]:
    """Map ``B_a`` coordinates onto the upper-right Cartesian staircase."""
    i, j = box
    return (j, a + 1 - i)
