"""Permutations, classical pattern containment and avoidance classes.

Permutations are stored in one-line notation as immutable tuples of the
values ``1..n``. Positions in the public API are 1-indexed to agree with
the usual combinatorial notation; Python indexing on the tuple itself is
0-indexed as always.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exceptions import (
    PermutationParseError,
    PermutationValidationError,
    ResourceLimitError,
)

DEFAULT_ENUMERATION_BOUND = 12


class Permutation(tuple):
    """A bijection on ``{1, ..., n}`` in one-line notation.

    >>> Permutation([3, 1, 2])
    Permutation(3, 1, 2)
    >>> str(Permutation([3, 1, 2]))
    '312'
    """

    def __new__(cls, values: Iterable[int] = ()) -> "Permutation":
        values = tuple(int(v) for v in values)
        n = len(values)
        seen = set()
        for v in values:
            if v < 1 or v > n:
                raise PermutationValidationError(
                    f"value {v} is outside 1..{n}"
                )
            if v in seen:
                raise PermutationValidationError(f"value {v} appears twice")
            seen.add(v)
        return super().__new__(cls, values)

    def __repr__(self) -> str:
        return f"Permutation{tuple(self)!r}".replace(",)", ")")

    def __str__(self) -> str:
        if all(v <= 9 for v in self):
            return "".join(map(str, self))
        return " ".join(map(str, self))

    @property
    def n(self) -> int:
        return len(self)

    def at(self, position: int) -> int:
        """Value at a 1-indexed position."""
        if not 1 <= position <= len(self):
            raise IndexError(position)
        return self[position - 1]

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def decreasing(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))


Pattern = Permutation


def standardize(seq: Sequence[int]) -> Permutation:
    """Replace each entry of a sequence of distinct integers by its rank."""
    ranks = {v: r for r, v in enumerate(sorted(seq), start=1)}
    if len(ranks) != len(seq):
        raise PermutationValidationError("cannot standardize a sequence with repeats")
    return Permutation(ranks[v] for v in seq)


_SEPARATED = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Parse whitespace/comma separated values or a bare digit string.

    The bare digit form (``"76285143"``) is only unambiguous while every
    value is a single digit, so it is rejected when it would need ``n > 9``.
    """
    stripped = text.strip().strip("[]()").strip()
    if not stripped:
        return Permutation()
    if _SEPARATED.search(stripped):
        tokens = [t for t in _SEPARATED.split(stripped) if t]
    elif stripped.isdigit():
        if len(stripped) > 9:
            raise PermutationParseError(
                f"contiguous digit string {stripped!r} is ambiguous for n > 9; "
                "separate the values with spaces or commas"
            )
        tokens = list(stripped)
    else:
        tokens = [stripped]
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise PermutationParseError(f"not an integer list: {text!r}") from exc
    n = len(values)
    seen = set()
    for v in values:
        if v in seen:
            raise PermutationValidationError(f"value {v} appears twice")
        seen.add(v)
    missing = sorted(set(range(1, n + 1)) - seen)
    if missing:
        raise PermutationValidationError(
            f"value {missing[0]} is missing from a permutation of length {n}"
        )
    return Permutation(values)


def _occurrence_search(perm: Sequence[int], pattern: Sequence[int], anchored: bool) -> bool:
    """Backtracking search for an occurrence of ``pattern`` in ``perm``.

    Each pattern letter, when placed, only has to be compared with the
    already placed letters whose pattern values are immediately below and
    above it. With ``anchored`` the last pattern letter is forced onto the
    last entry of ``perm``; prefix enumeration only needs those occurrences.
    """
    k = len(pattern)
    if k == 0:
        return True
    n = len(perm)
    if k > n:
        return False
    # For letter t: index of the earlier letter with the nearest smaller and
    # nearest larger pattern value.
    lower: list[int] = []
    upper: list[int] = []
    for t in range(k):
        lo = hi = -1
        for s in range(t):
            if pattern[s] < pattern[t] and (lo < 0 or pattern[s] > pattern[lo]):
                lo = s
            if pattern[s] > pattern[t] and (hi < 0 or pattern[s] < pattern[hi]):
                hi = s
        lower.append(lo)
        upper.append(hi)

    chosen = [0] * k

    def fits(t: int, value: int) -> bool:
        lo, hi = lower[t], upper[t]
        if lo >= 0 and value <= chosen[lo]:
            return False
        if hi >= 0 and value >= chosen[hi]:
            return False
        return True

    last = k - 1

    def place(t: int, start: int) -> bool:
        if t == last:
            if anchored:
                return start <= n - 1 and fits(t, perm[n - 1])
            return any(fits(t, perm[p]) for p in range(start, n))
        # leave room for the letters still to be placed
        for p in range(start, n - (last - t)):
            v = perm[p]
            if fits(t, v):
                chosen[t] = v
                if place(t + 1, p + 1):
                    return True
        return False

    return place(0, 0)


def contains_pattern(perm: Sequence[int], pattern: Sequence[int]) -> bool:
    """True when ``perm`` has a subsequence order-isomorphic to ``pattern``.

    >>> contains_pattern(Permutation([5, 8, 6, 3, 4, 1, 2, 7]), Permutation([1, 3, 2]))
    True
    >>> contains_pattern(Permutation([6, 4, 1, 5, 3, 2]), Permutation([1, 2, 3]))
    False
    """
    return _occurrence_search(tuple(perm), tuple(pattern), anchored=False)


def avoids_all(perm: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains_pattern(perm, p) for p in patterns)


@dataclass(frozen=True)
class ExtremalProfile:
    """1-indexed positions of the left-to-right minima and right-to-left maxima."""

    ltr_min_positions: tuple[int, ...]
    rtl_max_positions: tuple[int, ...]

    def ltr_min_values(self, perm: Permutation) -> tuple[int, ...]:
        return tuple(perm.at(i) for i in self.ltr_min_positions)

    def rtl_max_values(self, perm: Permutation) -> tuple[int, ...]:
        return tuple(perm.at(i) for i in self.rtl_max_positions)


def extremal_profile(perm: Sequence[int]) -> ExtremalProfile:
    mins = []
    best = None
    for i, v in enumerate(perm, start=1):
        if best is None or v < best:
            mins.append(i)
            best = v
    maxs = []
    best = None
    for i in range(len(perm), 0, -1):
        v = perm[i - 1]
        if best is None or v > best:
            maxs.append(i)
            best = v
    return ExtremalProfile(tuple(mins), tuple(reversed(maxs)))


def is_123_avoiding_fast(perm: Sequence[int]) -> bool:
    """Linear-time 123 test: every entry must be a LtR minimum or a RtL maximum."""
    prof = extremal_profile(perm)
    covered = set(prof.ltr_min_positions) | set(prof.rtl_max_positions)
    return len(covered) == len(perm)


def enumerate_avoiders(
    n: int,
    patterns: Iterable[Sequence[int]],
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> Iterator[Permutation]:
    """Yield ``Av_n(patterns)`` in lexicographic order.

    Prefixes are grown value by value; a prefix is abandoned as soon as it
    holds an occurrence of some pattern, which can only newly appear at its
    last entry.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ResourceLimitError(
            f"enumeration of length {n} exceeds the brute-force bound {bound}"
        )
    patterns = [tuple(p) for p in patterns]
    if any(len(p) == 0 for p in patterns):
        return
    prefix: list[int] = []
    used = [False] * (n + 1)

    def extend() -> Iterator[Permutation]:
        if len(prefix) == n:
            yield Permutation(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            # relative order inside a prefix is all that matters
            if not any(_occurrence_search(prefix, p, anchored=True) for p in patterns):
                used[v] = True
                yield from extend()
                used[v] = False
            prefix.pop()

    yield from extend()


def is_skew_decomposable(perm: Sequence[int]) -> bool:
    return bool(_skew_cut_points(perm))


def _skew_cut_points(perm: Sequence[int]) -> list[int]:
    """All k in 1..n-1 with min(perm[:k]) > max(perm[k:])."""
    n = len(perm)
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = max(perm[i], suffix_max[i + 1])
    cuts = []
    running_min = None
    for k in range(1, n):
        v = perm[k - 1]
        running_min = v if running_min is None else min(running_min, v)
        if running_min > suffix_max[k]:
            cuts.append(k)
    return cuts


def skew_components(perm: Sequence[int]) -> list[Permutation]:
    """Split at every skew cut; each block is standardized.

    >>> skew_components(Permutation([3, 4, 1, 2]))
    [Permutation(1, 2), Permutation(1, 2)]
    """
    bounds = [0, *_skew_cut_points(perm), len(perm)]
    return [standardize(perm[a:b]) for a, b in zip(bounds, bounds[1:]) if b > a]


def skew_sum(blocks: Sequence[Sequence[int]]) -> Permutation:
    """Inverse of :func:`skew_components`: stack blocks so earlier blocks sit higher."""
    total = sum(len(b) for b in blocks)
    out: list[int] = []
    top = total
    for b in blocks:
        out.extend(v + top - len(b) for v in b)
        top -= len(b)
    return Permutation(out)
