"""Box sets, boundary grids, downcore graphs and purity.

Boxes use Cartesian coordinates ``(x, y)``: ``x`` is the column counted
from the left and ``y`` the row counted from the bottom, so the box
``(i, pi_i)`` sits where the permutation's point does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Sequence

from .exceptions import DomainError, ResourceLimitError
from .permutations import Permutation, extremal_profile, is_123_avoiding_fast

Box = tuple[int, int]

MAX_ENUMERATION_VERTICES = 64
MAX_COUNTING_VERTICES = 32


class BoxSet(frozenset):
    """An immutable, duplicate-free set of boxes with positive coordinates."""

    def __new__(cls, boxes: Iterable[Sequence[int]] = ()) -> "BoxSet":
        items = []
        for b in boxes:
            x, y = (int(c) for c in b)
            if x < 1 or y < 1:
                raise DomainError(f"box {(x, y)} has a nonpositive coordinate")
            items.append((x, y))
        return super().__new__(cls, items)

    def __repr__(self) -> str:
        return f"BoxSet({self.sorted()!r})"

    def sorted(self) -> list[Box]:
        return sorted(self)

    def rows(self) -> dict[int, list[int]]:
        """Occupied rows, bottom to top, each with its sorted columns."""
        out: dict[int, list[int]] = {}
        for x, y in self:
            out.setdefault(y, []).append(x)
        return {y: sorted(out[y]) for y in sorted(out)}

    def row_intervals(self) -> dict[int, tuple[int, int]]:
        """``y -> (first column, last column)``; meaningful for contiguous rows."""
        return {y: (xs[0], xs[-1]) for y, xs in self.rows().items()}

    def shifted(self, dx: int = 0, dy: int = 0) -> "BoxSet":
        return BoxSet((x + dx, y + dy) for x, y in self)

    def normalized(self) -> "BoxSet":
        """Translate so the smallest column and row are both 1."""
        if not self:
            return self
        return self.shifted(1 - min(x for x, _ in self), 1 - min(y for _, y in self))

    def to_json(self) -> dict:
        return {"boxes": [list(b) for b in self.sorted()]}

    @classmethod
    def from_json(cls, data: dict) -> "BoxSet":
        return cls(tuple(b) for b in data["boxes"])

    @classmethod
    def from_rows(cls, rows: dict[int, tuple[int, int]]) -> "BoxSet":
        """Build from ``y -> (first, last)`` column intervals."""
        return cls((x, y) for y, (a, b) in rows.items() for x in range(a, b + 1))

    def render(self, selected: Iterable[Box] = ()) -> str:
        selected = set(selected)
        if not self:
            return ""
        width = max(x for x, _ in self)
        lines = []
        for y in range(max(y for _, y in self), 0, -1):
            cells = []
            for x in range(1, width + 1):
                if (x, y) in selected:
                    cells.append("▣")
                elif (x, y) in self:
                    cells.append("■")
                else:
                    cells.append(" ")
            lines.append("".join(cells).rstrip())
        return "\n".join(lines)


@dataclass(frozen=True)
class DowncoreGraph:
    """Simple undirected graph on boxes; adjacency stored as bitmasks.

    Vertices are kept sorted, and bit ``t`` of ``adjacency[s]`` is set when
    ``vertices[s]`` and ``vertices[t]`` are joined.
    """

    vertices: tuple[Hashable, ...]
    adjacency: tuple[int, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {v: s for s, v in enumerate(self.vertices)})

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable[tuple]) -> "DowncoreGraph":
        verts = tuple(sorted(set(vertices)))
        index = {v: s for s, v in enumerate(verts)}
        adj = [0] * len(verts)
        for p, q in edges:
            s, t = index[p], index[q]
            if s == t:
                raise DomainError(f"self-loop at {p}")
            adj[s] |= 1 << t
            adj[t] |= 1 << s
        return cls(verts, tuple(adj))

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: Hashable) -> list:
        return self._unpack(self.adjacency[self.index[v]])

    def degree(self, v: Hashable) -> int:
        return bin(self.adjacency[self.index[v]]).count("1")

    def has_edge(self, p: Hashable, q: Hashable) -> bool:
        return bool(self.adjacency[self.index[p]] >> self.index[q] & 1)

    def edges(self) -> list[tuple]:
        out = []
        for s, mask in enumerate(self.adjacency):
            mask >>= s + 1
            t = s + 1
            while mask:
                if mask & 1:
                    out.append((self.vertices[s], self.vertices[t]))
                mask >>= 1
                t += 1
        return out

    def edge_count(self) -> int:
        return sum(bin(m).count("1") for m in self.adjacency) // 2

    def mask_of(self, vs: Iterable[Hashable]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index[v]
        return m

    def _unpack(self, mask: int) -> list:
        out = []
        s = 0
        while mask:
            if mask & 1:
                out.append(self.vertices[s])
            mask >>= 1
            s += 1
        return out

    def is_independent(self, vs: Iterable[Hashable]) -> bool:
        m = self.mask_of(vs)
        return all(not (self.adjacency[s] & m) for s in _bits(m))

    def is_maximal_independent(self, vs: Iterable[Hashable]) -> bool:
        vs = list(vs)
        if not self.is_independent(vs):
            return False
        m = self.mask_of(vs)
        # every outside vertex must touch the set
        return all(self.adjacency[s] & m for s in range(len(self)) if not m >> s & 1)

    def subgraph(self, vs: Iterable[Hashable]) -> "DowncoreGraph":
        keep = sorted(set(vs))
        m = self.mask_of(keep)
        edges = [(p, q) for p, q in self.edges() if m >> self.index[p] & 1 and m >> self.index[q] & 1]
        return DowncoreGraph.from_edges(keep, edges)

    def connected_components(self) -> list["DowncoreGraph"]:
        seen = 0
        comps = []
        for s in range(len(self)):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for t in _bits(frontier):
                    nxt |= self.adjacency[t]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(self.subgraph(self._unpack(comp)))
        return comps


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def downcore(boxes: Iterable[Box]) -> DowncoreGraph:
    """Join strictly NW/SE boxes whose two remaining rectangle corners are present."""
    boxes = BoxSet(boxes)
    edges = []
    for (i, j), (k, l) in combinations(sorted(boxes), 2):
        if ((i < k and j > l) or (i > k and j < l)) and (i, l) in boxes and (k, j) in boxes:
            edges.append(((i, j), (k, l)))
    return DowncoreGraph.from_edges(boxes, edges)


def boundary_grid(perm: Sequence[int]) -> BoxSet:
    """Boxes lying above-right of some LtR minimum and below-left of some RtL maximum.

    Box ``(x, y)`` is the unit square with lower-left vertex ``(x, y)``.
    """
    if not is_123_avoiding_fast(perm):
        raise DomainError(
            f"{Permutation(perm)} contains 123 (some entry is neither a "
            "left-to-right minimum nor a right-to-left maximum); boundary "
            "grids are only defined for 123-avoiders"
        )
    n = len(perm)
    prof = extremal_profile(perm)
    mins = [(i, perm[i - 1]) for i in prof.ltr_min_positions]
    maxs = [(j, perm[j - 1]) for j in prof.rtl_max_positions]
    return BoxSet(
        (x, y)
        for x in range(1, n)
        for y in range(1, n)
        if any(i <= x and v <= y for i, v in mins)
        and any(j >= x + 1 and v >= y + 1 for j, v in maxs)
    )


def _check_vertex_bound(g: DowncoreGraph, bound: int) -> None:
    if len(g) > bound:
        raise ResourceLimitError(
            f"graph has {len(g)} vertices, above the configured bound {bound}"
        )


def _maximal_independent_masks(g: DowncoreGraph) -> Iterator[int]:
    """Bron-Kerbosch with pivoting, run on the complement graph.

    Branching candidates are ``P & N[u]`` for the pivot ``u``; downcores are
    sparse, so this is small.
    """
    n = len(g)
    full = (1 << n) - 1
    closed = [g.adjacency[s] | 1 << s for s in range(n)]
    non_adj = [full & ~c for c in closed]

    def expand(r: int, p: int, x: int) -> Iterator[int]:
        if not p:
            if not x:
                yield r
            return
        best, pivot = None, 0
        for u in _bits(p | x):
            size = _popcount(p & closed[u])
            if best is None or size < best:
                best, pivot = size, u
        for v in _bits(p & closed[pivot]):
            bit = 1 << v
            yield from expand(r | bit, p & non_adj[v], x & non_adj[v])
            p &= ~bit
            x |= bit

    yield from expand(0, full, 0)


def maximal_independent_sets(
    g: DowncoreGraph, bound: int = MAX_ENUMERATION_VERTICES
) -> Iterator[tuple]:
    """Every inclusion-maximal independent set once, as a sorted tuple of vertices."""
    _check_vertex_bound(g, bound)
    for mask in _maximal_independent_masks(g):
        yield tuple(g._unpack(mask))


@dataclass(frozen=True)
class PurityReport:
    is_pure: bool
    min_size: int
    max_size: int
    witness_min: tuple
    witness_max: tuple
    maximal_set_count: int | None = None

    def to_json(self) -> dict:
        return {
            "is_pure": self.is_pure,
            "min_size": self.min_size,
            "max_size": self.max_size,
            "witness_min": [list(b) for b in self.witness_min],
            "witness_max": [list(b) for b in self.witness_max],
            "maximal_set_count": self.maximal_set_count,
        }


def is_pure(
    g: DowncoreGraph,
    exhaustive: bool = True,
    bound: int = MAX_ENUMERATION_VERTICES,
) -> PurityReport:
    """Purity with witnesses.

    With ``exhaustive=False`` the search stops at the second distinct size
    seen; the sizes reported are then those of the two witnesses rather than
    the true extremes, and no set count is given.
    """
    _check_vertex_bound(g, bound)
    lo = hi = None
    w_lo = w_hi = 0
    count = 0
    for mask in _maximal_independent_masks(g):
        count += 1
        size = _popcount(mask)
        if lo is None:
            lo = hi = size
            w_lo = w_hi = mask
            continue
        if size < lo:
            lo, w_lo = size, mask
        elif size > hi:
            hi, w_hi = size, mask
        if not exhaustive and lo != hi:
            break
    if lo is None:  # no vertices: the empty set is the only maximal set
        lo = hi = 0
    return PurityReport(
        is_pure=lo == hi,
        min_size=lo,
        max_size=hi,
        witness_min=tuple(g._unpack(w_lo)),
        witness_max=tuple(g._unpack(w_hi)),
        maximal_set_count=count if exhaustive else None,
    )


def count_independent_sets_by_size(
    g: DowncoreGraph, bound: int = MAX_COUNTING_VERTICES
) -> list[int]:
    """Entry ``k`` counts the independent sets (maximal or not) of size ``k``.

    Branches on a vertex of largest remaining degree (it is either absent, or
    present and its neighbours are discarded) and memoizes on the remaining
    vertex mask. Isolated vertices contribute a binomial factor directly.
    """
    _check_vertex_bound(g, bound)
    adj = g.adjacency

    @lru_cache(maxsize=None)
    def poly(mask: int) -> tuple[int, ...]:
        isolated = 0
        best, pick = -1, -1
        for s in _bits(mask):
            d = _popcount(adj[s] & mask)
            if d == 0:
                isolated += 1
            elif d > best:
                best, pick = d, s
        base = _binomial_row(isolated)
        if pick < 0:
            return base
        rest = mask & ~_isolated_mask(mask)
        without = poly(rest & ~(1 << pick))
        with_v = poly(rest & ~(1 << pick) & ~adj[pick])
        core = _poly_add(without, (0, *with_v))
        return _poly_mul(base, core)

    def _isolated_mask(mask: int) -> int:
        m = 0
        for s in _bits(mask):
            if not adj[s] & mask:
                m |= 1 << s
        return m

    return list(poly((1 << len(g)) - 1))


def _binomial_row(m: int) -> tuple[int, ...]:
    row = [1]
    for _ in range(m):
        row = [a + b for a, b in zip([0, *row], [*row, 0])]
    return tuple(row)


def _poly_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    size = max(len(a), len(b))
    return tuple(
        (a[t] if t < len(a) else 0) + (b[t] if t < len(b) else 0) for t in range(size)
    )


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for s, u in enumerate(a):
        if u:
            for t, v in enumerate(b):
                out[s + t] += u * v
    return tuple(out)


def connected_components(boxes: Iterable[Box]) -> list[BoxSet]:
    """Edge-connected pieces, ordered by their smallest box."""
    remaining = set(BoxSet(boxes))
    comps = []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        remaining.discard(start)
        while stack:
            x, y = stack.pop()
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(BoxSet(comp))
    return sorted(comps, key=min)


def is_skew_young(boxes: Iterable[Box]) -> bool:
    """Connected, rows contiguous, and both row ends move weakly left going up."""
    boxes = BoxSet(boxes)
    if not boxes:
        return True
    if len(connected_components(boxes)) != 1:
        return False
    rows = boxes.rows()
    for xs in rows.values():
        if xs[-1] - xs[0] + 1 != len(xs):
            return False
    ys = sorted(rows)
    for lower, upper in zip(ys, ys[1:]):
        if rows[upper][0] > rows[lower][0] or rows[upper][-1] > rows[lower][-1]:
            return False
    return True


def duplicate_row(boxes: Iterable[Box], row: int) -> BoxSet:
    """Split row ``row`` horizontally into two identical rows."""
    boxes = BoxSet(boxes)
    if not any(y == row for _, y in boxes):
        raise DomainError(f"row {row} is not occupied")
    out = set()
    for x, y in boxes:
        if y > row:
            out.add((x, y + 1))
        elif y == row:
            out.add((x, y))
            out.add((x, y + 1))
        else:
            out.add((x, y))
    return BoxSet(out)


def construction_permutation(n: int) -> Permutation:
    """``(n-2)(n-3)...1 n (n-1)``: a 123-avoider containing 2143 with impure downcore."""
    if n < 4:
        raise DomainError("the construction needs n >= 4")
    return Permutation([*range(n - 2, 0, -1), n, n - 1])


def construction_grid(n: int) -> BoxSet:
    return boundary_grid(construction_permutation(n))


def construction_witnesses(n: int) -> tuple[BoxSet, BoxSet]:
    """The two maximal independent sets of sizes ``3(n-2)`` and ``3(n-2) - 1``.

    The first takes the perimeter: the top row, the right column and the
    lower-left diagonal. The second trades the top row's second-to-last box
    and the bottom-right box for the middle box of the second row.
    """
    if n < 4:
        raise DomainError("the construction needs n >= 4")
    top = [(x, n - 1) for x in range(1, n - 1)]
    right = [(n - 1, y) for y in range(1, n - 1)]
    diagonal = [(x, n - 1 - x) for x in range(1, n - 1)]
    large = set(top + right + diagonal)
    small = (large - {(n - 3, n - 1), (n - 1, 1)}) | {(n - 2, 2)}
    return BoxSet(large), BoxSet(small)


def staircase_boxset(n: int, orientation: str = "lower-left") -> BoxSet:
    """Staircase of size ``n`` with its diagonal running from top-left to bottom-right.

    ``lower-left`` keeps the corner at ``(1, 1)``; ``upper-right`` keeps the
    corner at ``(n, n)`` and is the Cartesian picture of ``B_n``.
    """
    if n < 1:
        raise DomainError("staircase size must be at least 1")
    if orientation == "lower-left":
        return BoxSet((x, y) for x in range(1, n + 1) for y in range(1, n + 2 - x))
    if orientation == "upper-right":
        return BoxSet((x, y) for x in range(1, n + 1) for y in range(n + 1 - x, n + 1))
    raise DomainError(f"unknown orientation {orientation!r}")


def random_skew_diagram(rng: random.Random, max_boxes: int = 18, max_rows: int = 7) -> BoxSet:
    """A connected skew Young diagram with at most ``max_boxes`` boxes.

    Rows are drawn bottom to top; each new row keeps both ends weakly to the
    left of the row below and overlaps it in at least one column.
    """
    while True:
        height = rng.randint(1, max_rows)
        a = rng.randint(1, 6)
        b = a + rng.randint(0, 5)
        rows = {1: (a, b)}
        for y in range(2, height + 1):
            na = rng.randint(max(1, a - 3), a)
            nb = rng.randint(max(a, na), b)
            rows[y] = (na, nb)
            a, b = na, nb
        shape = BoxSet.from_rows(rows).normalized()
        if len(shape) <= max_boxes:
            return shape
