"""Exact closed forms: binomials, Catalan and Fibonacci numbers, I(n, k), J(l, k).

``I(n, k)`` counts the independent sets of size ``k`` in the downcore of
the size-``n`` staircase; ``J(l, k)`` counts the 132-avoiders of length
``l`` whose staircase encoding has exactly ``k`` nonzero boxes. All
arithmetic is on Python integers and every division is checked for
exactness.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .exceptions import DomainError


def binomial(a: int, b: int) -> int:
    """``C(a, b)``, taken to be 0 unless ``0 <= b <= a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    assert r == 0, f"{num} is not divisible by {den}"
    return q


def catalan(i: int) -> int:
    if i < 0:
        raise DomainError("Catalan numbers are indexed from 0")
    return _exact_div(binomial(2 * i, i), i + 1)


def fibonacci(m: int) -> int:
    """Fibonacci numbers with ``F_1 = F_2 = 1``."""
    if m < 1:
        raise DomainError("Fibonacci numbers are indexed from 1 here")
    a, b = 1, 1
    for _ in range(m - 1):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def I_closed(n: int, k: int) -> int:
    """``(1/n) * sum_j C(n, k-j) C(n, j+1) C(n-1+j, n-1)``, with ``I(0, 0) = 1``."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    total = sum(
        binomial(n, k - j) * binomial(n, j + 1) * binomial(n - 1 + j, n - 1)
        for j in range(n)
    )
    return _exact_div(total, n)


@lru_cache(maxsize=None)
def J_closed(l: int, k: int) -> int:
    """Stars and bars over the encoding size ``n``: each of the ``k`` chosen
    boxes receives at least one of the ``l - n`` non-minimal entries."""
    if l < 1:
        raise DomainError("J is defined for l >= 1")
    if k < 0:
        return 0
    if k == 0:
        # only the decreasing permutation has an all-zero encoding
        return 1
    return sum(I_closed(n, k) * binomial(l - n - 1, k - 1) for n in range(l + 1))


def max_nonzero_k(l: int) -> int:
    """Largest ``k`` with ``J(l, k) > 0``."""
    if l < 1:
        raise DomainError("J is defined for l >= 1")
    return (2 * l - 1) // 3


def peak_value(l: int) -> int:
    """``J(l, max_nonzero_k(l))`` from the three residue-class formulas.

    For ``l = 3i`` with ``i >= 2`` the coefficient is ``9i^2 + 3i - 4``;
    the variant ``9i^2 + 2i - 4`` gives 18 instead of the true 19 at ``l = 6``.
    """
    if l < 2:
        raise DomainError("peak values are defined for l >= 2")
    i, r = divmod(l, 3)
    if r == 2:
        return catalan(i)
    if r == 1:
        return _exact_div(3 * binomial(2 * i, i), 2)
    if i == 1:
        return 4
    return _exact_div(binomial(2 * i - 2, i) * (9 * i * i + 3 * i - 4), 2 * (i - 1))


def I_table(bound: int) -> list[list[int]]:
    """Rows ``n = 0..bound``, columns ``k = 0..max(0, 2*bound - 1)``."""
    width = max(0, 2 * bound - 1)
    return [[I_closed(n, k) for k in range(width + 1)] for n in range(bound + 1)]


def J_table(bound: int) -> list[list[int]]:
    """Rows ``l = 1..bound``, columns ``k = 0..max_nonzero_k(bound)``."""
    width = max_nonzero_k(bound) if bound >= 1 else 0
    return [[J_closed(l, k) for k in range(width + 1)] for l in range(1, bound + 1)]
