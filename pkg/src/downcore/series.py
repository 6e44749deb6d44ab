"""Truncated bivariate power series over the integers.

A :class:`BivariateSeries` of order ``N`` keeps the coefficients of
``x^n y^k`` for ``0 <= n, k <= N`` and computes modulo ``(x^(N+1), y^(N+1))``.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable

from .exceptions import DomainError, ResourceLimitError

MAX_SOLVE_ORDER = 30


class BivariateSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Iterable[int]] | None = None):
        if order < 0:
            raise DomainError("truncation order must be nonnegative")
        self.order = order
        size = order + 1
        grid = [[0] * size for _ in range(size)]
        if coeffs is not None:
            for n, row in enumerate(coeffs):
                if n >= size:
                    break
                for k, c in enumerate(row):
                    if k >= size:
                        break
                    grid[n][k] = int(c)
        self.coeffs = grid

    @classmethod
    def constant(cls, order: int, c: int) -> "BivariateSeries":
        s = cls(order)
        s.coeffs[0][0] = c
        return s

    @classmethod
    def monomial(cls, order: int, n: int, k: int, c: int = 1) -> "BivariateSeries":
        s = cls(order)
        if n <= order and k <= order:
            s.coeffs[n][k] = c
        return s

    @classmethod
    def from_function(cls, order: int, f: Callable[[int, int], int]) -> "BivariateSeries":
        return cls(order, [[f(n, k) for k in range(order + 1)] for n in range(order + 1)])

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if 0 <= n <= self.order and 0 <= k <= self.order:
            return self.coeffs[n][k]
        return 0

    def copy(self) -> "BivariateSeries":
        return BivariateSeries(self.order, self.coeffs)

    def _coerce(self, other) -> "BivariateSeries":
        if isinstance(other, BivariateSeries):
            if other.order != self.order:
                raise DomainError("series of different orders cannot be combined")
            return other
        if isinstance(other, int):
            return BivariateSeries.constant(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = self.order + 1
        return BivariateSeries(
            self.order,
            [[self.coeffs[n][k] + other.coeffs[n][k] for k in range(size)] for n in range(size)],
        )

    __radd__ = __add__

    def __neg__(self):
        return BivariateSeries(self.order, [[-c for c in row] for row in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariateSeries(self.order, [[other * c for c in row] for row in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.order
        out = [[0] * (N + 1) for _ in range(N + 1)]
        a, b = self.coeffs, other.coeffs
        for n1 in range(N + 1):
            for k1 in range(N + 1):
                c = a[n1][k1]
                if not c:
                    continue
                for n2 in range(N + 1 - n1):
                    row_b = b[n2]
                    row_o = out[n1 + n2]
                    for k2 in range(N + 1 - k1):
                        if row_b[k2]:
                            row_o[k1 + k2] += c * row_b[k2]
        return BivariateSeries(N, out)

    __rmul__ = __mul__

    def shift(self, dn: int = 0, dk: int = 0) -> "BivariateSeries":
        """Multiply by ``x^dn y^dk``."""
        N = self.order
        out = [[0] * (N + 1) for _ in range(N + 1)]
        for n in range(N + 1 - dn):
            for k in range(N + 1 - dk):
                out[n + dn][k + dk] = self.coeffs[n][k]
        return BivariateSeries(N, out)

    def inverse(self) -> "BivariateSeries":
        """Reciprocal of a series whose constant term is 1 or -1."""
        c0 = self.coeffs[0][0]
        if c0 not in (1, -1):
            raise DomainError("only series with constant term +-1 are invertible here")
        N = self.order
        g = [[0] * (N + 1) for _ in range(N + 1)]
        f = self.coeffs
        # fill in order of n then k; every term on the right is already known
        for n in range(N + 1):
            for k in range(N + 1):
                if n == 0 and k == 0:
                    g[0][0] = c0
                    continue
                acc = 0
                for a in range(n + 1):
                    for b in range(k + 1):
                        if (a or b) and f[a][b]:
                            acc += f[a][b] * g[n - a][k - b]
                g[n][k] = -c0 * acc
        return BivariateSeries(N, g)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.coeffs for c in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(map(tuple, self.coeffs))))

    def __repr__(self) -> str:
        terms = [
            f"{c}*x^{n}*y^{k}"
            for n, row in enumerate(self.coeffs)
            for k, c in enumerate(row)
            if c
        ]
        return f"BivariateSeries(order={self.order}, {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [
                [n, k, str(c)]
                for n, row in enumerate(self.coeffs)
                for k, c in enumerate(row)
                if c
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "BivariateSeries":
        if isinstance(data, str):
            data = json.loads(data)
        s = cls(data["order"])
        for n, k, c in data["coeffs"]:
            s.coeffs[n][k] = int(c)
        return s


def _rhs(f: BivariateSeries) -> BivariateSeries:
    """``1 + x F + x y F^2 / (1 - y (F - 1))``."""
    denom = 1 - (f - 1).shift(0, 1)
    return 1 + f.shift(1, 0) + (f * f).shift(1, 1) * denom.inverse()


def series_solve_F(order: int, bound: int = MAX_SOLVE_ORDER) -> BivariateSeries:
    """Fixed point of the staircase independent-set equation, by iteration from 1.

    Each pass pins down one more power of ``x``, so ``order + 1`` passes
    reach the fixed point and one more confirms it.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    if order > bound:
        raise ResourceLimitError(f"order {order} exceeds the bound {bound}")
    f = BivariateSeries.constant(order, 1)
    for _ in range(order + 2):
        nxt = _rhs(f)
        if nxt == f:
            return f
        f = nxt
    raise AssertionError(f"iteration did not stabilize within {order + 2} passes")


def verify_functional_equation(f: BivariateSeries) -> bool:
    """Check ``F D - (1 + x F) D - x y F^2 == 0`` with ``D = 1 - y (F - 1)``."""
    denom = 1 - (f - 1).shift(0, 1)
    if denom[0, 0] != 1:
        raise DomainError("1 - y(F - 1) must have constant term 1")
    residual = f * denom - (1 + f.shift(1, 0)) * denom - (f * f).shift(1, 1)
    return residual.is_zero()
