"""Exact arithmetic in the ring of quadratic integers scaled by half-integer
powers of two.

Every matrix entry produced by a network of balanced beam splitters lies in

    { (a + b*sqrt(2)) / sqrt(2)**m  :  a, b integers, m >= 0 },

so products, transposes and equality tests of such matrices can be carried
out without any floating point arithmetic.  :class:`ExactScalar` stores the
triple ``(a, b, m)`` in a normalized form and :class:`ExactMatrix` is a dense
square matrix of such scalars.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

SQRT2 = math.sqrt(2.0)


class ExactScalar:
    """An exact value ``(a + b*sqrt(2)) / sqrt(2)**m`` with integer a, b.

    The representation is normalized so that either ``m == 0`` or ``a`` is
    odd; zero is always stored as ``(0, 0, 0)``.  Two scalars are equal iff
    their normalized components are equal, so no tolerance is ever involved.
    Components are plain Python integers and never overflow.
    """

    __slots__ = ("a", "b", "m")

    def __init__(self, a: int, b: int = 0, m: int = 0) -> None:
        if m < 0:
            raise ValueError(f"denominator exponent must be >= 0, got {m}")
        # (a + b*sqrt2)/sqrt2^m == (b + (a//2)*sqrt2)/sqrt2^(m-1) when a is even
        while m > 0 and a % 2 == 0:
            a, b, m = b, a // 2, m - 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> ExactScalar:
        return ExactScalar(0)

    @staticmethod
    def one() -> ExactScalar:
        return ExactScalar(1)

    @staticmethod
    def inv_sqrt2() -> ExactScalar:
        """The balanced beam-splitter amplitude 1/sqrt(2)."""
        return ExactScalar(1, 0, 1)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, m: int) -> tuple[int, int]:
        """Numerator (a, b) after rescaling to denominator sqrt(2)**m."""
        k = m - self.m
        if k < 0:
            raise ValueError("cannot lower the denominator exponent")
        a, b = self.a, self.b
        if k % 2:
            a, b = 2 * b, a
            k -= 1
        return a << (k // 2), b << (k // 2)

    def __add__(self, other: ExactScalar) -> ExactScalar:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        m = max(self.m, other.m)
        a1, b1 = self._lift(m)
        a2, b2 = other._lift(m)
        return ExactScalar(a1 + a2, b1 + b2, m)

    def __sub__(self, other: ExactScalar) -> ExactScalar:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.a, -self.b, self.m)

    def __mul__(self, other: ExactScalar | int) -> ExactScalar:
        if isinstance(other, int):
            other = ExactScalar(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        a = self.a * other.a + 2 * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return ExactScalar(a, b, self.m + other.m)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (self.a, self.b, self.m) == (other.a, other.b, other.m)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.m))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __float__(self) -> float:
        return (self.a + self.b * SQRT2) / SQRT2**self.m

    def __abs__(self) -> ExactScalar:
        return -self if float(self) < 0 else self

    def __repr__(self) -> str:
        return f"ExactScalar({self.a}, {self.b}, {self.m})"

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:
        """Canonical serialization ``(a+b√2)/√2^m``."""
        sign = "+" if self.b >= 0 else "-"
        return f"({self.a}{sign}{abs(self.b)}√2)/√2^{self.m}"

    @staticmethod
    def from_text(s: str) -> ExactScalar:
        """Parse the output of :meth:`text`."""
        num, _, den = s.partition(")/√2^")
        if not num.startswith("(") or not den:
            raise ValueError(f"not a serialized exact scalar: {s!r}")
        body = num[1:]
        # split on the sign of the sqrt2 coefficient, skipping a leading sign
        for i in range(1, len(body)):
            if body[i] in "+-" and body[i + 1 :].endswith("√2"):
                a = int(body[:i])
                b = int(body[i:].removesuffix("√2").replace("+", ""))
                return ExactScalar(a, b, int(den))
        raise ValueError(f"not a serialized exact scalar: {s!r}")


ZERO = ExactScalar.zero()
ONE = ExactScalar.one()
INV_SQRT2 = ExactScalar.inv_sqrt2()
HALF = ExactScalar(1, 0, 2)


class ExactMatrix:
    """A square matrix with :class:`ExactScalar` entries.

    Instances are immutable and hashable, so sets of matrices deduplicate by
    exact value.  Mode indices in the named constructors are 1-based, the
    convention used throughout for optical modes.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable[ExactScalar]]) -> None:
        tup = tuple(tuple(r) for r in rows)
        n = len(tup)
        if any(len(r) != n for r in tup):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tup)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def identity(n: int) -> ExactMatrix:
        return ExactMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_ints(rows: Sequence[Sequence[int]], denom_exp: int = 0) -> ExactMatrix:
        """Matrix of integers, each divided by sqrt(2)**denom_exp."""
        return ExactMatrix(
            [[ExactScalar(v, 0, denom_exp) for v in r] for r in rows]
        )

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        cols = tuple(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = ZERO
                for x, y in zip(row, col):
                    acc = acc + x * y
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(out)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows))

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([[-x for x in r] for r in self.rows])

    def scale(self, s: ExactScalar) -> ExactMatrix:
        return ExactMatrix([[s * x for x in r] for r in self.rows])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> ExactScalar:
        i, j = ij
        return self.rows[i][j]

    def is_orthogonal(self) -> bool:
        """Exact test of M @ M.T == identity."""
        return self @ self.transpose() == ExactMatrix.identity(self.n)

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    def text_rows(self) -> list[list[str]]:
        return [[x.text() for x in r] for r in self.rows]

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(x.text() for x in r) + "]" for r in self.rows)
        return f"ExactMatrix([{body}])"


def beam_splitter_matrix(n: int, src: int, dst: int) -> ExactMatrix:
    """Balanced beam splitter directed from mode ``src`` into mode ``dst``.

    On the (src, dst) mode pair the block is [[1, -1], [1, 1]]/sqrt(2); the
    remaining modes are untouched.  Reversing the direction transposes the
    matrix.  Modes are 1-based and must be distinct and within range.
    """
    if src == dst or not (1 <= src <= n) or not (1 <= dst <= n):
        raise ValueError(f"invalid mode pair ({src}, {dst}) for {n} modes")
    j, k = src - 1, dst - 1
    rows = [[ONE if i == c else ZERO for c in range(n)] for i in range(n)]
    rows[j][j] = INV_SQRT2
    rows[j][k] = -INV_SQRT2
    rows[k][j] = INV_SQRT2
    rows[k][k] = INV_SQRT2
    return ExactMatrix(rows)


def permutation_matrix(n: int, perm: Sequence[int]) -> ExactMatrix:
    """Row-permutation matrix: left multiplication sends row i to row perm[i].

    ``perm`` lists, for each output row (1-based), which input row it takes,
    so ``permutation_matrix(4, (1, 2, 4, 3))`` swaps modes 3 and 4.
    """
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    rows = [[ZERO] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[i][p - 1] = ONE
    return ExactMatrix(rows)


def swap_matrix(n: int, j: int, k: int) -> ExactMatrix:
    """Permutation matrix exchanging modes j and k (1-based)."""
    perm = list(range(1, n + 1))
    perm[j - 1], perm[k - 1] = perm[k - 1], perm[j - 1]
    return permutation_matrix(n, perm)


def negation_matrix(n: int, j: int) -> ExactMatrix:
    """Diagonal matrix negating mode j (1-based): a mode-local sign flip."""
    if not (1 <= j <= n):
        raise ValueError(f"mode {j} out of range for {n} modes")
    rows = [
        [(-ONE if (i == j - 1 and i == c) else ONE if i == c else ZERO) for c in range(n)]
        for i in range(n)
    ]
    return ExactMatrix(rows)
