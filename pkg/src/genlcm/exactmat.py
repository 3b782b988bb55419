"""Dense square matrices of exact rationals, and the 0/1 divisibility matrices."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Sequence


class MatrixOrderError(ValueError):
    pass


class Mismatch(NamedTuple):
    """First differing cell of two matrices; i and j are 1-based."""

    i: int
    j: int
    lhs: Fraction
    rhs: Fraction


class ExactMatrix:
    """Immutable n x n matrix with Fraction entries.

    ``entry(i, j)`` uses the 1-based indices of the number theory; ``rows``
    exposes the underlying 0-based tuple of tuples.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise MatrixOrderError("matrix must have order >= 1")
        for row in rows:
            if len(row) != n:
                raise MatrixOrderError(f"row of length {len(row)} in a matrix of order {n}")
        self.n = n
        self.rows = rows

    @classmethod
    def _wrap(cls, rows: tuple[tuple[Fraction, ...], ...]) -> ExactMatrix:
        # rows already validated and made of Fractions
        m = object.__new__(cls)
        m.n = len(rows)
        m.rows = rows
        return m

    @classmethod
    def from_function(cls, n: int, func) -> ExactMatrix:
        """Matrix with entry(i, j) = func(i, j) for 1 <= i, j <= n."""
        if n < 1:
            raise MatrixOrderError("matrix must have order >= 1")
        return cls._wrap(
            tuple(tuple(Fraction(func(i, j)) for j in range(1, n + 1)) for i in range(1, n + 1))
        )

    def entry(self, i: int, j: int) -> Fraction:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"({i}, {j}) outside a matrix of order {self.n}")
        return self.rows[i - 1][j - 1]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix._wrap(tuple(zip(*self.rows)))

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self.rows == tuple(zip(*self.rows))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.rows) for j, x in enumerate(row) if i != j)

    def is_lower_triangular(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.rows) for x in row[i + 1 :])

    def diagonal_values(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def trace(self) -> Fraction:
        return sum(self.diagonal_values(), Fraction(0))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return multiply(self, other)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        _check_order(self, other)
        return ExactMatrix._wrap(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        from .formats import format_rational

        body = ", ".join("[" + ", ".join(format_rational(x) for x in row) + "]" for row in self.rows)
        return f"ExactMatrix([{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]


def _check_order(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.n != b.n:
        raise MatrixOrderError(f"order mismatch: {a.n} vs {b.n}")


def identity(n: int) -> ExactMatrix:
    return ExactMatrix.from_function(n, lambda i, j: int(i == j))


def ones(n: int) -> ExactMatrix:
    return ExactMatrix.from_function(n, lambda i, j: 1)


def divisibility_matrix(n: int) -> ExactMatrix:
    """C_n: entry(i, j) = 1 if j divides i, else 0."""
    return ExactMatrix.from_function(n, lambda i, j: int(i % j == 0))


def nondivisibility_matrix(n: int) -> ExactMatrix:
    """D_n: entry(i, j) = 1 if j does not divide i, else 0."""
    return ExactMatrix.from_function(n, lambda i, j: int(i % j != 0))


def diagonal(values: Sequence) -> ExactMatrix:
    values = [Fraction(v) for v in values]
    if not values:
        raise MatrixOrderError("diagonal needs at least one value")
    zero = Fraction(0)
    n = len(values)
    return ExactMatrix._wrap(
        tuple(tuple(values[i] if i == j else zero for j in range(n)) for i in range(n))
    )


def _scaled_integer_rows(m: ExactMatrix) -> tuple[int, list[list[int]]]:
    den = lcm(*(x.denominator for row in m.rows for x in row))
    return den, [[x.numerator * (den // x.denominator) for x in row] for row in m.rows]


def multiply(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product a @ b.

    Both factors are scaled to integer matrices over a common denominator,
    and zero entries are skipped, so products of the sparse 0/1 and diagonal
    factors cost far less than n^3 rational operations.
    """
    _check_order(a, b)
    n = a.n
    da, A = _scaled_integer_rows(a)
    db, B = _scaled_integer_rows(b)
    b_nonzero = [[(j, x) for j, x in enumerate(row) if x] for row in B]
    den = da * db
    out = []
    for arow in A:
        acc = [0] * n
        for k, aik in enumerate(arow):
            if aik:
                for j, bkj in b_nonzero[k]:
                    acc[j] += aik * bkj
        out.append(tuple(Fraction(x, den) for x in acc))
    return ExactMatrix._wrap(tuple(out))


def multiply_chain(*factors: ExactMatrix) -> ExactMatrix:
    """Left-to-right product of one or more matrices."""
    if not factors:
        raise ValueError("multiply_chain needs at least one factor")
    result = factors[0]
    for f in factors[1:]:
        result = multiply(result, f)
    return result


def transpose(a: ExactMatrix) -> ExactMatrix:
    return a.transpose()


def first_mismatch(a: ExactMatrix, b: ExactMatrix) -> Mismatch | None:
    """Smallest (i, j) in row-major order where a and b differ, or None."""
    _check_order(a, b)
    for i, (r, s) in enumerate(zip(a.rows, b.rows), start=1):
        if r != s:
            for j, (x, y) in enumerate(zip(r, s), start=1):
                if x != y:
                    return Mismatch(i, j, x, y)
    return None


def entrywise_equal(a: ExactMatrix, b: ExactMatrix) -> bool:
    return first_mismatch(a, b) is None
