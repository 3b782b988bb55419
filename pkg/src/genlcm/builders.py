"""
GCD, LCM and generalized LCM matrices built from their entry formulas, and
the factorizations that reproduce them.

The f1 family has entries g([i,j]) * G(n // [i,j]) where G(x) is the partial
sum of g up to x; the f2 family is the inclusion-exclusion

    G(n) - g(i) G(n // i) - g(j) G(n // j) + g([i,j]) G(n // [i,j]).

Both are computed from the formulas, never by multiplying factors, so that
comparing a matrix with its factorization is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arithfun import (
    ArithFunError,
    FunctionTable,
    build_function_table,
    is_totally_multiplicative,
    prefix_sums,
)
from .exactmat import (
    ExactMatrix,
    diagonal,
    divisibility_matrix,
    multiply_chain,
    nondivisibility_matrix,
)

FAMILY_TAGS = ("gcd", "lcm", "f1", "f2")


class TableTooShortError(ArithFunError):
    pass


class NotTotallyMultiplicativeError(ArithFunError):
    pass


@dataclass(frozen=True)
class MatrixFamily:
    tag: str
    g: FunctionTable | None = None

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family {self.tag!r}; choose from {', '.join(FAMILY_TAGS)}")
        if self.tag in ("f1", "f2"):
            if self.g is None:
                raise ValueError(f"family {self.tag} needs a function g")
            if not self.g.claims_totally_multiplicative:
                raise NotTotallyMultiplicativeError(
                    f"family {self.tag} needs a totally multiplicative g, got {self.g.name}"
                )

    def build(self, n: int) -> ExactMatrix:
        if self.tag == "gcd":
            return build_gcd_matrix(n, self.g)
        if self.tag == "lcm":
            return build_lcm_matrix(n, self.g)
        if self.tag == "f1":
            return build_f1_matrix(n, self.g)
        return build_f2_matrix(n, self.g)


@dataclass(frozen=True)
class Factorization:
    """left @ middle @ right, optionally wrapped as outer[0] @ ... @ outer[1]."""

    left: ExactMatrix
    middle: ExactMatrix
    right: ExactMatrix
    outer: tuple[ExactMatrix, ExactMatrix] | None = None
    names: tuple[str, str, str] = ("left", "middle", "right")

    def __post_init__(self):
        orders = {self.left.n, self.middle.n, self.right.n}
        if self.outer is not None:
            orders |= {self.outer[0].n, self.outer[1].n}
            if not all(d.is_diagonal() for d in self.outer):
                raise ValueError("outer factors must be diagonal")
        if len(orders) != 1:
            raise ValueError(f"factors have unequal orders {sorted(orders)}")
        if not self.middle.is_diagonal():
            raise ValueError("middle factor must be diagonal")

    @property
    def order(self) -> int:
        return self.left.n

    def factors(self) -> list[tuple[str, ExactMatrix]]:
        named = list(zip(self.names, (self.left, self.middle, self.right)))
        if self.outer is not None:
            named = [("outer_left", self.outer[0]), *named, ("outer_right", self.outer[1])]
        return named

    def product(self) -> ExactMatrix:
        return multiply_chain(*(m for _, m in self.factors()))


def _lcm(i: int, j: int) -> int:
    return i // gcd(i, j) * j


def _table_upto(f: FunctionTable, needed: int, what: str) -> FunctionTable:
    if f.n_max >= needed:
        return f
    try:
        return f.extended(needed)
    except ArithFunError as exc:
        raise TableTooShortError(
            f"{what} needs {f.name} up to {needed}, table stops at {f.n_max}: {exc}"
        ) from exc


def _require_totally_multiplicative(g: FunctionTable, n: int) -> None:
    if not (g.claims_totally_multiplicative and is_totally_multiplicative(g, upto=n)):
        raise NotTotallyMultiplicativeError(
            f"{g.name} is not totally multiplicative on 1..{n}"
        )


def build_gcd_matrix(n: int, f: FunctionTable | None = None) -> ExactMatrix:
    """entry(i, j) = f(gcd(i, j)); the bare GCD matrix when f is None."""
    if f is None:
        return ExactMatrix.from_function(n, gcd)
    if f.n_max < n:
        raise TableTooShortError(f"GCD matrix of order {n} needs {f.name} up to {n}")
    return ExactMatrix.from_function(n, lambda i, j: f(gcd(i, j)))


def build_lcm_matrix(n: int, f: FunctionTable | None = None) -> ExactMatrix:
    """entry(i, j) = f(lcm(i, j)); the bare LCM matrix when f is None.

    Sieved tables are extended to the largest lcm needed, n(n-1).
    """
    if f is None:
        return ExactMatrix.from_function(n, _lcm)
    f = _table_upto(f, max(n, n * (n - 1)), "LCM matrix")
    return ExactMatrix.from_function(n, lambda i, j: f(_lcm(i, j)))


def _checked_g(n: int, g: FunctionTable, check: bool) -> FunctionTable:
    if n < 1:
        raise ValueError("order must be >= 1")
    g = _table_upto(g, n, f"order {n}")
    if check:
        _require_totally_multiplicative(g, n)
    return g.truncated(n)


def build_f1_matrix(n: int, g: FunctionTable, *, check: bool = True) -> ExactMatrix:
    """entry(i, j) = g([i,j]) * sum_{k <= n/[i,j]} g(k), and 0 when [i,j] > n.

    ``check=False`` skips the total multiplicativity test, which the
    verification suite uses to show what goes wrong without it.
    """
    g = _checked_g(n, g, check)
    S = prefix_sums(g)

    def entry(i, j):
        L = _lcm(i, j)
        return g(L) * S(n // L) if L <= n else 0

    return ExactMatrix.from_function(n, entry)


def build_f2_matrix(n: int, g: FunctionTable, *, check: bool = True) -> ExactMatrix:
    g = _checked_g(n, g, check)
    S = prefix_sums(g)
    total = S(n)
    partial = [None] + [g(i) * S(n // i) for i in range(1, n + 1)]

    def entry(i, j):
        L = _lcm(i, j)
        last = g(L) * S(n // L) if L <= n else 0
        return total - partial[i] - partial[j] + last

    return ExactMatrix.from_function(n, entry)


def build_f1_factorization(n: int, g: FunctionTable, *, check: bool = True) -> Factorization:
    """(C_n^T, diag(g(1..n)), C_n)."""
    g = _checked_g(n, g, check)
    C = divisibility_matrix(n)
    return Factorization(C.T, diagonal(g.values), C, names=("C_n^T", "diag(g)", "C_n"))


def build_f2_factorization(n: int, g: FunctionTable, *, check: bool = True) -> Factorization:
    """(D_n^T, diag(g(1..n)), D_n)."""
    g = _checked_g(n, g, check)
    D = nondivisibility_matrix(n)
    return Factorization(D.T, diagonal(g.values), D, names=("D_n^T", "diag(g)", "D_n"))


def build_lcm_structure_product(n: int) -> Factorization:
    """diag(1..n) C_n diag(smith_g) C_n^T diag(1..n), equal to the bare LCM matrix.

    With A = C_n diag(sqrt(smith_g)) this is diag A A^T diag, written without
    the square roots (smith_g(2) = -1/2 is negative) so it stays rational.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    g = build_function_table("smith_g", n)
    C = divisibility_matrix(n)
    scale = diagonal(range(1, n + 1))
    return Factorization(
        C,
        diagonal(g.values),
        C.T,
        outer=(scale, scale),
        names=("C_n", "diag(smith_g)", "C_n^T"),
    )


def build_factorization(tag: str, n: int, g: FunctionTable | None = None) -> Factorization:
    if tag == "f1":
        return build_f1_factorization(n, g)
    if tag == "f2":
        return build_f2_factorization(n, g)
    if tag == "lcm" and (g is None or g.kind == "id"):
        return build_lcm_structure_product(n)
    raise ValueError(f"no factorization is known for family {tag!r}" + (f" with f={g.name}" if g else ""))
