"""Exact determinants: Bareiss elimination and the known closed forms."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .arithfun import FunctionTable, build_function_table, linear_sieve
from .builders import MatrixFamily
from .exactmat import ExactMatrix
from .formats import format_rational

METHODS = (
    "bareiss",
    "closed_smith",
    "closed_lcm_factorial",
    "closed_lcm_product",
    "closed_f1",
    "closed_f2_zero",
)


class NoClosedFormError(ValueError):
    """Raised for a (family, f) pair without a known determinant formula."""


class ClosedFormInconsistency(RuntimeError):
    """The two LCM determinant formulas disagreed."""


@dataclass(frozen=True)
class DetResult:
    value: Fraction
    method: str
    order: int

    def to_json_obj(self) -> dict:
        return {"value": format_rational(self.value), "method": self.method, "order": self.order}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> DetResult:
        obj = json.loads(text)
        return cls(Fraction(obj["value"]), obj["method"], int(obj["order"]))


def integer_bareiss(A: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination.

    ``A`` is overwritten. Every intermediate entry is a minor of the input,
    so the exact divisions never leave the integers.
    """
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        row_k = A[k]
        for i in range(k + 1, n):
            row_i = A[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * A[n - 1][n - 1]


def bareiss_det(m: ExactMatrix) -> DetResult:
    """Exact determinant of a rational matrix.

    Each row is first multiplied by the lcm of its denominators; the
    integer determinant is then divided by the product of those scales.
    """
    scales = []
    A = []
    for row in m.rows:
        s = lcm(*(x.denominator for x in row))
        scales.append(s)
        A.append([x.numerator * (s // x.denominator) for x in row])
    det = integer_bareiss(A)
    scale = 1
    for s in scales:
        scale *= s
    return DetResult(Fraction(det, scale), "bareiss", m.n)


def tree_product(values) -> int:
    """Product of integers by balanced pairing; much faster than a running
    product once the result has hundreds of thousands of digits."""
    vals = list(values)
    if not vals:
        return 1
    while len(vals) > 1:
        paired = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            paired.append(vals[-1])
        vals = paired
    return vals[0]


def rational_product(values) -> Fraction:
    values = list(values)
    num = tree_product(v.numerator for v in values)
    den = tree_product(v.denominator for v in values)
    return Fraction(num, den)


def smith_det(n: int) -> Fraction:
    """phi(1) phi(2) ... phi(n): determinant of the n x n GCD matrix."""
    phi = build_function_table("phi", n)
    return rational_product(phi.values)


def lcm_det_factorial_form(n: int) -> Fraction:
    """(n!)^2 g(1) ... g(n) with g(k) = (1/k) sum_{d | k} d mu(d)."""
    g = build_function_table("smith_g", n)
    return factorial(n) ** 2 * rational_product(g.values)


def lcm_det_product_form(n: int) -> Fraction:
    """prod_{k <= n} phi(k) prod_{p | k} (-p)."""
    phi = build_function_table("phi", n)
    spf, _ = linear_sieve(n)
    terms = []
    for k in range(1, n + 1):
        t, rest = phi(k).numerator, k
        while rest > 1:
            p = spf[rest]
            t *= -p
            while rest % p == 0:
                rest //= p
        terms.append(t)
    return Fraction(tree_product(terms))


def closed_form_det(
    family: MatrixFamily | str, n: int, g: FunctionTable | None = None
) -> DetResult:
    """Determinant from a closed formula, without building the matrix.

    ``family`` is a :class:`MatrixFamily` or a tag; a family's own g is used
    when ``g`` is not given. For gcd and lcm only the bare matrices (f = id or
    no f) have formulas.
    """
    if isinstance(family, MatrixFamily):
        tag = family.tag
        g = g if g is not None else family.g
    else:
        tag = family
    if n < 1:
        raise ValueError("order must be >= 1")

    if tag in ("gcd", "lcm"):
        if g is not None and g.kind != "id":
            raise NoClosedFormError(f"no closed-form determinant for {tag} matrix of {g.name}")
        if tag == "gcd":
            return DetResult(smith_det(n), "closed_smith", n)
        a = lcm_det_factorial_form(n)
        b = lcm_det_product_form(n)
        if a != b:
            raise ClosedFormInconsistency(
                f"LCM determinant forms disagree at n={n}: {format_rational(a)} vs {format_rational(b)}"
            )
        return DetResult(a, "closed_lcm_factorial", n)

    if tag == "f1":
        if g is None or not g.claims_totally_multiplicative:
            raise NoClosedFormError("f1 determinant needs a totally multiplicative g")
        if g.n_max < n:
            g = g.extended(n)
        return DetResult(rational_product(g.values[:n]), "closed_f1", n)

    if tag == "f2":
        if g is None or not g.claims_totally_multiplicative:
            raise NoClosedFormError("f2 determinant needs a totally multiplicative g")
        return DetResult(Fraction(0), "closed_f2_zero", n)

    raise NoClosedFormError(f"unknown family {tag!r}")
