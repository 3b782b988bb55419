"""
Arithmetical functions on 1..n_max, computed with a linear sieve.

Every table holds exact rationals, including the integer-valued ones, so
the Smith function g(n) = (1/n) * sum_{d | n} d*mu(d) needs no special case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .formats import format_rational

MAX_N = 10**6

KINDS = (
    "one",
    "id",
    "mobius",
    "liouville",
    "big_omega",
    "tau",
    "sigma",
    "phi",
    "smith_g",
    "user",
)

# kinds whose values are totally multiplicative by construction
TOTALLY_MULTIPLICATIVE = frozenset({"one", "id", "liouville", "user"})


class ArithFunError(ValueError):
    pass


@dataclass(frozen=True)
class FunctionTable:
    """Values g(1), ..., g(n_max) of one arithmetical function.

    ``values[k - 1]`` is g(k); calling the table, ``g(k)``, reads the same
    value with 1-based indexing.
    """

    kind: str
    n_max: int
    values: tuple[Fraction, ...]
    claims_totally_multiplicative: bool
    prime_values: Mapping[int, Fraction] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.values) != self.n_max:
            raise ArithFunError(
                f"table of length {len(self.values)} does not match n_max={self.n_max}"
            )

    def __call__(self, k: int) -> Fraction:
        if not 1 <= k <= self.n_max:
            raise IndexError(f"{self.name}({k}) is outside 1..{self.n_max}")
        return self.values[k - 1]

    def __len__(self):
        return self.n_max

    @property
    def name(self) -> str:
        """Identifier string that rebuilds this function via :func:`parse_function`."""
        if self.kind != "user":
            return self.kind
        items = ",".join(
            f"{p}={format_rational(v)}" for p, v in sorted(self.prime_values.items())
        )
        return f"user:{items}"

    def extended(self, n_max: int) -> FunctionTable:
        """The same function tabulated up to at least ``n_max``."""
        if n_max <= self.n_max:
            return self
        return build_function_table(self.kind, n_max, self.prime_values)

    def truncated(self, n_max: int) -> FunctionTable:
        if n_max >= self.n_max:
            return self
        return FunctionTable(
            self.kind,
            n_max,
            self.values[:n_max],
            self.claims_totally_multiplicative,
            self.prime_values,
        )


@dataclass(frozen=True)
class PrefixSums:
    n_max: int
    sums: tuple[Fraction, ...]  # sums[x] = g(1) + ... + g(x), sums[0] = 0

    def __call__(self, x: int) -> Fraction:
        """Sum of g(k) for k <= x; zero for x < 1."""
        if x < 1:
            return Fraction(0)
        return self.sums[x]


def linear_sieve(n_max: int) -> tuple[list[int], list[int]]:
    """Smallest prime factor of every m <= n_max, plus the primes found.

    spf[0] and spf[1] are 0.
    """
    spf = [0] * (n_max + 1)
    primes: list[int] = []
    for i in range(2, n_max + 1):
        if spf[i] == 0:
            spf[i] = i
            primes.append(i)
        si = spf[i]
        for p in primes:
            if p > si or p * i > n_max:
                break
            spf[p * i] = p
    return spf, primes


def _integer_values(kind: str, n_max: int, spf: list[int]) -> list[int]:
    # index 0 unused; one pass in increasing order, each m = p * (m // p)
    # with p = spf[m], so every value reads an already-computed smaller entry.
    vals = [0] * (n_max + 1)
    vals[1] = 1
    if kind == "big_omega":
        vals[1] = 0
        for m in range(2, n_max + 1):
            vals[m] = vals[m // spf[m]] + 1
        return vals
    if kind == "liouville":
        for m in range(2, n_max + 1):
            vals[m] = -vals[m // spf[m]]
        return vals
    if kind == "mobius":
        for m in range(2, n_max + 1):
            p = spf[m]
            r = m // p
            vals[m] = 0 if r % p == 0 else -vals[r]
        return vals

    # kinds needing the full power of the smallest prime: m = p^a * rest
    # with rest coprime to p; ppow[m] = p^a.
    ppow = [0] * (n_max + 1)
    ppow[1] = 1
    for m in range(2, n_max + 1):
        p = spf[m]
        r = m // p
        ppow[m] = ppow[r] * p if r % p == 0 else p
    if kind == "phi":
        local = lambda q, p: q - q // p
    elif kind == "tau":
        local = lambda q, p: _exponent(q, p) + 1
    elif kind == "sigma":
        local = lambda q, p: (q * p - 1) // (p - 1)
    elif kind == "smith_numerator":
        # n * smith_g(n) = prod_{p | n} (1 - p)
        local = lambda q, p: 1 - p
    else:
        raise ArithFunError(f"unknown function kind {kind!r}")
    for m in range(2, n_max + 1):
        q = ppow[m]
        vals[m] = vals[m // q] * local(q, spf[m])
    return vals


def _exponent(q: int, p: int) -> int:
    a = 0
    while q > 1:
        q //= p
        a += 1
    return a


def build_function_table(
    kind: str,
    n_max: int,
    user_prime_values: Mapping[int, Fraction | int | str] | None = None,
) -> FunctionTable:
    """Tabulate an arithmetical function on 1..n_max.

    For ``kind="user"`` the function is totally multiplicative and given by
    its values at the primes; composites follow from g(p^a q^b) = g(p)^a g(q)^b.
    """
    if kind not in KINDS:
        raise ArithFunError(f"unknown function kind {kind!r}")
    if not isinstance(n_max, int) or n_max < 1:
        raise ArithFunError(f"n_max must be a positive integer, got {n_max!r}")
    if n_max > MAX_N:
        raise ArithFunError(f"n_max={n_max} exceeds the sieve cap {MAX_N}")
    if (kind == "user") != (user_prime_values is not None):
        raise ArithFunError("user_prime_values is required for, and only for, kind='user'")

    claims = kind in TOTALLY_MULTIPLICATIVE
    if kind == "one":
        return FunctionTable(kind, n_max, (Fraction(1),) * n_max, claims)
    if kind == "id":
        return FunctionTable(kind, n_max, tuple(map(Fraction, range(1, n_max + 1))), claims)

    spf, primes = linear_sieve(n_max)
    if kind == "user":
        pv = {int(p): Fraction(v) for p, v in user_prime_values.items()}
        missing = [p for p in primes if p not in pv]
        if missing:
            raise ArithFunError(
                f"user function has no value for prime(s) {missing[:5]}"
                + (" ..." if len(missing) > 5 else "")
            )
        vals = [Fraction(0)] * (n_max + 1)
        vals[1] = Fraction(1)
        for m in range(2, n_max + 1):
            p = spf[m]
            vals[m] = vals[m // p] * pv[p]
        return FunctionTable(kind, n_max, tuple(vals[1:]), claims, pv)

    if kind == "smith_g":
        num = _integer_values("smith_numerator", n_max, spf)
        values = tuple(Fraction(num[m], m) for m in range(1, n_max + 1))
        return FunctionTable(kind, n_max, values, claims)

    ints = _integer_values(kind, n_max, spf)
    return FunctionTable(kind, n_max, tuple(map(Fraction, ints[1:])), claims)


def prefix_sums(table: FunctionTable) -> PrefixSums:
    sums = [Fraction(0)] * (table.n_max + 1)
    acc = Fraction(0)
    for k, v in enumerate(table.values, start=1):
        acc += v
        sums[k] = acc
    return PrefixSums(table.n_max, tuple(sums))


def is_totally_multiplicative(table: FunctionTable, upto: int | None = None) -> bool:
    """Check g(1) = 1 and g(ab) = g(a) g(b) for every a*b <= upto (default n_max)."""
    n = table.n_max if upto is None else min(upto, table.n_max)
    v = table.values
    if v[0] != 1:
        return False
    for a in range(2, n + 1):
        ga = v[a - 1]
        for b in range(a, n // a + 1):
            if v[a * b - 1] != ga * v[b - 1]:
                return False
    return True


def parse_function(identifier: str, n_max: int) -> FunctionTable:
    """Build a table from a function identifier.

    Accepts the kind names in :data:`KINDS` and ``user:p1=v1,p2=v2,...`` with
    rational values written as ``a/b``.
    """
    identifier = identifier.strip()
    if identifier.startswith("user:"):
        return build_function_table("user", n_max, parse_prime_values(identifier[5:]))
    if identifier == "user":
        raise ArithFunError("a user function needs prime values: user:2=a/b,3=c/d,...")
    return build_function_table(identifier, n_max)


def parse_prime_values(text: str) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            p, v = item.split("=")
            out[int(p)] = Fraction(v)
        except ValueError as exc:
            raise ArithFunError(f"bad prime value {item!r}; expected p=a/b") from exc
    return out

