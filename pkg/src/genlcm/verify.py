"""
Brute-force oracles and the identity suite.

Each claim builds two sides independently and compares them exactly. The
oracles loop over k and test divisibility directly, with no lcm shortcut, so
agreement with the closed entry formulas is evidence rather than a tautology.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Callable, Iterator

from .arithfun import FunctionTable, build_function_table, parse_function
from .builders import (
    build_f1_factorization,
    build_f1_matrix,
    build_f2_factorization,
    build_f2_matrix,
    build_gcd_matrix,
    build_lcm_matrix,
    build_lcm_structure_product,
)
from .dets import bareiss_det, lcm_det_factorial_form, lcm_det_product_form, rational_product
from .exactmat import ExactMatrix, first_mismatch
from .formats import format_rational

DEFAULT_G_KINDS = ("one", "id", "liouville", "random0", "random1", "random2")


class UnknownClaimError(ValueError):
    pass


# -- oracles -----------------------------------------------------------------


def oracle_f1_entry(n: int, i: int, j: int, g: FunctionTable) -> Fraction:
    """Sum of g(k) over k <= n divisible by both i and j."""
    return sum((g(k) for k in range(1, n + 1) if k % i == 0 and k % j == 0), Fraction(0))


def oracle_f2_entry(n: int, i: int, j: int, g: FunctionTable) -> Fraction:
    """Sum of g(k) over k <= n divisible by neither i nor j."""
    return sum((g(k) for k in range(1, n + 1) if k % i and k % j), Fraction(0))


def oracle_f1_matrix(n: int, g: FunctionTable) -> ExactMatrix:
    return ExactMatrix.from_function(n, lambda i, j: oracle_f1_entry(n, i, j, g))


def oracle_f2_matrix(n: int, g: FunctionTable) -> ExactMatrix:
    return ExactMatrix.from_function(n, lambda i, j: oracle_f2_entry(n, i, j, g))


def cofactor_det(rows) -> Fraction:
    """Laplace expansion along the first row; exponential, for small oracles only."""
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def triangular_shortcut_entry(n: int, i: int, j: int) -> int:
    """T(n // [i,j]) with T(m) = m(m+1)/2; the g = id entry lacks the factor [i,j]."""
    m = n // (i * j // gcd(i, j))
    return m * (m + 1) // 2


def tau_shortcut_entry(n: int, i: int, j: int) -> int:
    """tau(n) - tau(n // i) - tau(n // j) + n // [i,j], a divisor-count variant of the g = 1
    f2 entry that does not match the count it is meant to express."""

    def tau(m):
        return sum(1 for d in range(1, m + 1) if m % d == 0)

    return tau(n) - tau(n // i) - tau(n // j) + n // (i * j // gcd(i, j))


def sigma_shortcut_entry(n: int, i: int, j: int) -> int:
    """sigma(n) - sigma(n // i) - sigma(n // j) + T(n // [i,j]), the divisor-sum
    variant of the g = id f2 entry; it also disagrees with the sum it stands for."""

    def sigma(m):
        return sum(d for d in range(1, m + 1) if m % d == 0)

    m = n // (i * j // gcd(i, j))
    return sigma(n) - sigma(n // i) - sigma(n // j) + m * (m + 1) // 2


def random_user_table(seed: int, index: int, n_max: int) -> FunctionTable:
    """Totally multiplicative g with random small rational values at the primes.

    Numerators come from {-3..3} minus 0, denominators from 1..3.
    """
    rng = random.Random(f"{seed}:{index}")
    primes = [p for p in range(2, n_max + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]
    values = {p: Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 3)) for p in primes}
    return build_function_table("user", n_max, values)


def resolve_g(g_kind: str, n_max: int, seed: int = 0) -> FunctionTable:
    """Table for a suite function identifier; ``random<k>`` is the k-th seeded random g."""
    if g_kind.startswith("random") and g_kind[6:].isdigit():
        return random_user_table(seed, int(g_kind[6:]), n_max)
    return parse_function(g_kind, n_max)


# -- reports -----------------------------------------------------------------


@dataclass
class VerifyReport:
    claim: str
    n: int
    g_kind: str | None
    status: str  # "pass" | "fail"
    mismatch: tuple | None = None  # (i, j, lhs, rhs); i, j are None for scalars
    elapsed: float = 0.0
    check: str = ""  # which comparison the mismatch belongs to
    expected_divergence: bool = False

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self, with_elapsed: bool = False) -> dict:
        obj = {"claim": self.claim, "n": self.n, "g_kind": self.g_kind, "status": self.status}
        if self.mismatch is not None:
            i, j, lhs, rhs = self.mismatch
            obj["mismatch"] = {
                "i": i,
                "j": j,
                "lhs": format_rational(lhs),
                "rhs": format_rational(rhs),
            }
            obj["check"] = self.check
        else:
            obj["mismatch"] = None
        if self.expected_divergence:
            obj["expected_divergence"] = True
        if with_elapsed:
            obj["elapsed"] = round(self.elapsed, 6)
        return obj

    def to_json(self, with_elapsed: bool = False) -> str:
        return json.dumps(self.to_json_obj(with_elapsed), sort_keys=True)


@dataclass
class SuiteConfig:
    max_n: int = 8
    g_kinds: tuple[str, ...] = ("one", "id", "liouville")
    seed: int = 0
    claims: tuple[str, ...] = ()  # empty means every claim
    min_n: int = 1

    def __post_init__(self):
        if self.max_n < 1 or self.min_n < 1:
            raise ValueError("max_n and min_n must be >= 1")
        self.claims = tuple(self.claims) or tuple(CLAIMS)
        unknown = [c for c in self.claims if c not in CLAIMS]
        if unknown:
            raise UnknownClaimError(f"unknown claim(s): {', '.join(unknown)}")
        self.g_kinds = tuple(self.g_kinds)


# -- claims ------------------------------------------------------------------
#
# A claim maps (n, g) to a list of named checks; each check yields the two
# sides, both matrices or both scalars.

Check = tuple[str, object, object]


@dataclass(frozen=True)
class Claim:
    name: str
    checks: Callable[..., Iterator[Check]]
    uses_g: bool = False
    divergent: bool = False  # the two sides are expected to differ
    description: str = ""


def _f1_factorization(n, g):
    yield "entries", build_f1_matrix(n, g, check=False), build_f1_factorization(
        n, g, check=False
    ).product()


def _f1_oracle(n, g):
    yield "entries", build_f1_matrix(n, g, check=False), oracle_f1_matrix(n, g)


def _f1_det(n, g):
    yield "det", bareiss_det(build_f1_matrix(n, g, check=False)).value, rational_product(
        g.values[:n]
    )


def _f2_factorization(n, g):
    yield "entries", build_f2_matrix(n, g, check=False), build_f2_factorization(
        n, g, check=False
    ).product()


def _f2_oracle(n, g):
    yield "entries", build_f2_matrix(n, g, check=False), oracle_f2_matrix(n, g)


def _f2_det_zero(n, g):
    m = build_f2_matrix(n, g, check=False)
    yield "first_row", m.rows[0], (Fraction(0),) * n
    yield "det", bareiss_det(m).value, Fraction(0)


def _smith_det(n, g):
    phi = build_function_table("phi", n)
    yield "det", bareiss_det(build_gcd_matrix(n)).value, rational_product(phi.values)


def _lcm_det_factorial(n, g):
    yield "det", bareiss_det(build_lcm_matrix(n)).value, lcm_det_factorial_form(n)


def _lcm_det_two_forms(n, g):
    yield "det", lcm_det_factorial_form(n), lcm_det_product_form(n)


def _lcm_structure(n, g):
    yield "entries", build_lcm_structure_product(n).product(), build_lcm_matrix(n)


def _floor_matrix(n, g):
    one = build_function_table("one", n)
    m = build_f1_matrix(n, one)
    yield "entries", m, ExactMatrix.from_function(n, lambda i, j: n // (i * j // gcd(i, j)))
    yield "det", bareiss_det(m).value, Fraction(1)


def _identity_g(n, g):
    ident = build_function_table("id", n)
    m = build_f1_matrix(n, ident)

    def entry(i, j):
        L = i * j // gcd(i, j)
        return L * triangular_shortcut_entry(n, i, j)

    yield "entries", m, ExactMatrix.from_function(n, entry)
    yield "det", bareiss_det(m).value, Fraction(factorial(n))


def _liouville_f1(n, g):
    lam = build_function_table("liouville", n)
    omega = build_function_table("big_omega", n)
    m = build_f1_matrix(n, lam)
    yield "entries", m, build_f1_factorization(n, lam).product()
    yield "det", bareiss_det(m).value, Fraction((-1) ** int(sum(omega.values)))


def _f2_count(n, g):
    m = build_f2_matrix(n, build_function_table("one", n))
    count = ExactMatrix.from_function(
        n, lambda i, j: sum(1 for k in range(1, n + 1) if k % i and k % j)
    )
    yield "entries", m, count


def _f2_identity_g(n, g):
    m = build_f2_matrix(n, build_function_table("id", n))
    yield "entries", m, oracle_f2_matrix(n, build_function_table("id", n))


def _f2_liouville(n, g):
    lam = build_function_table("liouville", n)
    m = build_f2_matrix(n, lam)
    yield "entries", m, oracle_f2_matrix(n, lam)
    yield "factorization", m, build_f2_factorization(n, lam).product()


def _triangular_shortcut(n, g):
    m = build_f1_matrix(n, build_function_table("id", n))
    yield "entries", m, ExactMatrix.from_function(n, lambda i, j: triangular_shortcut_entry(n, i, j))


def _tau_shortcut(n, g):
    m = build_f2_matrix(n, build_function_table("one", n))
    yield "entries", m, ExactMatrix.from_function(n, lambda i, j: tau_shortcut_entry(n, i, j))


def _sigma_shortcut(n, g):
    m = build_f2_matrix(n, build_function_table("id", n))
    yield "entries", m, ExactMatrix.from_function(n, lambda i, j: sigma_shortcut_entry(n, i, j))


CLAIMS: dict[str, Claim] = {
    c.name: c
    for c in (
        Claim("eq1_smith_det", _smith_det, description="det GCD matrix = prod phi(k)"),
        Claim(
            "lcm_det_factorial",
            _lcm_det_factorial,
            description="det LCM matrix = (n!)^2 prod smith_g(k)",
        ),
        Claim(
            "lcm_det_two_forms",
            _lcm_det_two_forms,
            description="(n!)^2 prod smith_g(k) = prod phi(k) prod_{p|k} (-p)",
        ),
        Claim("lcm_structure", _lcm_structure, description="diag C diag(smith_g) C^T diag = LCM"),
        Claim("f1_factorization", _f1_factorization, uses_g=True, description="f1 = C^T diag(g) C"),
        Claim("f1_oracle", _f1_oracle, uses_g=True, description="f1 entries = divisor loop"),
        Claim("f1_det", _f1_det, uses_g=True, description="det f1 = prod g(k)"),
        Claim("f2_factorization", _f2_factorization, uses_g=True, description="f2 = D^T diag(g) D"),
        Claim("f2_oracle", _f2_oracle, uses_g=True, description="f2 entries = non-divisor loop"),
        Claim("f2_det_zero", _f2_det_zero, uses_g=True, description="f2 row 1 and det are 0"),
        Claim("f1_floor_matrix", _floor_matrix, description="g=1: floor(n/[i,j]), det 1"),
        Claim("f1_identity_g", _identity_g, description="g=id: [i,j] T(n//[i,j]), det n!"),
        Claim("f1_liouville", _liouville_f1, description="g=lambda: det (-1)^sum Omega"),
        Claim("f2_floor_count", _f2_count, description="g=1: f2 = #{k: i,j do not divide k}"),
        Claim("f2_identity_g", _f2_identity_g, description="g=id: f2 = non-divisor loop"),
        Claim("f2_liouville", _f2_liouville, description="g=lambda: f2 = loop = D^T diag D"),
        Claim(
            "triangular_shortcut_divergence",
            _triangular_shortcut,
            divergent=True,
            description="T(n//[i,j]) alone vs the g=id f1 entry",
        ),
        Claim(
            "tau_shortcut_divergence",
            _tau_shortcut,
            divergent=True,
            description="tau shortcut vs the g=1 f2 entry",
        ),
        Claim(
            "sigma_shortcut_divergence",
            _sigma_shortcut,
            divergent=True,
            description="sigma shortcut vs the g=id f2 entry",
        ),
    )
}


def _compare(lhs, rhs) -> tuple | None:
    if isinstance(lhs, ExactMatrix):
        mm = first_mismatch(lhs, rhs)
        return None if mm is None else tuple(mm)
    if isinstance(lhs, tuple):
        for j, (x, y) in enumerate(zip(lhs, rhs), start=1):
            if x != y:
                return (1, j, x, y)
        return None
    return None if lhs == rhs else (None, None, lhs, rhs)


def check_claim(claim: str, n: int, g: FunctionTable | None = None) -> VerifyReport:
    """Run one claim at one order and return its report."""
    if claim not in CLAIMS:
        raise UnknownClaimError(f"unknown claim {claim!r}")
    spec = CLAIMS[claim]
    if spec.uses_g and g is None:
        raise ValueError(f"claim {claim} needs a function g")
    g_name = g.name if spec.uses_g else None
    start = time.perf_counter()
    mismatch, which = None, ""
    for which, lhs, rhs in spec.checks(n, g):
        mismatch = _compare(lhs, rhs)
        if mismatch is not None:
            break
    elapsed = time.perf_counter() - start
    if spec.divergent:
        return VerifyReport(
            claim, n, g_name, "pass", mismatch, elapsed, which if mismatch else "",
            expected_divergence=mismatch is not None,
        )
    status = "pass" if mismatch is None else "fail"
    return VerifyReport(claim, n, g_name, status, mismatch, elapsed, which if mismatch else "")


def run_suite(config: SuiteConfig) -> list[VerifyReport]:
    """Every (claim, n, g) cell of the config, in canonical order.

    Order is: claims as given, then g kinds as given, then increasing n.
    """
    tables = {k: resolve_g(k, config.max_n, config.seed) for k in config.g_kinds}
    reports = []
    for claim in config.claims:
        kinds = config.g_kinds if CLAIMS[claim].uses_g else (None,)
        for kind in kinds:
            g = tables[kind] if kind is not None else None
            for n in range(config.min_n, config.max_n + 1):
                rep = check_claim(claim, n, g)
                if kind is not None:
                    rep.g_kind = kind
                reports.append(rep)
    return reports


def reports_to_jsonl(reports: list[VerifyReport], with_elapsed: bool = False) -> str:
    return "".join(r.to_json(with_elapsed) + "\n" for r in reports)


def summary_table(reports: list[VerifyReport]) -> str:
    rows: dict[tuple[str, str], list[int]] = {}
    for r in reports:
        key = (r.claim, r.g_kind or "-")
        cell = rows.setdefault(key, [0, 0, 0])
        cell[0 if r.passed else 1] += 1
        cell[2] += r.expected_divergence
    w = max([len("claim")] + [len(c) for c, _ in rows])
    wg = max([len("g")] + [len(k) for _, k in rows])
    lines = [f"{'claim':<{w}}  {'g':<{wg}}  {'pass':>5}  {'fail':>5}  {'diverged':>8}"]
    for (claim, kind), (p, f, d) in rows.items():
        lines.append(f"{claim:<{w}}  {kind:<{wg}}  {p:>5}  {f:>5}  {d:>8}")
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines) + "\n"
