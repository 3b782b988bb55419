"""Naive trial-division oracles shared by the tests.

The oracles use no sieve, so agreement with the sieved tables means something.
"""

import sys
from fractions import Fraction
from math import gcd

import pytest

from genlcm.arithfun import build_function_table
from genlcm.verify import random_user_table


def factorize(m):
    out, p = [], 2
    while p * p <= m:
        while m % p == 0:
            out.append(p)
            m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def naive_phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def naive_mobius(m):
    f = factorize(m)
    return 0 if len(f) != len(set(f)) else (-1) ** len(f)


def naive_big_omega(m):
    return len(factorize(m))


def naive_smith_g(m):
    return Fraction(sum(d * naive_mobius(d) for d in divisors(m)), m)


NAIVE = {
    "one": lambda m: 1,
    "id": lambda m: m,
    "mobius": naive_mobius,
    "liouville": lambda m: (-1) ** naive_big_omega(m),
    "big_omega": naive_big_omega,
    "tau": lambda m: len(divisors(m)),
    "sigma": lambda m: sum(divisors(m)),
    "phi": naive_phi,
    "smith_g": naive_smith_g,
}


PRESET_KINDS = ("one", "id", "liouville", "random0", "random1", "random2")


def preset_table(kind, n_max, seed=0):
    if kind.startswith("random"):
        return random_user_table(seed, int(kind[6:]), n_max)
    return build_function_table(kind, n_max)


@pytest.fixture(params=PRESET_KINDS)
def preset_kind(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[label])
