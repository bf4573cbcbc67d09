"""Shared independent oracles.

These deliberately avoid the package's table-driven arithmetic: field
products are schoolbook polynomial multiplication reduced by long division.
"""

from __future__ import annotations

import itertools

import pytest


def poly_mulmod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    m = len(modulus) - 1
    for d in range(len(out) - 1, m - 1, -1):
        c = out[d]
        if c:
            for i in range(m + 1):
                out[d - m + i] = (out[d - m + i] - c * modulus[i]) % p
    return (out + [0] * m)[:m]


def to_digits(v, p, m):
    return [(v // p**i) % p for i in range(m)]


def from_digits(ds, p):
    return sum(c * p**i for i, c in enumerate(ds))


def oracle_mul(F, a, b):
    if F.m == 1:
        return a * b % F.p
    return from_digits(poly_mulmod(to_digits(a, F.p, F.m), to_digits(b, F.p, F.m),
                                   list(F.modulus), F.p), F.p)


def oracle_pow(F, a, e):
    r = 1
    for _ in range(e):
        r = oracle_mul(F, r, a)
    return r


def has_root_free_factorization(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(f)
            for k in range(len(r) - 1, d - 1, -1):
                c = r[k]
                if c:
                    for i in range(d + 1):
                        r[k - d + i] = (r[k - d + i] - c * g[i]) % p
            if not any(r[:d]):
                return False
    return True


@pytest.fixture
def oracle():
    import types

    return types.SimpleNamespace(mul=oracle_mul, pow=oracle_pow, irreducible=has_root_free_factorization)


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion; the line is
    printed immediately and repeated in the terminal summary."""

    def record(num: int, passed: bool, detail: str) -> bool:
        line = f"ACCEPTANCE {num}: {'PASS' if passed else 'FAIL'} - {detail}"
        ACCEPTANCE[num] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])
