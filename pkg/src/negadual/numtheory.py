"""Multiplicative orders, cyclotomic cosets on the odd residues mod 2n, and
Type I / Type II splitting analysis for multipliers."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .gf import field_of_order, is_prime, prime_factors, solve_gamma_euclidean


class NumberTheoryError(ValueError):
    pass


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q == p**e``, or None."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def odd_prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 3), hi + 1) if q % 2 and prime_power(q) is not None]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def mult_order(q: int, modulus: int) -> int:
    if modulus < 2:
        raise NumberTheoryError("modulus must be at least 2")
    if gcd(q, modulus) != 1:
        raise NumberTheoryError(f"gcd({q}, {modulus}) != 1")
    r, x = 1, q % modulus
    while x != 1:
        x = x * q % modulus
        r += 1
    return r


def odd_residues(two_n: int) -> list[int]:
    return list(range(1, two_n, 2))


def cyclotomic_coset(b: int, two_n: int, j: int) -> frozenset[int]:
    if gcd(b, two_n) != 1:
        raise NumberTheoryError(f"gcd({b}, {two_n}) != 1")
    if j % 2 == 0 or not 0 < j < two_n:
        raise NumberTheoryError(f"{j} is not an odd residue in (0, {two_n})")
    out = set()
    x = j
    while x not in out:
        out.add(x)
        x = x * b % two_n
    return frozenset(out)


def cosets(b: int, two_n: int) -> list[frozenset[int]]:
    """Partition of the odd residues into cosets, ordered by least element."""
    seen: set[int] = set()
    out = []
    for j in odd_residues(two_n):
        if j not in seen:
            c = cyclotomic_coset(b, two_n, j)
            seen |= c
            out.append(c)
    return out


def is_coset_union(T, b: int, two_n: int) -> bool:
    T = set(T)
    return all(j % 2 == 1 and 0 < j < two_n for j in T) and all(j * b % two_n in T for j in T)


@dataclass
class SplittingReport:
    n: int
    q: int
    s: int
    base: int
    cosets: list[frozenset[int]]
    cycles: list[list[int]]  # indices into ``cosets``
    type_I_possible: bool
    type_II_possible: bool
    witness_I: tuple[frozenset[int], frozenset[int], frozenset[int]] | None = None
    witness_II: tuple[frozenset[int], frozenset[int], frozenset[int]] | None = None

    def cycle_structure(self) -> list[list[list[int]]]:
        return [[sorted(self.cosets[i]) for i in cyc] for cyc in self.cycles]


def _alternate(cycles, cset, skip=()) -> tuple[frozenset[int], frozenset[int]]:
    A: set[int] = set()
    B: set[int] = set()
    for cyc in cycles:
        if cyc[0] in skip:
            continue
        for pos, idx in enumerate(cyc):
            (A if pos % 2 == 0 else B).update(cset[idx])
    return frozenset(A), frozenset(B)


def classify_multiplier(n: int, q: int, s: int, base: str | int = "q") -> SplittingReport:
    """Decide which splitting types the multiplier ``j -> s*j`` admits.

    ``base`` selects the coset generator: ``"q"`` or ``"q2"`` (or an explicit
    integer).  Witness partitions alternate along each orbit cycle.
    """
    two_n = 2 * n
    if gcd(two_n, q) != 1:
        raise NumberTheoryError(f"gcd(2n, q) = gcd({two_n}, {q}) != 1")
    if gcd(s, two_n) != 1:
        raise NumberTheoryError(f"gcd(s, 2n) = gcd({s}, {two_n}) != 1")
    if base == "q":
        b = q % two_n
    elif base in ("q2", "q^2"):
        b = q * q % two_n
    else:
        b = int(base) % two_n
    cset = cosets(b, two_n)
    where = {j: i for i, c in enumerate(cset) for j in c}
    perm = [where[min(c) * s % two_n] for c in cset]
    cycles = []
    seen: set[int] = set()
    for i in range(len(cset)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        k = perm[i]
        while k != i:
            cyc.append(k)
            seen.add(k)
            k = perm[k]
        cycles.append(cyc)

    type_I = all(len(c) % 2 == 0 for c in cycles)
    witness_I = None
    if type_I:
        A, B = _alternate(cycles, cset)
        witness_I = (A, B, frozenset())

    type_II = False
    witness_II = None
    if n % 4 == 2:
        X = {n // 2, 3 * n // 2}
        x_idx = {where[x] for x in X}
        covered = set().union(*(cset[i] for i in x_idx))
        if covered == X and {perm[i] for i in x_idx} == x_idx:
            rest = [c for c in cycles if c[0] not in x_idx]
            if all(len(c) % 2 == 0 for c in rest):
                type_II = True
                A, B = _alternate(rest, cset)
                witness_II = (A, B, frozenset(X))

    return SplittingReport(n, q, s, b, cset, cycles, type_I, type_II, witness_I, witness_II)


def verify_witness(report: SplittingReport, witness) -> bool:
    """Independent check of a witness partition against the splitting axioms."""
    A, B, X = (set(w) for w in witness)
    two_n = 2 * report.n
    if A & B or A & X or B & X or A | B | X != set(odd_residues(two_n)):
        return False
    if not all(is_coset_union(S, report.base, two_n) for S in (A, B, X)):
        return False
    mu = lambda S: {j * report.s % two_n for j in S}  # noqa: E731
    return mu(A) == B and mu(B) == A and mu(X) == X


def _check_half_odd(n: int) -> None:
    if n < 2 or n % 2 or (n // 2) % 2 == 0:
        raise NumberTheoryError(f"n = {n} is not twice an odd number")


@dataclass(frozen=True)
class Theorem1Verdict:
    minus1_typeII: bool
    nplus1_typeII: bool


def criterion_theorem1(n: int, q: int) -> Theorem1Verdict:
    """Order criteria for ``mu_{-1}`` and ``mu_{n+1}`` when q = 3 (mod 4).

    The ``-1`` test reads the order condition modulo 4.
    """
    if q % 4 != 3:
        raise NumberTheoryError("requires q = 3 (mod 4)")
    _check_half_odd(n)
    if gcd(n, q) != 1:
        raise NumberTheoryError(f"gcd({n}, {q}) != 1")
    r = mult_order(q, n)
    return Theorem1Verdict(minus1_typeII=r % 4 != 2, nplus1_typeII=r % 2 == 0)


def criterion_theorem1_componentwise(n: int, q: int) -> Theorem1Verdict:
    """Per-prime-power variant of :func:`criterion_theorem1`.

    Applies the order conditions to every ``ord_{2 p^e}(q)`` with ``p^e``
    exactly dividing ``n/2``.  Agrees with the orbit analysis on composite
    ``n`` where the single-order test does not.
    """
    if q % 4 != 3:
        raise NumberTheoryError("requires q = 3 (mod 4)")
    _check_half_odd(n)
    if gcd(n, q) != 1:
        raise NumberTheoryError(f"gcd({n}, {q}) != 1")
    orders = [mult_order(q, 2 * p**e) for p, e in factorize(n // 2).items()]
    return Theorem1Verdict(minus1_typeII=all(r % 4 != 2 for r in orders),
                           nplus1_typeII=all(r % 2 == 0 for r in orders))


@dataclass(frozen=True)
class Theorem4Verdict:
    typeI: bool
    typeII: bool


def criterion_theorem4(n: int, q: int) -> Theorem4Verdict:
    """Order criteria for ``mu_{-q}`` on the q^2-cyclotomic cosets."""
    _check_half_odd(n)
    if n // 2 <= 1:
        raise NumberTheoryError("requires n/2 > 1")
    if q % 2 == 0 or gcd(2 * n, q) != 1 or prime_power(q) is None:
        raise NumberTheoryError("q must be an odd prime power coprime to n")
    if q % 4 == 1:
        return Theorem4Verdict(True, True)
    ok = True
    for p in prime_factors(n // 2):
        period = mult_order(q, p)
        if any((pow(q, s, p) + 1) % p == 0 for s in range(1, 2 * period + 1, 2)):
            ok = False
            break
    return Theorem4Verdict(False, ok)


def prime_power_minus1_typeII(p: int, t: int, q: int) -> bool:
    """Type II verdict for ``mu_{-1}`` on n = 2p^t: ord_{2p^t}(q) != 2 (mod 4)."""
    return mult_order(q, 2 * p**t) % 4 != 2


def crt_multipliers(n: int, residues: dict[int, int]) -> list[int]:
    """Odd ``a`` in [1, 2n) with ``a = a_i (mod 2 p_i^e_i)`` for each prime
    power component of ``n``; ``residues`` maps ``p_i`` to ``a_i``.

    The moduli only pin ``a`` down modulo ``n``, so there are two lifts,
    ``a`` and ``a + n``, and they can act differently on O_2n.
    """
    fac = factorize(n // 2)
    out = [a for a in range(1, 2 * n, 2)
           if all((a - residues[p]) % (2 * p**e) == 0 for p, e in fac.items())]
    if not out:
        raise NumberTheoryError("no CRT solution")
    return out


def gamma_parity_criterion(q: int, n: int) -> bool:
    """Solvability of ``2 + gamma^2 n = 0`` as predicted by the order/parity rule."""
    _check_half_odd(n)
    if q % 4 == 1:
        return True
    odd3 = sum(e for p, e in factorize(n // 2).items() if p % 4 == 3)
    return odd3 % 2 == 1


@dataclass(frozen=True)
class GammaAuditRow:
    q: int
    n: int
    criterion_verdict: bool
    direct_verdict: bool
    gamma: int | None


@dataclass
class GammaAudit:
    rows: list[GammaAuditRow] = field(default_factory=list)

    @property
    def discrepancies(self) -> list[GammaAuditRow]:
        return [r for r in self.rows if r.criterion_verdict != r.direct_verdict]

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["q", "n", "criterion_verdict", "direct_verdict"])
            for r in self.discrepancies:
                w.writerow([r.q, r.n, int(r.criterion_verdict), int(r.direct_verdict)])


def gamma_criterion_audit(q_max: int, n_max: int, q_min: int = 3, n_min: int = 2) -> GammaAudit:
    """Compare direct solvability of ``2 + gamma^2 n = 0`` with the parity rule
    over odd prime powers ``q`` and ``n = 2n'`` (n' odd, p not dividing n)."""
    audit = GammaAudit()
    for q in odd_prime_powers(q_min, q_max):
        F = field_of_order(q)
        for n in range(max(2, n_min), n_max + 1):
            if n % 4 != 2 or n % F.p == 0:
                continue
            g = solve_gamma_euclidean(F, n)
            audit.rows.append(GammaAuditRow(q, n, gamma_parity_criterion(q, n), g is not None,
                                            None if g is None else g.value))
    return audit


def is_odd_prime(p: int) -> bool:
    return p > 2 and is_prime(p)
