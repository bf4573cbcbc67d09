"""Negacyclic codes of even length: defining sets, generator polynomials and
matrices, the BCH bound, and the negacyclic DFT."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gf import GF, FieldElement, FieldError, embedding, field_make, in_subfield, prime_factors, root_of_unity
from .numtheory import cosets, is_coset_union, mult_order


class NegacyclicError(ValueError):
    pass


def _check_length(n: int) -> None:
    if n % 4 != 2 or n < 6:
        raise NegacyclicError(f"n = {n} must satisfy n = 2 (mod 4) and n >= 6")


def duadic_sets_theorem2(n: int) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """The two odd-like duadic defining sets and the fixed pair ``{n/2, 3n/2}``."""
    _check_length(n)
    two_n = 2 * n
    T1 = frozenset((1 + 2 * j) % two_n for j in range(-(n - 2) // 4, (n - 6) // 4 + 1))
    T2 = frozenset((1 + 2 * j) % two_n for j in range((n + 2) // 4, (3 * n - 6) // 4 + 1))
    X = frozenset({n // 2, 3 * n // 2})
    assert not T1 & T2
    assert T1 | T2 | X == set(range(1, two_n, 2))
    return T1, T2, X


def duadic_set_theorem7(n: int) -> frozenset[int]:
    _check_length(n)
    T = frozenset((1 + 2 * j) % (2 * n) for j in range((n + 2) // 4, (3 * n - 6) // 4 + 1))
    assert len(T) == n // 2 - 1
    return T


def bch_bound(T, two_n: int) -> int:
    """One plus the longest cyclic run of consecutive odd residues in ``T``."""
    T = set(T)
    if not T:
        return 1
    m = two_n // 2
    if len(T) == m:
        return m + 1
    best = 0
    for j in T:
        if (j - 2) % two_n in T:
            continue
        run, x = 0, j
        while x in T:
            run += 1
            x = (x + 2) % two_n
        best = max(best, run)
    return best + 1


# -- polynomials over a field, little-endian lists of encodings -------------

def poly_mul(F: GF, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def poly_eval(F: GF, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_divmod(F: GF, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quot = [0] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul(a[i], inv_lead)
        if c:
            quot[i - db] = c
            for k, bc in enumerate(b):
                a[i - db + k] = F.sub(a[i - db + k], F.mul(c, bc))
    rem = a[:db] if db else []
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def negacyclic_mul(F: GF, a: list[int], b: list[int]) -> list[int]:
    """Product in F[x]/(x^n + 1) for length-n coefficient vectors."""
    n = len(a)
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            t = F.mul(x, y)
            k = i + j
            if k >= n:
                out[k - n] = F.sub(out[k - n], t)
            else:
                out[k] = F.add(out[k], t)
    return out


def splitting_field(F: GF, n: int) -> tuple[GF, int]:
    """Smallest extension of ``F`` holding a primitive 2n-th root of unity,
    together with its degree over ``F``."""
    e = mult_order(F.order, 2 * n)
    if e == 1:
        return F, 1
    return field_make(F.p, F.m * e), e


@dataclass(frozen=True)
class NegacyclicCode:
    field: GF
    n: int
    T: frozenset[int]
    g: tuple[int, ...]  # monic, little-endian, base-field encodings
    delta: FieldElement  # primitive 2n-th root in the splitting field

    @property
    def k(self) -> int:
        return self.n - len(self.T)

    @property
    def splitting_field(self) -> GF:
        return self.delta.field


def build_negacyclic(F: GF, n: int, T) -> NegacyclicCode:
    """Generator polynomial ``prod_{j in T} (x - delta^j)`` mapped to ``F``."""
    T = frozenset(T)
    two_n = 2 * n
    if n < 1 or n % 2:
        raise NegacyclicError("length must be even")
    if gcd(two_n, F.order) != 1:
        raise NegacyclicError(f"gcd(2n, q) = gcd({two_n}, {F.order}) != 1")
    if not is_coset_union(T, F.order % two_n, two_n):
        raise NegacyclicError(f"{sorted(T)} is not a union of cyclotomic cosets mod {two_n}")
    E, _ = splitting_field(F, n)
    delta = root_of_unity(E, two_n)
    g = [1]
    for j in sorted(T):
        g = poly_mul(E, g, [E.neg(E.pow(delta.value, j)), 1])
    if E is not F:
        emb = embedding(F, E)
        back = {v: i for i, v in enumerate(emb)}
        down = []
        for c in g:
            if not in_subfield(FieldElement(E, c), F.m) or c not in back:
                raise FieldError("generator coefficient outside the base field")
            down.append(back[c])
        g = down
    return NegacyclicCode(F, n, T, tuple(g), delta)


def generator_matrix(C: NegacyclicCode) -> list[list[int]]:
    """Rows ``x^i g(x) mod (x^n + 1)`` for ``i < k``."""
    if C.k < 1:
        raise NegacyclicError("the zero code has no generator matrix")
    F, n = C.field, C.n
    rows = []
    for i in range(C.k):
        row = [0] * n
        for t, c in enumerate(C.g):
            pos = i + t
            if pos >= n:
                row[pos - n] = F.sub(row[pos - n], c)
            else:
                row[pos] = F.add(row[pos], c)
        rows.append(row)
    return rows


def check_defining_set(C: NegacyclicCode) -> bool:
    """``g(delta^j) == 0`` exactly for ``j`` in T (evaluated in the splitting field)."""
    E = C.splitting_field
    emb = embedding(C.field, E) if E is not C.field else None
    g = [emb[c] for c in C.g] if emb else list(C.g)
    for j in range(1, 2 * C.n, 2):
        zero = poly_eval(E, g, E.pow(C.delta.value, j)) == 0
        if zero != (j in C.T):
            return False
    return True


def divides_xn_plus_1(C: NegacyclicCode) -> bool:
    F = C.field
    xn1 = [1] + [0] * (C.n - 1) + [1]
    _, rem = poly_divmod(F, xn1, list(C.g))
    return not rem


@dataclass(frozen=True)
class Spectrum:
    values: tuple[int, ...]
    delta: FieldElement


def _check_delta(delta: FieldElement, n: int) -> None:
    E = delta.field
    d = delta.value
    if E.pow(d, 2 * n) != 1 or any(E.pow(d, 2 * n // ell) == 1 for ell in prime_factors(2 * n)):
        raise NegacyclicError("delta is not a primitive 2n-th root of unity")


def dft(a: list[int], delta: FieldElement) -> Spectrum:
    """``A_i = a(delta^(1+2i))``; ``a`` holds encodings in delta's field."""
    n = len(a)
    _check_delta(delta, n)
    E = delta.field
    return Spectrum(tuple(poly_eval(E, list(a), E.pow(delta.value, 1 + 2 * i)) for i in range(n)), delta)


def idft(S: Spectrum) -> list[int]:
    """``a_t = n^-1 * delta^-t * A(zeta^-t)`` with ``zeta = delta^2``."""
    A = list(S.values)
    n = len(A)
    delta = S.delta
    _check_delta(delta, n)
    E = delta.field
    ninv = E.inv(E.from_int(n))
    zeta = E.pow(delta.value, 2)
    out = []
    for t in range(n):
        v = poly_eval(E, A, E.pow(zeta, -t))
        out.append(E.mul(E.mul(ninv, E.pow(delta.value, -t)), v))
    return out


def coset_partition(F: GF, n: int) -> list[frozenset[int]]:
    return cosets(F.order % (2 * n), 2 * n)
