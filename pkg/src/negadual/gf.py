"""Exact arithmetic in GF(p) and GF(p^m) for odd p.

Elements are handled internally as canonical integers
``sum(c_i * p**i)`` where ``c_0 .. c_{m-1}`` are the little-endian
coefficients in the polynomial basis of the modulus.  Extension fields carry
exp/log/Zech tables so that every operation is a table lookup.

:class:`FieldElement` is a thin wrapper for user-facing code; the hot paths
(linear algebra, code enumeration) work on the raw integers directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

MAX_ORDER = 10**6


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order (trial division)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), little-endian coefficient lists ---------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``f`` has no factor of degree <= deg(f)/2 over GF(p)."""
    f = _ptrim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xp = [0, 1]
    for _ in range(m // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``m`` when the lower coefficients are
    read as the integer ``sum(c_i * p**i)`` (highest-degree coefficient most
    significant)."""
    for code in range(p**m):
        coeffs = [(code // p**i) % p for i in range(m)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


class GF:
    """Descriptor of GF(p^m); construct through :func:`field_make`.

    Immutable after construction and safe to share between threads.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self._pows = [p**i for i in range(m)]
        self._prim: int | None = None
        if m > 1:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.from_digits(_pmulmod(list(da), list(db), list(self.modulus), self.p))

    def _raw_pow(self, a: int, e: int) -> int:
        r = _ppowmod(list(self.digits(a)), e, list(self.modulus), self.p)
        return self.from_digits(r)

    def _build_tables(self) -> None:
        q = self.order
        qm1 = q - 1
        ls = prime_factors(qm1)
        prim = None
        for g in range(2, q):
            if all(self._raw_pow(g, qm1 // ell) != 1 for ell in ls):
                prim = g
                break
        assert prim is not None
        self._prim = prim
        exp = [0] * (2 * qm1)
        log = [-1] * q
        v = 1
        for i in range(qm1):
            exp[i] = v
            log[v] = i
            v = self._raw_mul(v, prim)
        for i in range(qm1, 2 * qm1):
            exp[i] = exp[i - qm1]
        p = self.p
        zech = [-1] * qm1
        for i in range(qm1):
            w = exp[i]
            w1 = w - (p - 1) if w % p == p - 1 else w + 1
            zech[i] = log[w1] if w1 else -1
        self._exp, self._log, self._zech = exp, log, zech
        self._half = qm1 // 2

    # -- encodings --------------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(a % p)
            a //= p
        return tuple(out)

    def from_digits(self, ds: Sequence[int]) -> int:
        ds = list(ds)
        if len(ds) > self.m:
            raise FieldError("too many coefficients for this field")
        return sum((c % self.p) * self._pows[i] for i, c in enumerate(ds))

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def elem(self, v: int) -> "FieldElement":
        if not 0 <= v < self.order:
            raise FieldError(f"{v} is not a valid element encoding of GF({self.order})")
        return FieldElement(self, v)

    def elements(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.order))

    @property
    def primitive(self) -> int:
        if self._prim is None:
            self._prim = root_of_unity(self, self.order - 1).value
        return self._prim

    # -- arithmetic on encodings -----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        d = lb - la
        if d < 0:
            d += self.order - 1
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        return self._exp[self._log[a] * e % (self.order - 1)]

    def frobenius(self, a: int, r: int) -> int:
        """``a**r`` for ``r`` a power of the characteristic."""
        rr = r
        while rr > 1 and rr % self.p == 0:
            rr //= self.p
        if rr != 1:
            raise FieldError(f"{r} is not a power of {self.p}")
        return self.pow(a, r)

    def conj(self, a: int) -> int:
        """Conjugation ``a -> a**sqrt(order)`` of a square-order field."""
        return self.pow(a, self.sqrt_order)

    @property
    def sqrt_order(self) -> int:
        if self.m % 2:
            raise FieldError(f"GF({self.order}) is not a quadratic extension of a subfield")
        return self.p ** (self.m // 2)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def field_make(p: int, m: int = 1) -> GF:
    """Return GF(p^m) with the smallest monic irreducible modulus."""
    if p == 2:
        raise FieldError("characteristic 2 is not supported")
    if not is_prime(p):
        raise FieldError(f"{p} is not an odd prime")
    if m < 1:
        raise FieldError("degree must be positive")
    if p**m > MAX_ORDER:
        raise FieldError(f"GF({p}^{m}) exceeds the supported order {MAX_ORDER}")
    modulus = (0, 1) if m == 1 else smallest_irreducible(p, m)
    return GF(p, m, modulus)


def field_of_order(q: int) -> GF:
    """GF(q) for an odd prime power ``q``."""
    fs = prime_factors(q)
    if len(fs) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = fs[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return field_make(p, m)


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field is not self.field:
                raise FieldError("elements belong to different fields")
            return b.value
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, b):
        return self._wrap(self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return self._wrap(self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return self._wrap(self.field.sub(self._other(b), self.value))

    def __mul__(self, b):
        return self._wrap(self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return self._wrap(self.field.div(self.value, self._other(b)))

    def __rtruediv__(self, b):
        return self._wrap(self.field.div(self._other(b), self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, r: int) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.value, r))

    def __eq__(self, b) -> bool:
        if isinstance(b, FieldElement):
            return self.field is b.field and self.value == b.value
        if isinstance(b, int):
            return self.value == self.field.from_int(b)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@{self.field!r}"


def elem_arith(a: FieldElement, b: FieldElement | None, op: str, arg: int | None = None) -> FieldElement:
    """Dispatch one of add/sub/mul/div/inv/pow/frobenius by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** arg
    if op == "frobenius":
        return a.frobenius(arg)
    raise ValueError(f"unknown operation {op!r}")


def element_order(F: GF, a: int) -> int:
    if a == 0:
        raise FieldError("zero has no multiplicative order")
    qm1 = F.order - 1
    r = qm1
    for ell in prime_factors(qm1):
        while r % ell == 0 and F.pow(a, r // ell) == 1:
            r //= ell
    return r


def root_of_unity(F: GF, order: int) -> FieldElement:
    """Smallest-encoding element of exact multiplicative order ``order``."""
    if order < 1 or (F.order - 1) % order:
        raise FieldError(f"{order} does not divide {F.order - 1}; use an extension field")
    ls = prime_factors(order)
    for a in range(1, F.order):
        if F.pow(a, order) == 1 and all(F.pow(a, order // ell) != 1 for ell in ls):
            return FieldElement(F, a)
    raise FieldError("no root of unity found")  # pragma: no cover


def in_subfield(a: FieldElement, s: int) -> bool:
    """True iff ``a`` lies in the subfield GF(p^s)."""
    F = a.field
    if s < 1 or F.m % s:
        raise FieldError(f"GF({F.p}^{s}) is not a subfield of GF({F.p}^{F.m})")
    return F.pow(a.value, F.p**s) == a.value


def subfield_elements(F: GF, s: int) -> list[int]:
    """Encodings of GF(p^s) inside ``F``, ascending."""
    if s < 1 or F.m % s:
        raise FieldError(f"GF({F.p}^{s}) is not a subfield of GF({F.p}^{F.m})")
    r = F.p**s
    return [a for a in range(F.order) if F.pow(a, r) == a]


def root_scan(F: GF, target: int, e: int) -> int | None:
    """Smallest-encoding ``x`` with ``x**e == target``, or None."""
    for x in range(F.order):
        if F.pow(x, e) == target:
            return x
    return None


def _check_n(F: GF, n: int) -> None:
    if n <= 0 or n % 2:
        raise FieldError("n must be an even positive integer")
    if n % F.p == 0:
        raise FieldError(f"the characteristic {F.p} divides n = {n}")


def solve_gamma_euclidean(F: GF, n: int) -> FieldElement | None:
    """Solve ``2 + gamma**2 * n == 0``; the smaller encoding of the pair."""
    _check_n(F, n)
    target = F.neg(F.div(2 % F.p, F.from_int(n)))
    g = root_scan(F, target, 2)
    if g is None:
        return None
    assert F.add(2 % F.p, F.mul(F.mul(g, g), F.from_int(n))) == 0
    return FieldElement(F, g)


def solve_gamma_hermitian(F: GF, n: int) -> FieldElement:
    """Solve ``2 + gamma**(q+1) * n == 0`` in GF(q^2)."""
    if F.m % 2:
        raise FieldError(f"field order {F.order} is not a square")
    _check_n(F, n)
    q = F.sqrt_order
    target = F.neg(F.div(2 % F.p, F.from_int(n)))
    g = root_scan(F, target, q + 1)
    if g is None:  # pragma: no cover - the norm map is onto
        raise FieldError("norm equation unsolvable")
    assert F.add(2 % F.p, F.mul(F.pow(g, q + 1), F.from_int(n))) == 0
    return FieldElement(F, g)


def embedding(F: GF, E: GF) -> list[int]:
    """Encodings in ``E`` of every element of the subfield ``F`` (indexed by
    ``F``'s encoding).  The generator ``x`` of ``F`` goes to the
    smallest-encoding root of ``F.modulus`` in ``E``."""
    if F.p != E.p or E.m % F.m:
        raise FieldError(f"{F!r} does not embed in {E!r}")
    if F.m == 1:
        return list(range(F.order))
    beta = None
    for x in range(E.order):
        acc = 0
        for c in reversed(F.modulus):
            acc = E.add(E.mul(acc, x), c)
        if acc == 0:
            beta = x
            break
    assert beta is not None
    powers = [1]
    for _ in range(F.m - 1):
        powers.append(E.mul(powers[-1], beta))
    out = []
    for v in range(F.order):
        acc = 0
        for c, bp in zip(F.digits(v), powers):
            acc = E.add(acc, E.mul(c, bp))
        out.append(acc)
    return out
