"""Linear codes over GF(q): canonical forms, Euclidean/Hermitian duals,
self-duality and isoduality checks, minimum distance, and Singleton-defect
classification."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Iterable, Sequence

import numpy as np

from . import kernels
from .gf import GF

DEFAULT_BUDGET = 10**7
SAMPLING_SEED = 20240613
SAMPLES = 10**5


class CodeError(ValueError):
    pass


# -- row reduction ---------------------------------------------------------

def rref(F: GF, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    n = len(M[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                Mr = M[r]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], Mr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: GF, rows) -> int:
    return len(rref(F, rows)[1])


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] code given by a full-rank k x n generator matrix.

    ``k == 0`` is allowed and denotes the zero code (empty basis).
    """

    field: GF
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, F: GF, rows, n: int | None = None) -> "LinearCode":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if n is None:
            if not rows:
                raise CodeError("length required for an empty generator matrix")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise CodeError("ragged generator matrix")
        if any(not 0 <= x < F.order for r in rows for x in r):
            raise CodeError(f"entries must be encodings in [0, {F.order})")
        if rank(F, rows) != len(rows):
            raise CodeError("generator matrix is rank deficient")
        return cls(F, n, rows)

    def codeword(self, msg: Sequence[int]) -> list[int]:
        F = self.field
        out = [0] * self.n
        for a, row in zip(msg, self.rows):
            if a:
                out = [F.add(x, F.mul(a, y)) for x, y in zip(out, row)]
        return out

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field!r})"


def weight_of(v: Sequence[int]) -> int:
    return sum(1 for x in v if x)


def canonical_form(C: LinearCode) -> LinearCode:
    R, _ = rref(C.field, C.rows)
    return LinearCode(C.field, C.n, tuple(tuple(r) for r in R))


def same_code(C1: LinearCode, C2: LinearCode) -> bool:
    return (C1.field is C2.field and C1.n == C2.n
            and canonical_form(C1).rows == canonical_form(C2).rows)


def conjugate(C: LinearCode) -> LinearCode:
    """Entrywise ``x -> x**sqrt(order)``."""
    F = C.field
    return LinearCode(F, C.n, tuple(tuple(F.conj(x) for x in r) for r in C.rows))


def euclidean_dual(C: LinearCode) -> LinearCode:
    F, n = C.field, C.n
    R, pivots = rref(F, C.rows)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][f])
        basis.append(tuple(v))
    return LinearCode(F, n, tuple(basis))


def hermitian_dual(C: LinearCode) -> LinearCode:
    if C.field.m % 2:
        raise CodeError(f"GF({C.field.order}) has no Hermitian form")
    return euclidean_dual(conjugate(C))


def inner(F: GF, x: Sequence[int], y: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(x, y):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def hermitian_inner(F: GF, x: Sequence[int], y: Sequence[int]) -> int:
    return inner(F, x, [F.conj(b) for b in y])


def is_self_orthogonal(C: LinearCode, hermitian: bool = False) -> bool:
    F = C.field
    ip = hermitian_inner if hermitian else inner
    return all(ip(F, r, s) == 0 for r in C.rows for s in C.rows)


def is_self_dual(C: LinearCode) -> bool:
    return C.n == 2 * C.k and is_self_orthogonal(C)


def is_hermitian_self_dual(C: LinearCode) -> bool:
    if C.field.m % 2:
        return False
    return C.n == 2 * C.k and is_self_orthogonal(C, hermitian=True)


@dataclass(frozen=True)
class MonomialMap:
    """Coordinate ``i`` is scaled by ``scalars[i]`` and moved to ``perm[i]``."""

    perm: tuple[int, ...]
    scalars: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise CodeError("perm is not a permutation")
        if len(self.scalars) != len(self.perm) or any(s == 0 for s in self.scalars):
            raise CodeError("scalars must be nonzero, one per coordinate")

    def apply_vector(self, F: GF, v: Sequence[int]) -> list[int]:
        out = [0] * len(v)
        for i, x in enumerate(v):
            out[self.perm[i]] = F.mul(self.scalars[i], x)
        return out

    def apply(self, C: LinearCode) -> LinearCode:
        return LinearCode(C.field, C.n, tuple(tuple(self.apply_vector(C.field, r)) for r in C.rows))


def sign_alternating_map(F: GF, length: int) -> MonomialMap:
    """``(a_0, -a_1, a_2, ..., -a_{n-1}, a_inf, -a_*)`` on length n + 2."""
    minus = F.neg(1)
    return MonomialMap(tuple(range(length)), tuple(1 if i % 2 == 0 else minus for i in range(length)))


def verify_isodual_witness(C: LinearCode, M: MonomialMap) -> bool:
    if len(M.perm) != C.n:
        return False
    return canonical_form(M.apply(C)).rows == canonical_form(euclidean_dual(C)).rows


# -- minimum distance ------------------------------------------------------

def digit_tables(C: LinearCode) -> np.ndarray:
    """``T[i, a]`` = prime-field digits of ``a * row_i`` (shape k x q x n*m)."""
    F = C.field
    q, m, n = F.order, F.m, C.n
    T = np.zeros((C.k, q, n * m), dtype=np.int64)
    digits = np.array([F.digits(v) for v in range(q)], dtype=np.int64)
    for i, row in enumerate(C.rows):
        prods = np.array([[F.mul(a, x) for x in row] for a in range(q)], dtype=np.int64)
        T[i] = digits[prods].reshape(q, n * m)
    return T


@dataclass(frozen=True)
class DistanceResult:
    low: int
    high: int
    exact: bool
    method: str
    checked: int = 0

    @property
    def value(self) -> int:
        if not self.exact:
            raise CodeError("minimum distance only bounded")
        return self.low

    def as_info(self) -> int | tuple[int, int]:
        return self.low if self.exact else (self.low, self.high)


def _chunks(k: int, q: int) -> list[tuple[int, int]]:
    out = []
    for lead in range(k):
        if lead < k - 1:
            out.extend((lead, v) for v in range(q))
        else:
            out.append((lead, -1))
    return out


def exact_min_weight(C: LinearCode, workers: int = 1) -> tuple[int, int]:
    """Minimum nonzero weight by enumerating every projective message class
    (leading nonzero symbol 1).  Returns ``(d, messages_checked)``."""
    F = C.field
    T = digit_tables(C)
    jobs = _chunks(C.k, F.order)
    run = lambda job: kernels.min_weight_chunk(T, F.p, C.n, F.m, job[0], job[1], 1)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    best = min(r[0] for r in results)
    return best, sum(r[1] for r in results)


def sampled_upper_bound(C: LinearCode, samples: int = SAMPLES, seed: int = SAMPLING_SEED) -> int:
    F = C.field
    best = min(weight_of(r) for r in C.rows + canonical_form(C).rows)
    T = digit_tables(C)
    rng = np.random.default_rng(seed)
    rows = np.arange(C.k)
    done = 0
    while done < samples:
        b = min(4096, samples - done)
        msgs = rng.integers(0, F.order, size=(b, C.k))
        words = T[rows[None, :], msgs].sum(axis=1) % F.p
        w = np.count_nonzero(words.reshape(b, C.n, F.m).any(axis=-1), axis=-1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
        done += b
    return best


def min_distance(C: LinearCode, budget: int = DEFAULT_BUDGET, floor: int = 1,
                 workers: int = 1, samples: int = SAMPLES, seed: int = SAMPLING_SEED) -> DistanceResult:
    """Exact minimum distance when ``q**k <= budget``, else ``(floor, upper)``."""
    if budget < 1:
        raise CodeError("budget must be positive")
    if C.k == 0:
        raise CodeError("the zero code has no minimum distance")
    q = C.field.order
    if q**C.k <= budget:
        d, checked = exact_min_weight(C, workers)
        return DistanceResult(d, d, True, "enumeration", checked)
    upper = sampled_upper_bound(C, samples, seed)
    low = min(floor, upper)
    return DistanceResult(low, upper, low == upper, "sampling", samples)


def _prime_matrix(C: LinearCode) -> np.ndarray:
    return np.array(C.rows, dtype=np.int64).reshape(C.k, C.n)


def first_deficient_columns(C: LinearCode, s: int) -> tuple[tuple[int, ...] | None, int]:
    """First ``s``-subset of columns (lexicographic) on which the generator
    matrix has rank below k, with the number of subsets examined."""
    F = C.field
    if F.m == 1:
        inv = np.zeros(F.p, dtype=np.int64)
        inv[1:] = [pow(a, -1, F.p) for a in range(1, F.p)]
        return kernels.first_rank_deficient_subset(_prime_matrix(C), F.p, s, inv)
    count = 0
    for cols in combinations(range(C.n), s):
        count += 1
        if rank(F, [[r[c] for c in cols] for r in C.rows]) < C.k:
            return cols, count
    return None, count


def verify_distance_floor(C: LinearCode, w: int) -> bool:
    """``d >= w`` iff every ``n - w + 1`` columns have rank k."""
    if w <= 1:
        return True
    s = C.n - w + 1
    if s < C.k:
        return False
    bad, _ = first_deficient_columns(C, s)
    return bad is None


def mds_verify_by_minors(C: LinearCode) -> bool:
    """All k x k minors nonsingular, i.e. ``d == n - k + 1``."""
    if C.k == 0:
        return True
    return verify_distance_floor(C, C.n - C.k + 1)


def minor_count(C: LinearCode, w: int | None = None) -> int:
    w = C.n - C.k + 1 if w is None else w
    return comb(C.n, C.n - w + 1)


# -- classification --------------------------------------------------------

CLASSES = ("MDS", "NearMDS", "AlmostMDS", "Other", "Undetermined")


def _bounds(info) -> tuple[int, int]:
    if info is None:
        return None
    if isinstance(info, DistanceResult):
        return info.low, info.high
    if isinstance(info, tuple):
        return int(info[0]), int(info[1])
    return int(info), int(info)


def _class_of(s: int, s_dual: int | None) -> str:
    if s == 0:
        return "MDS"
    if s == 1:
        return "NearMDS" if s_dual == 1 else "AlmostMDS"
    return "Other"


@dataclass
class CodeReport:
    n: int
    k: int
    d_low: int
    d_high: int
    d_exact: bool
    defect: tuple[int, int]  # (min, max) Singleton defect consistent with the bounds
    dual_defect: tuple[int, int] | None
    euclidean_self_dual: bool
    hermitian_self_dual: bool
    isodual_witnessed: bool
    classification: str
    provenance: dict[str, Any] = field(default_factory=dict)

    @property
    def d(self) -> int | tuple[int, int]:
        return self.d_low if self.d_exact else (self.d_low, self.d_high)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "d_low": self.d_low,
            "d_high": self.d_high,
            "d_exact": self.d_exact,
            "defect": list(self.defect),
            "dual_defect": None if self.dual_defect is None else list(self.dual_defect),
            "euclidean_self_dual": self.euclidean_self_dual,
            "hermitian_self_dual": self.hermitian_self_dual,
            "isodual_witnessed": self.isodual_witnessed,
            "classification": self.classification,
            "provenance": self.provenance,
        }


def classify(C: LinearCode, d_info, dual_d_info=None, *, isodual: bool = False,
             provenance: dict[str, Any] | None = None,
             budget: int = DEFAULT_BUDGET) -> CodeReport:
    """Singleton-defect classification from exact distances or bounds.

    ``d_info`` is an int, a ``(low, high)`` pair, or a :class:`DistanceResult`.
    For (Hermitian) self-dual or witnessed isodual codes the dual defect
    equals the code's own; otherwise it is computed when not supplied.
    """
    n, k = C.n, C.k
    lo, hi = _bounds(d_info)
    if lo > hi or lo < 1:
        raise CodeError(f"invalid distance bounds ({lo}, {hi})")
    if lo > n - k + 1:
        raise CodeError(f"d >= {lo} exceeds the Singleton bound {n - k + 1}")
    hi = min(hi, n - k + 1)
    esd = is_self_dual(C)
    hsd = is_hermitian_self_dual(C)
    s_rng = (n - k + 1 - hi, n - k + 1 - lo)

    if k == n:
        sd_rng = None
    else:
        if dual_d_info is None and (esd or hsd or isodual):
            dual_d_info = (lo, hi)
        if dual_d_info is None:
            dual_d_info = min_distance(euclidean_dual(C), budget)
        dlo, dhi = _bounds(dual_d_info)
        kd = n - k
        if dlo > n - kd + 1:
            raise CodeError("dual distance exceeds the Singleton bound")
        dhi = min(dhi, n - kd + 1)
        sd_rng = (n - kd + 1 - dhi, n - kd + 1 - dlo)

    classes = set()
    for s in range(s_rng[0], s_rng[1] + 1):
        if sd_rng is None:
            classes.add(_class_of(s, None))
        else:
            for sd in range(sd_rng[0], sd_rng[1] + 1):
                classes.add(_class_of(s, sd))
    cls = classes.pop() if len(classes) == 1 else "Undetermined"
    return CodeReport(n, k, lo, hi, lo == hi, s_rng, sd_rng, esd, hsd, isodual, cls,
                      dict(provenance or {}))
