import itertools
import json

import pytest

from negadual.codes import (
    LinearCode,
    euclidean_dual,
    hermitian_dual,
    inner,
    is_hermitian_self_dual,
    is_self_dual,
    same_code,
)
from negadual.construct import (
    PreconditionError,
    VerificationError,
    ConstructionRecord,
    build_theorem2,
    build_theorem7,
    extend,
    extend_vector,
    grs_hermitian_self_dual,
    grs_self_dual,
    shorten_theorem3,
    shorten_theorem8,
    theorem6_identity_holds,
)
from negadual.gf import field_make


def brute_distance(C):
    F = C.field
    best = C.n
    for msg in itertools.product(range(F.order), repeat=C.k):
        if any(msg):
            best = min(best, sum(1 for x in C.codeword(msg) if x))
    return best


def test_extend_vector_definition():
    F = field_make(13)
    c = [3, 1, 4, 1, 5, 9]
    # c_inf = g (c0 - c2 + c4), c_* = g (c1 - c3 + c5)
    assert extend_vector(F, c, 2) == c + [2 * (3 - 4 + 5) % 13, 2 * (1 - 1 + 9) % 13]


def test_extend_preconditions():
    F = field_make(13)
    C = LinearCode.from_rows(F, [[1, 2, 3]])
    with pytest.raises(PreconditionError):
        extend(C, F.elem(2))
    C = LinearCode.from_rows(F, [[1, 2]])
    with pytest.raises(PreconditionError):
        extend(C, F.elem(0))
    with pytest.raises(PreconditionError):
        extend(C, field_make(7).elem(2))


def test_euclidean_pair_13_6():
    E1, E2, rec = build_theorem2(13, 6)
    assert rec.status == "ok" and not rec.failed
    assert rec.params["gamma"] == 2 and rec.params["T1"] == [1, 11] and rec.params["T2"] == [5, 7]
    assert rec.params["g1"] == [1, 4, 1]
    for E in (E1, E2):
        assert (E.code.n, E.code.k) == (8, 4)
    # independent duality check by inner products and dimension count
    assert all(inner(E1.code.field, r, s) == 0 for r in E1.code.rows for s in E2.code.rows)
    assert E1.code.k + E2.code.k == 8
    d1, d2 = brute_distance(E1.code), brute_distance(E2.code)
    assert d1 == d2 == 4
    for rep in rec.reports:
        assert rep.d == 4 and rep.classification == "NearMDS" and rep.isodual_witnessed
    json.loads(rec.to_json())


@pytest.mark.parametrize("q,n,why", [
    (13, 10, "2n"), (11, 6, "gamma"), (13, 8, "n = 2"), (15, 6, "odd prime power"), (5, 6, "2n"),
])
def test_euclidean_pair_preconditions(q, n, why):
    with pytest.raises(PreconditionError, match=why):
        build_theorem2(q, n)


def test_euclidean_pair_over_extension_field():
    E1, E2, rec = build_theorem2(25, 6)
    assert not rec.failed
    F = E1.code.field
    assert F.order == 25
    assert same_code(euclidean_dual(E1.code), E2.code)
    assert brute_distance(E1.code) == rec.reports[0].d


@pytest.mark.parametrize("q", [5, 7])
def test_hermitian_extension_small(q):
    E, rec = build_theorem7(q, 6)
    C = E.code
    assert C.field.order == q * q and (C.n, C.k) == (8, 4)
    assert is_hermitian_self_dual(C) and same_code(hermitian_dual(C), C)
    F = C.field
    for r in C.rows:
        for s in C.rows:
            acc = 0
            for x, y in zip(r, s):
                acc = F.add(acc, F.mul(x, F.pow(y, q)))
            assert acc == 0
    d = rec.reports[0].d
    assert d >= 4 and rec.reports[0].classification == ("MDS" if d == 5 else "NearMDS")


def test_hermitian_extension_preconditions():
    with pytest.raises(PreconditionError):
        build_theorem7(13, 6)  # 6 does not divide 14
    with pytest.raises(PreconditionError):
        build_theorem7(3, 6)  # characteristic divides n


def test_inner_product_identity_is_specific_to_the_duadic_code():
    from negadual.negacyclic import generator_matrix

    E, rec = build_theorem7(5, 6)
    F = E.code.field
    base = LinearCode.from_rows(F, generator_matrix(E.source))
    assert theorem6_identity_holds(F, base, E.gamma.value, 6)
    # the whole space of length 6 does not satisfy it
    full = LinearCode.from_rows(F, [[1 if i == j else 0 for j in range(6)] for i in range(6)])
    assert not theorem6_identity_holds(F, full, E.gamma.value, 6)


@pytest.mark.parametrize("q", [5, 9, 13])
def test_grs_self_dual(q):
    C, rec = grs_self_dual(q)
    assert C is not None and rec.status == "ok"
    assert (C.n, C.k) == (q + 1, (q + 1) // 2)
    assert is_self_dual(C)
    if q <= 9:
        assert brute_distance(C) == C.n - C.k + 1


def test_euclidean_shortening_13():
    C, _ = grs_self_dual(13)
    S, rec = shorten_theorem3(C)
    assert (S.n, S.k) == (12, 6) and is_self_dual(S)
    rep = rec.reports[0]
    assert rep.d == 6 and rep.d_exact and rep.classification == "NearMDS"


def test_shorten_preconditions():
    C, _ = grs_self_dual(13)
    with pytest.raises(PreconditionError):
        shorten_theorem8(C)
    C7, _ = grs_self_dual(7)
    with pytest.raises(PreconditionError, match="1 \\(mod 4\\)"):
        shorten_theorem3(C7)
    F = field_make(13)
    not_sd = LinearCode.from_rows(F, [[1, 0, 1, 1], [0, 1, 1, 2]])
    with pytest.raises(PreconditionError, match="self-dual"):
        shorten_theorem3(not_sd)


@pytest.mark.parametrize("q,length", [(3, 4), (5, 4), (5, 6)])
def test_hermitian_grs_and_shortening(q, length):
    C, rec = grs_hermitian_self_dual(q, length)
    assert C is not None and rec.status == "ok"
    assert is_hermitian_self_dual(C) and brute_distance(C) == C.n - C.k + 1
    S, rec8 = shorten_theorem8(C)
    n = C.k
    assert (S.n, S.k) == (2 * n - 2, n - 1) and is_hermitian_self_dual(S)
    assert brute_distance(S) >= n - 1


def test_hermitian_grs_gf9_length6_absent():
    # exhaustive: no length-6 point set of PG(1, 9) carries Hermitian self-dual scalars
    C, rec = grs_hermitian_self_dual(3, 6, sweep_limit=10**6)
    assert C is None and rec.status == "not-found"


def test_verification_error_carries_record():
    rec = ConstructionRecord("X", {"q": 1})
    rec.check("always false", False)
    with pytest.raises(VerificationError) as err:
        rec.finish()
    assert err.value.record.status == "rejected"
    assert "always false" in str(err.value)
