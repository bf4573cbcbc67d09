import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negadual import _pykernels, kernels
from negadual.codes import LinearCode, digit_tables, _chunks
from negadual.gf import field_make

try:
    from negadual import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _code(F, k, n, rnd):
    rows = [[1 if i == j else 0 for j in range(k)] + [rnd.randrange(F.order) for _ in range(n - k)]
            for i in range(k)]
    return LinearCode.from_rows(F, rows)


@needs_c
@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1), (7, 1), (13, 1), (5, 2), (3, 2)]), st.integers(1, 4),
       st.integers(1, 5), st.sampled_from([0, 1, 3]), st.randoms(use_true_random=False))
def test_min_weight_backends_agree(pm, k, extra, stop_at, rnd):
    F = field_make(*pm)
    C = _code(F, k, k + extra, rnd)
    T = digit_tables(C)
    for lead, fixed in _chunks(C.k, F.order):
        a = _ckernels.min_weight_chunk(T, F.p, C.n, F.m, lead, fixed, stop_at)
        b = _pykernels.min_weight_chunk(T, F.p, C.n, F.m, lead, fixed, stop_at)
        assert tuple(a) == tuple(b)


@needs_c
@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7, 13]), st.integers(1, 4), st.integers(0, 5), st.randoms(use_true_random=False))
def test_rank_subset_backends_agree(p, k, extra, rnd):
    n = k + extra
    G = np.array([[rnd.randrange(p) for _ in range(n)] for _ in range(k)], dtype=np.int64)
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(a, -1, p) for a in range(1, p)]
    for s in range(k, n + 1):
        a = _ckernels.first_rank_deficient_subset(G, p, s, inv)
        b = _pykernels.first_rank_deficient_subset(G, p, s, inv)
        assert (a[0] if a[0] is None else tuple(a[0]), a[1]) == (b[0] if b[0] is None else tuple(b[0]), b[1])


@needs_c
def test_large_enumeration_agrees():
    F = field_make(13)
    C = _code(F, 5, 10, random.Random(11))
    T = digit_tables(C)
    tot_c = [_ckernels.min_weight_chunk(T, 13, 10, 1, l, f, 0) for l, f in _chunks(5, 13)]
    tot_p = [_pykernels.min_weight_chunk(T, 13, 10, 1, l, f, 0) for l, f in _chunks(5, 13)]
    assert [tuple(x) for x in tot_c] == [tuple(x) for x in tot_p]
    assert sum(c for _, c in tot_c) == (13**5 - 1) // 12


def test_backend_selection_env():
    env = dict(os.environ, NEGADUAL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from negadual.kernels import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and not os.environ.get("NEGADUAL_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"
