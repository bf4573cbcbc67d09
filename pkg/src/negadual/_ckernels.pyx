# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: codeword enumeration and column-subset rank tests.

Codewords are handled in prime-field digit form: a length-n vector over
GF(p^m) is a length n*m vector over GF(p), and a coordinate is nonzero iff
any of its m digits is.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline int _weight(long* v, int n, int m) noexcept nogil:
    cdef int w = 0, j, t, base
    for j in range(n):
        base = j * m
        for t in range(m):
            if v[base + t] != 0:
                w += 1
                break
    return w


def min_weight_chunk(long[:, :, ::1] mult, long p, int n, int m,
                     int lead, int fixed=-1, int stop_at=0):
    """Minimum weight over messages with symbol ``lead`` equal to 1, earlier
    symbols zero and later symbols free (symbol ``lead+1`` pinned to
    ``fixed`` when ``fixed >= 0``).  Returns ``(best, count)``."""
    cdef int k = mult.shape[0]
    cdef int q = mult.shape[1]
    cdef int L = mult.shape[2]
    cdef int nfree = k - lead - 1
    cdef long best = n + 1
    cdef long count = 0
    cdef int w, d, j, a, lo
    cdef long s
    cdef long* stack
    cdef int* sym
    if L != n * m:
        raise ValueError("table width must be n*m")
    stack = <long*> malloc((nfree + 1) * L * sizeof(long))
    sym = <int*> malloc((nfree + 1) * sizeof(int))
    if stack == NULL or sym == NULL:
        free(stack); free(sym)
        raise MemoryError()
    with nogil:
        for j in range(L):
            stack[j] = mult[lead, 1, j]
        if nfree == 0:
            best = _weight(stack, n, m)
            count = 1
        else:
            # depth d (1..nfree) holds the partial sum through row lead+d
            d = 1
            lo = 0
            if fixed >= 0:
                sym[1] = fixed
            else:
                sym[1] = 0
            while d >= 1:
                a = sym[d]
                for j in range(L):
                    s = stack[(d - 1) * L + j] + mult[lead + d, a, j]
                    if s >= p:
                        s -= p
                    stack[d * L + j] = s
                if d == nfree:
                    w = _weight(stack + d * L, n, m)
                    count += 1
                    if w < best:
                        best = w
                        if best <= stop_at:
                            break
                    # advance odometer
                    while d >= 1:
                        if d == 1 and fixed >= 0:
                            d = 0
                            break
                        sym[d] += 1
                        if sym[d] < q:
                            break
                        d -= 1
                else:
                    d += 1
                    sym[d] = 0
    free(stack)
    free(sym)
    return int(best), int(count)


def first_rank_deficient_subset(long[:, ::1] G, long p, int s, long[::1] inv_table):
    """Scan ``s``-column subsets of the k x n prime-field matrix ``G`` in
    lexicographic order; return the first whose k x s submatrix has rank < k,
    or None.  Also returns the number of subsets examined."""
    cdef int k = G.shape[0]
    cdef int n = G.shape[1]
    cdef long count = 0
    cdef int i, j, r, c, piv, found = 0, full
    cdef long f, t, inv
    cdef int* cols
    cdef long* M
    if s < k or s > n:
        raise ValueError("subset size must lie in [k, n]")
    cols = <int*> malloc(s * sizeof(int))
    M = <long*> malloc(s * k * sizeof(long))
    if cols == NULL or M == NULL:
        free(cols); free(M)
        raise MemoryError()
    for i in range(s):
        cols[i] = i
    with nogil:
        while True:
            # transpose: rows are chosen columns, columns are the k rows of G
            for r in range(s):
                for c in range(k):
                    M[r * k + c] = G[c, cols[r]]
            count += 1
            full = 1
            for c in range(k):
                piv = -1
                for r in range(c, s):
                    if M[r * k + c] != 0:
                        piv = r
                        break
                if piv < 0:
                    full = 0
                    break
                if piv != c:
                    for j in range(k):
                        t = M[c * k + j]
                        M[c * k + j] = M[piv * k + j]
                        M[piv * k + j] = t
                inv = inv_table[M[c * k + c]]
                for j in range(c, k):
                    M[c * k + j] = M[c * k + j] * inv % p
                for r in range(c + 1, s):
                    f = M[r * k + c]
                    if f != 0:
                        for j in range(c, k):
                            M[r * k + j] = (M[r * k + j] - f * M[c * k + j]) % p
                            if M[r * k + j] < 0:
                                M[r * k + j] += p
            if not full:
                found = 1
                break
            # next combination
            i = s - 1
            while i >= 0 and cols[i] == n - s + i:
                i -= 1
            if i < 0:
                break
            cols[i] += 1
            for j in range(i + 1, s):
                cols[j] = cols[j - 1] + 1
    result = None
    if found:
        result = tuple(cols[i] for i in range(s))
    free(cols)
    free(M)
    return result, int(count)
