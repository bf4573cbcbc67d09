"""Pure-Python (numpy) versions of the compiled kernels, same signatures."""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

_BLOCK = 1 << 14


def _weights(block: np.ndarray, n: int, m: int) -> np.ndarray:
    if m == 1:
        return np.count_nonzero(block, axis=-1)
    return np.count_nonzero(block.reshape(block.shape[:-1] + (n, m)).any(axis=-1), axis=-1)


def min_weight_chunk(mult, p, n, m, lead, fixed=-1, stop_at=0):
    mult = np.asarray(mult)
    k, q, L = mult.shape
    if L != n * m:
        raise ValueError("table width must be n*m")
    base = mult[lead, 1].copy()
    free = list(range(lead + 1, k))
    if fixed >= 0:
        base = (base + mult[lead + 1, fixed]) % p
        free = free[1:]
    if not free:
        return int(_weights(base, n, m)), 1

    # innermost rows are tabulated as one block of all their combinations
    nin = 0
    size = 1
    while nin < len(free) and size * q <= _BLOCK:
        nin += 1
        size *= q
    nin = max(nin, 1)
    inner = free[len(free) - nin:]
    outer = free[: len(free) - nin]
    blk = np.zeros((1, L), dtype=np.int64)
    for r in inner:
        blk = ((blk[:, None, :] + mult[r][None, :, :]) % p).reshape(-1, L)

    best = n + 1
    count = 0
    for syms in product(range(q), repeat=len(outer)):
        s = base
        for r, a in zip(outer, syms):
            s = s + mult[r, a]
        w = _weights((blk + s) % p, n, m)
        count += w.shape[0]
        wmin = int(w.min())
        if wmin < best:
            best = wmin
            if best <= stop_at:
                # count messages up to and including the first minimiser
                count -= w.shape[0] - (int(np.argmax(w <= stop_at)) + 1)
                break
    return best, count


def first_rank_deficient_subset(G, p, s, inv_table):
    G = np.asarray(G, dtype=np.int64)
    inv_table = np.asarray(inv_table, dtype=np.int64)
    k, n = G.shape
    if s < k or s > n:
        raise ValueError("subset size must lie in [k, n]")
    count = 0
    subsets = combinations(range(n), s)
    while True:
        batch = [c for _, c in zip(range(4096), subsets)]
        if not batch:
            return None, count
        idx = np.array(batch)
        M = np.transpose(G[:, idx], (1, 2, 0)).copy()  # (B, s, k)
        ok = np.ones(len(batch), dtype=bool)
        ar = np.arange(len(batch))
        for c in range(k):
            nz = M[:, c:, c] != 0
            has = nz.any(axis=1)
            ok &= has
            piv = c + np.argmax(nz, axis=1)
            rows_c = M[ar, c].copy()
            M[ar, c] = M[ar, piv]
            M[ar, piv] = rows_c
            inv = inv_table[M[:, c, c]]
            M[:, c, :] = M[:, c, :] * inv[:, None] % p
            f = M[:, c + 1:, c].copy()
            M[:, c + 1:, :] = (M[:, c + 1:, :] - f[:, :, None] * M[:, c, None, :]) % p
        bad = np.flatnonzero(~ok)
        if bad.size:
            count += int(bad[0]) + 1
            return tuple(batch[int(bad[0])]), count
        count += len(batch)
