"""Numpy implementation of the point-counting kernels (fallback for the Cython build).

Same signatures and results as ``_kernels``; points are processed in flat
chunks of the lexicographic exponent order.
"""

import numpy as np

CHUNK = 1 << 18


def _zech_sum(acc, L, M, zech):
    # acc, L: int64 arrays of logs, -1 for zero
    out = np.where(acc < 0, L, acc)
    both = (acc >= 0) & (L >= 0)
    if both.any():
        a = acc[both]
        diff = L[both] - a
        diff[diff < 0] += M
        z = zech[diff]
        s = a + z
        s[s >= M] -= M
        s[z < 0] = -1
        out[both] = s
    return out


def _digits(idx, M, d):
    e = np.empty((idx.shape[0], d), dtype=np.int64)
    rest = idx.copy()
    for i in range(d - 1, -1, -1):
        e[:, i] = rest % M
        rest //= M
    return e


def _poly_values(e, consts, jm, M, zech):
    acc = np.full(e.shape[0], -1, dtype=np.int64)
    for t in range(consts.shape[0]):
        L = (consts[t] + e @ jm[t]) % M
        acc = _zech_sum(acc, L, M, zech)
    return acc


def value_histogram(zech, consts, exps, Q, lo, hi):
    M = Q - 1
    zech = np.asarray(zech, dtype=np.int64)
    consts = np.asarray(consts, dtype=np.int64) % M
    exps = np.asarray(exps, dtype=np.int64)
    d = exps.shape[1]
    hist = np.zeros(Q, dtype=np.int64)
    if d == 0 or hi <= lo:
        return hist
    jm = exps % M
    inner = M ** (d - 1)
    start, stop = lo * inner, hi * inner
    for a in range(start, stop, CHUNK):
        idx = np.arange(a, min(a + CHUNK, stop), dtype=np.int64)
        vals = _poly_values(_digits(idx, M, d), consts, jm, M, zech)
        vals[vals < 0] = M
        hist += np.bincount(vals, minlength=Q)
    return hist


def common_zeros(zech, consts, exps, offsets, Q, max_witnesses):
    M = Q - 1
    zech = np.asarray(zech, dtype=np.int64)
    consts = np.asarray(consts, dtype=np.int64) % M
    exps = np.asarray(exps, dtype=np.int64)
    d = exps.shape[1]
    jm = exps % M
    total = M**d
    count = 0
    wit = []
    for a in range(0, total, CHUNK):
        idx = np.arange(a, min(a + CHUNK, total), dtype=np.int64)
        e = _digits(idx, M, d)
        mask = np.ones(idx.shape[0], dtype=bool)
        for r in range(len(offsets) - 1):
            sl = slice(offsets[r], offsets[r + 1])
            mask &= _poly_values(e, consts[sl], jm[sl], M, zech) < 0
        count += int(mask.sum())
        if len(wit) < max_witnesses:
            wit.extend(e[mask][: max_witnesses - len(wit)].tolist())
    return count, np.array(wit, dtype=np.int64).reshape(-1, d)
