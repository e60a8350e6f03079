# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled point-counting kernels.

A torus point is addressed by its discrete-log exponent vector e in
[0, M)^d with M = Q - 1, so every monomial term has log
c_t + sum_i j[t, i] * e_i (mod M) and sums are taken with the Zech table
(zech[u] = log(1 + g^u), -1 when that is zero). Log -1 encodes the field zero.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _zech_add(i64 acc, i64 L, i64 M, const i64[::1] zech) noexcept nogil:
    cdef i64 diff, z
    if acc < 0:
        return L
    diff = L - acc
    if diff < 0:
        diff += M
    z = zech[diff]
    if z < 0:
        return -1
    acc += z
    if acc >= M:
        acc -= M
    return acc


def value_histogram(const i64[::1] zech, const i64[::1] consts, const i64[:, ::1] exps,
                    i64 Q, i64 lo, i64 hi):
    """Histogram of f over the torus slab lo <= e_0 < hi.

    Returns an int64 array h of length Q with h[Q-1] = #zeros and h[l] =
    #points where f = g^l.
    """
    cdef i64 M = Q - 1
    cdef Py_ssize_t T = consts.shape[0]
    cdef Py_ssize_t d = exps.shape[1]
    cdef cnp.ndarray[i64, ndim=1] hist_arr = np.zeros(Q, dtype=np.int64)
    cdef i64[::1] hist = hist_arr
    cdef cnp.ndarray[i64, ndim=2] jm_arr = np.empty((T, d), dtype=np.int64)
    cdef i64[:, ::1] jm = jm_arr
    cdef cnp.ndarray[i64, ndim=1] base_arr = np.empty(T, dtype=np.int64)
    cdef i64[::1] base = base_arr
    cdef cnp.ndarray[i64, ndim=1] cur_arr = np.empty(T, dtype=np.int64)
    cdef i64[::1] cur = cur_arr
    cdef cnp.ndarray[i64, ndim=1] vary_arr = np.empty(T, dtype=np.int64)
    cdef i64[::1] vary = vary_arr
    cdef cnp.ndarray[i64, ndim=1] fixed_arr = np.empty(T, dtype=np.int64)
    cdef i64[::1] fixed = fixed_arr
    cdef cnp.ndarray[i64, ndim=1] digit_arr = np.zeros(max(d, 1), dtype=np.int64)
    cdef i64[::1] digit = digit_arr
    cdef Py_ssize_t t, i, nv = 0, nf = 0, last
    cdef i64 acc, cacc, x, outer, n_outer, inner_lo, inner_hi
    if d == 0 or hi <= lo:
        return hist_arr
    last = d - 1
    for t in range(T):
        for i in range(d):
            jm[t, i] = exps[t, i] % M
            if jm[t, i] < 0:
                jm[t, i] += M
        if jm[t, last] == 0:
            fixed[nf] = t
            nf += 1
        else:
            vary[nv] = t
            nv += 1
    # outer odometer over e_0..e_{d-2}; for d == 1 the slab is the inner range
    if last == 0:
        inner_lo, inner_hi, n_outer = lo, hi, 1
    else:
        inner_lo, inner_hi = 0, M
        n_outer = hi - lo
        for i in range(1, last):
            n_outer *= M
    with nogil:
        for t in range(T):
            base[t] = consts[t] % M
            if base[t] < 0:
                base[t] += M
            if last > 0:
                base[t] = (base[t] + (lo % M) * jm[t, 0]) % M
        digit[0] = lo
        for outer in range(n_outer):
            cacc = -1
            for i in range(nf):
                cacc = _zech_add(cacc, base[fixed[i]], M, zech)
            for i in range(nv):
                t = vary[i]
                cur[t] = (base[t] + (inner_lo % M) * jm[t, last]) % M
            for x in range(inner_lo, inner_hi):
                acc = cacc
                for i in range(nv):
                    t = vary[i]
                    acc = _zech_add(acc, cur[t], M, zech)
                    cur[t] += jm[t, last]
                    if cur[t] >= M:
                        cur[t] -= M
                if acc < 0:
                    hist[M] += 1
                else:
                    hist[acc] += 1
            if last == 0:
                break
            # advance the odometer; a wrap M-1 -> 0 also shifts logs by +j (mod M)
            i = last - 1
            while True:
                for t in range(T):
                    base[t] += jm[t, i]
                    if base[t] >= M:
                        base[t] -= M
                digit[i] += 1
                if i == 0 or digit[i] < M:
                    break
                digit[i] = 0
                i -= 1
    return hist_arr


def common_zeros(const i64[::1] zech, const i64[::1] consts, const i64[:, ::1] exps,
                 const i64[::1] offsets, i64 Q, i64 max_witnesses):
    """Points of the torus where every polynomial vanishes.

    Polynomial r owns terms offsets[r]:offsets[r+1]. Returns (count, witnesses)
    with witnesses an int64 array of at most max_witnesses exponent vectors,
    in lexicographic order of e.
    """
    cdef i64 M = Q - 1
    cdef Py_ssize_t T = consts.shape[0]
    cdef Py_ssize_t d = exps.shape[1]
    cdef Py_ssize_t R = offsets.shape[0] - 1
    cdef cnp.ndarray[i64, ndim=2] wit_arr = np.zeros((max(max_witnesses, 0), d), dtype=np.int64)
    cdef i64[:, ::1] wit = wit_arr
    cdef cnp.ndarray[i64, ndim=1] logs_arr = np.empty(T, dtype=np.int64)
    cdef i64[::1] logs = logs_arr
    cdef cnp.ndarray[i64, ndim=2] jm_arr = np.empty((T, d), dtype=np.int64)
    cdef i64[:, ::1] jm = jm_arr
    cdef cnp.ndarray[i64, ndim=1] digit_arr = np.zeros(d, dtype=np.int64)
    cdef i64[::1] digit = digit_arr
    cdef Py_ssize_t t, i, r
    cdef i64 acc, idx, count = 0, nw = 0, total = 1
    cdef bint ok
    for i in range(d):
        total *= M
    for t in range(T):
        logs[t] = consts[t] % M
        if logs[t] < 0:
            logs[t] += M
        for i in range(d):
            jm[t, i] = exps[t, i] % M
            if jm[t, i] < 0:
                jm[t, i] += M
    with nogil:
        for idx in range(total):
            ok = True
            for r in range(R):
                acc = -1
                for t in range(offsets[r], offsets[r + 1]):
                    acc = _zech_add(acc, logs[t], M, zech)
                if acc >= 0:
                    ok = False
                    break
            if ok:
                if nw < max_witnesses:
                    for i in range(d):
                        wit[nw, i] = digit[i]
                    nw += 1
                count += 1
            i = d - 1
            while i >= 0:
                for t in range(T):
                    logs[t] += jm[t, i]
                    if logs[t] >= M:
                        logs[t] -= M
                digit[i] += 1
                if digit[i] < M:
                    break
                digit[i] = 0
                i -= 1
    return count, wit_arr[:nw]
