# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over a prime field."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 result = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


cdef Py_ssize_t _reduce(i64[:, ::1] m, i64 p, list pivots):
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, k, j, i
    cdef i64 piv, f, tmp
    for i in range(nrows):
        for j in range(ncols):
            m[i, j] %= p
            if m[i, j] < 0:
                m[i, j] += p
    for c in range(ncols):
        if r == nrows:
            break
        k = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[k, j]
                m[k, j] = tmp
        piv = m[r, c]
        if piv != 1:
            f = _inv(piv, p)
            for j in range(c, ncols):
                m[r, j] = (m[r, j] * f) % p
        for i in range(nrows):
            if i == r:
                continue
            f = m[i, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                m[i, j] = (m[i, j] - f * m[r, j]) % p
                if m[i, j] < 0:
                    m[i, j] += p
        pivots.append(c)
        r += 1
    return r


def rref(a, p):
    """Reduced row echelon form of ``a`` over GF(p); returns (rows, pivots)."""
    cdef cnp.ndarray[i64, ndim=2] m = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef list pivots = []
    cdef Py_ssize_t r
    if m.shape[0] == 0 or m.shape[1] == 0:
        return m[:0], pivots
    r = _reduce(m, p, pivots)
    return m[:r], pivots


def rank(a, p):
    cdef cnp.ndarray[i64, ndim=2] m = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef list pivots = []
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return _reduce(m, p, pivots)
