"""Pure numpy row reduction over a prime field.

Used when the compiled ``_gf`` extension is not importable.
"""

from __future__ import annotations

import numpy as np


def rref(a, p: int):
    """Reduced row echelon form of ``a`` over GF(p).

    Returns ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    """
    r_ = np.array(a, dtype=np.int64, copy=True)
    if r_.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    r_ %= p
    nrows, ncols = r_.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(r_[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            r_[[r, k]] = r_[[k, r]]
        piv = int(r_[r, c])
        if piv != 1:
            r_[r] = (r_[r] * pow(piv, p - 2, p)) % p
        col = r_[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            r_[others] = (r_[others] - np.outer(col[others], r_[r])) % p
        pivots.append(c)
        r += 1
    return r_[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])
