"""Exact linear algebra over GF(p).

The row-reduction kernel comes from the compiled ``_gf`` extension when it
is built, else from the numpy fallback.  Set ``NAKCOT_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _gf_fallback

if os.environ.get("NAKCOT_PURE_PYTHON"):
    _kernel = _gf_fallback
    BACKEND = "python"
else:
    try:
        from . import _gf as _kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _kernel = _gf_fallback
        BACKEND = "python"


def use_backend(name: str) -> None:
    """Switch the row-reduction kernel at runtime ('compiled' or 'python')."""
    global _kernel, BACKEND
    if name == "python":
        _kernel = _gf_fallback
    elif name == "compiled":
        from . import _gf  # type: ignore[attr-defined]

        _kernel = _gf
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def rref(a, p: int):
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64), []
    return _kernel.rref(a, p)


def rank(a, p: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2 or a.size == 0:
        return 0
    return int(_kernel.rank(a, p))


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}`` over GF(p)."""
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    rows, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-rows[r, f]) % p
    return basis


def independent_extension(base, candidates, p: int) -> list[int]:
    """Indices of ``candidates`` rows that extend the span of ``base`` rows.

    Greedy and order-preserving: candidate ``k`` is kept when it is independent
    of ``base`` together with the candidates kept before it.
    """
    candidates = np.asarray(candidates, dtype=np.int64)
    if candidates.shape[0] == 0:
        return []
    base = np.asarray(base, dtype=np.int64).reshape(-1, candidates.shape[1])
    current = base
    r = rank(current, p) if current.shape[0] else 0
    kept: list[int] = []
    for k in range(candidates.shape[0]):
        trial = np.vstack([current, candidates[k : k + 1]])
        rk = rank(trial, p)
        if rk > r:
            kept.append(k)
            current, r = trial, rk
    return kept


def in_span(base, vec, p: int) -> bool:
    base = np.asarray(base, dtype=np.int64)
    vec = np.asarray(vec, dtype=np.int64).reshape(1, -1)
    if base.size == 0:
        return not np.any(vec % p)
    return rank(np.vstack([base, vec]), p) == rank(base, p)


def coordinates(basis_rows, vecs, p: int) -> np.ndarray:
    """Rows ``c`` with ``c @ basis_rows == vecs`` (basis rows independent)."""
    basis_rows = np.asarray(basis_rows, dtype=np.int64)
    vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, basis_rows.shape[1] if basis_rows.ndim == 2 else 0)
    k = basis_rows.shape[0]
    if k == 0:
        if np.any(vecs % p):
            raise ArithmeticError("vector not in span")
        return np.zeros((vecs.shape[0], 0), dtype=np.int64)
    aug = np.hstack([basis_rows.T, vecs.T]) % p
    rows, pivots = rref(aug, p)
    if any(pc >= k for pc in pivots) or len(pivots) < k:
        raise ArithmeticError("vector not in span or basis dependent")
    out = np.zeros((k, vecs.shape[0]), dtype=np.int64)
    for r, pc in enumerate(pivots):
        out[pc] = rows[r, k:]
    return out.T.copy()


def inverse(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    rows, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if list(pivots[:n]) != list(range(n)) or len(pivots) < n:
        raise ArithmeticError("matrix is singular")
    return rows[:n, n:].copy()
