"""Hom spaces, projective covers, injective envelopes, syzygies and Ext."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Interval, Module, NakayamaAlgebra
from .rep import (
    Morphism,
    Rep,
    block_column,
    cokernel,
    identity,
    interval_rep,
    kernel,
    matrix_rep,
    morphism_from_vector,
    zero_morphism,
    zero_rep,
)


@dataclass(frozen=True, eq=False)
class HomSpace:
    source: Rep
    target: Rep
    basis: tuple[Morphism, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> np.ndarray:
        width = sum(s * t for s, t in zip(self.source.dims, self.target.dims))
        if not self.basis:
            return np.zeros((0, width), dtype=np.int64)
        return np.vstack([b.vector() for b in self.basis])


def _as_rep(alg: NakayamaAlgebra, x) -> Rep:
    if isinstance(x, Rep):
        return x
    return matrix_rep(alg, x)


def hom_space(alg: NakayamaAlgebra, m, n) -> HomSpace:
    """All intertwiners ``m -> n`` (a basis of the solution space)."""
    src, tgt = _as_rep(alg, m), _as_rep(alg, n)
    p = alg.char
    offsets = [0]
    for ds, dt in zip(src.dims, tgt.dims):
        offsets.append(offsets[-1] + ds * dt)
    nvars = offsets[-1]
    if nvars == 0:
        return HomSpace(src, tgt, ())
    blocks = []
    for a in range(alg.n - 1):
        ds0, ds1 = src.dims[a], src.dims[a + 1]
        dt0, dt1 = tgt.dims[a], tgt.dims[a + 1]
        if dt1 * ds0 == 0:
            continue
        row = np.zeros((dt1 * ds0, nvars), dtype=np.int64)
        # tgt_a f_a - f_{a+1} src_a = 0, row-major vec(A X B) = (A kron B^T) vec(X)
        if dt0 * ds0:
            row[:, offsets[a] : offsets[a + 1]] = np.kron(tgt.arrows[a], np.eye(ds0, dtype=np.int64))
        if dt1 * ds1:
            row[:, offsets[a + 1] : offsets[a + 2]] -= np.kron(
                np.eye(dt1, dtype=np.int64), src.arrows[a].T
            )
        blocks.append(row % p)
    if blocks:
        ns = linalg.nullspace(np.vstack(blocks), p)
    else:
        ns = np.eye(nvars, dtype=np.int64)
    basis = tuple(morphism_from_vector(src, tgt, row) for row in ns)
    return HomSpace(src, tgt, basis)


def hom_dim(alg: NakayamaAlgebra, m, n) -> int:
    return hom_space(alg, m, n).dim


def _top_vectors(rep: Rep, v: int) -> np.ndarray:
    """Columns spanning a complement of the radical at vertex v."""
    p = rep.p
    d = rep.dims[v]
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if v == 0 or rep.dims[v - 1] == 0:
        return np.eye(d, dtype=np.int64)
    rad = rep.arrows[v - 1] % p
    eye = np.eye(d, dtype=np.int64)
    keep = linalg.independent_extension(rad.T, eye, p)
    return eye[:, keep]


def projective_cover(rep: Rep) -> Morphism:
    """Minimal epimorphism from a projective onto ``rep``."""
    alg = rep.alg
    p = alg.char
    pieces = []
    for v in range(alg.n):
        tops = _top_vectors(rep, v)
        if tops.size == 0:
            continue
        proj = Interval(v + 1, alg.max_length(v + 1))
        prep = interval_rep(alg, proj)
        for c in range(tops.shape[1]):
            x = tops[:, c : c + 1]
            maps = []
            cur = x
            for u in range(alg.n):
                if u < v or u > proj.socle - 1:
                    maps.append(np.zeros((rep.dims[u], prep.dims[u]), dtype=np.int64))
                    continue
                if u > v:
                    cur = (rep.arrows[u - 1] @ cur) % p
                maps.append(cur.copy())
            pieces.append(Morphism(prep, rep, tuple(maps)))
    if not pieces:
        return zero_morphism(zero_rep(alg), rep)
    return block_column(pieces, rep)


def injective_envelope(rep: Rep) -> Morphism:
    """Minimal monomorphism into an injective, dual to the projective cover."""
    return projective_cover(rep.dual()).dual()


def syzygy(rep: Rep) -> tuple[Rep, Morphism]:
    """Kernel of the projective cover, with its inclusion into the cover."""
    cov = projective_cover(rep)
    return kernel(cov)


def cosyzygy(rep: Rep) -> tuple[Rep, Morphism]:
    env = injective_envelope(rep)
    return cokernel(env)


def omega(alg: NakayamaAlgebra, mod: Module) -> Module:
    return syzygy(matrix_rep(alg, mod))[0].decompose()


def omega_inv(alg: NakayamaAlgebra, mod: Module) -> Module:
    return cosyzygy(matrix_rep(alg, mod))[0].decompose()


def projective_cover_module(alg: NakayamaAlgebra, mod: Module) -> Module:
    return projective_cover(matrix_rep(alg, mod)).source.decompose()


def injective_envelope_module(alg: NakayamaAlgebra, mod: Module) -> Module:
    return injective_envelope(matrix_rep(alg, mod)).target.decompose()


def ext1_dim(alg: NakayamaAlgebra, x, y) -> int:
    """dim Ext^1(x, y) from ``0 -> Hom(x,y) -> Hom(P0,y) -> Hom(Omega x, y) -> Ext^1 -> 0``."""
    xr, yr = _as_rep(alg, x), _as_rep(alg, y)
    cov = projective_cover(xr)
    k, _ = kernel(cov)
    return hom_dim(alg, k, yr) - hom_dim(alg, cov.source, yr) + hom_dim(alg, xr, yr)


def ext_dim(alg: NakayamaAlgebra, i: int, x, y) -> int:
    """dim Ext^i(x, y), i >= 1, by dimension shifting along the minimal resolution."""
    if i < 1:
        raise ValueError("Ext degree must be >= 1")
    xr = _as_rep(alg, x)
    for _ in range(i - 1):
        xr, _ = syzygy(xr)
        if xr.total_dim == 0:
            return 0
    return ext1_dim(alg, xr, y)


def projective_dimension(alg: NakayamaAlgebra, mod: Module) -> int:
    rep = matrix_rep(alg, mod)
    d = 0
    while True:
        k, _ = syzygy(rep)
        if k.total_dim == 0:
            return d
        rep = k
        d += 1
        if d > 4 * alg.n + 4:  # cannot happen for a directed algebra
            raise RuntimeError("resolution did not terminate")


def global_dimension(alg: NakayamaAlgebra) -> int:
    return max(
        projective_dimension(alg, Module.of(Interval(v, 1))) for v in range(1, alg.n + 1)
    )


__all__ = [
    "HomSpace",
    "hom_space",
    "hom_dim",
    "projective_cover",
    "injective_envelope",
    "syzygy",
    "cosyzygy",
    "omega",
    "omega_inv",
    "ext1_dim",
    "ext_dim",
    "global_dimension",
    "projective_dimension",
    "identity",
]
