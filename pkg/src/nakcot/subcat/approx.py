"""Minimal left/right approximations by additive subcategories.

A right ``S``-approximation of ``X`` is built from Hom bases; minimality
comes from keeping, for each indecomposable ``s`` in ``S``, only a basis of
``Hom(s, X)`` modulo the maps factoring through radical maps ``s -> s'``
(intervals are bricks, so every map between distinct indecomposables is
radical).  This is the projective cover of ``Hom(-, X)|_S``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import linalg
from ..core.algebra import Module
from ..core.homology import hom_space
from ..core.rep import Morphism, Rep, block_column, block_row, identity, matrix_rep, zero_morphism, zero_rep
from .base import Subcat


@dataclass(frozen=True, eq=False)
class ApproxMap:
    object: Rep
    target: Module  # the approximating object, up to isomorphism
    map: Morphism
    side: str
    minimal: bool = True
    sequence: tuple[int, ...] = ()  # indecomposable indices of the summands, in block order

    @property
    def is_zero(self) -> bool:
        return not self.target


def _rep_of(s: Subcat, x) -> Rep:
    if isinstance(x, Rep):
        return x
    k = _indec_index(s, x)
    if k is not None:
        return s.cat.reps[k]
    return matrix_rep(s.cat.alg, x)


def _indec_index(s: Subcat, x) -> int | None:
    if isinstance(x, Module) and len(x.summands) == 1 and x.summands[0][1] == 1:
        return s.cat.idx(x.summands[0][0])
    return None


def _fast_indecomposable(s: Subcat, xi: int, xr: Rep, side: str) -> ApproxMap:
    """Minimal approximation of an indecomposable when all Hom dims are at most one.

    The single basis map between k and X is kept unless it factors through
    some other j in S, read off the composite table.
    """
    cat = s.cat
    fm = cat.factor_masks
    ht = cat.hom_table
    pieces, seq = [], []
    for k in s.indices:
        if k == xi:
            # X in S: the identity alone is the minimal approximation
            pieces, seq = [identity(xr)], [k]
            break
        if side == "right":
            if not ht[k, xi] or fm[k][xi] & s.bits:
                continue
            pieces.append(cat.hom_basis(k, xi).basis[0])
        else:
            if not ht[xi, k] or fm[xi][k] & s.bits:
                continue
            pieces.append(cat.hom_basis(xi, k).basis[0])
        seq.append(k)
    alg = cat.alg
    if not pieces:
        z = zero_rep(alg)
        zm = zero_morphism(z, xr) if side == "right" else zero_morphism(xr, z)
        return ApproxMap(xr, Module.zero(), zm, side)
    counts = {cat.ind[k]: 1 for k in seq}
    f = block_column(pieces, xr) if side == "right" else block_row(xr, pieces)
    return ApproxMap(xr, Module.from_counts(counts), f, side, sequence=tuple(seq))


def min_right_approx(x, s: Subcat) -> ApproxMap:
    cat = s.cat
    alg = cat.alg
    p = cat.p
    xr = _rep_of(s, x)
    xi = _indec_index(s, x)
    if xi is not None and cat.factor_masks is not None:
        return _fast_indecomposable(s, xi, xr, "right")
    if xi is not None:
        homs = {k: cat.hom_basis(k, xi) for k in s.indices}
    else:
        homs = {k: hom_space(alg, cat.reps[k], xr) for k in s.indices}
    pieces: list[Morphism] = []
    seq: list[int] = []
    counts: dict = {}
    for k, hs in homs.items():
        if hs.dim == 0:
            continue
        rad_vecs = []
        for j, hj in homs.items():
            if j == k or hj.dim == 0 or cat.hom_table[k, j] == 0:
                continue
            for f in cat.hom_basis(k, j).basis:
                for g in hj.basis:
                    rad_vecs.append(g.compose(f).vector())
        cand = hs.vectors()
        base = np.vstack(rad_vecs) if rad_vecs else np.zeros((0, cand.shape[1]), dtype=np.int64)
        keep = linalg.independent_extension(base, cand, p)
        for q in keep:
            pieces.append(hs.basis[q])
            seq.append(k)
        if keep:
            counts[cat.ind[k]] = len(keep)
    if not pieces:
        return ApproxMap(xr, Module.zero(), zero_morphism(zero_rep(alg), xr), "right")
    f = block_column(pieces, xr)
    return ApproxMap(xr, Module.from_counts(counts), f, "right", sequence=tuple(seq))


def min_left_approx(x, s: Subcat) -> ApproxMap:
    cat = s.cat
    alg = cat.alg
    p = cat.p
    xr = _rep_of(s, x)
    xi = _indec_index(s, x)
    if xi is not None and cat.factor_masks is not None:
        return _fast_indecomposable(s, xi, xr, "left")
    if xi is not None:
        homs = {k: cat.hom_basis(xi, k) for k in s.indices}
    else:
        homs = {k: hom_space(alg, xr, cat.reps[k]) for k in s.indices}
    pieces: list[Morphism] = []
    seq: list[int] = []
    counts: dict = {}
    for k, hs in homs.items():
        if hs.dim == 0:
            continue
        rad_vecs = []
        for j, hj in homs.items():
            if j == k or hj.dim == 0 or cat.hom_table[j, k] == 0:
                continue
            for g in hj.basis:
                for h in cat.hom_basis(j, k).basis:
                    rad_vecs.append(h.compose(g).vector())
        cand = hs.vectors()
        base = np.vstack(rad_vecs) if rad_vecs else np.zeros((0, cand.shape[1]), dtype=np.int64)
        keep = linalg.independent_extension(base, cand, p)
        for q in keep:
            pieces.append(hs.basis[q])
            seq.append(k)
        if keep:
            counts[cat.ind[k]] = len(keep)
    if not pieces:
        return ApproxMap(xr, Module.zero(), zero_morphism(xr, zero_rep(alg)), "left")
    f = block_row(xr, pieces)
    return ApproxMap(xr, Module.from_counts(counts), f, "left", sequence=tuple(seq))


def min_approx(x, s: Subcat, side: str) -> ApproxMap:
    if side == "right":
        return min_right_approx(x, s)
    if side == "left":
        return min_left_approx(x, s)
    raise ValueError("side must be 'left' or 'right'")


def is_right_approximation(a: ApproxMap, s: Subcat) -> bool:
    """Every map from an indecomposable of ``s`` factors through ``a.map``."""
    cat = s.cat
    alg = cat.alg
    p = cat.p
    f = a.map
    for k in s.indices:
        hs = hom_space(alg, cat.reps[k], a.object)
        if hs.dim == 0:
            continue
        through = hom_space(alg, cat.reps[k], f.source)
        img = [f.compose(g).vector() for g in through.basis]
        base = np.vstack(img) if img else np.zeros((0, hs.vectors().shape[1]), dtype=np.int64)
        if any(not linalg.in_span(base, v, p) for v in hs.vectors()):
            return False
    return True


def is_left_approximation(a: ApproxMap, s: Subcat) -> bool:
    cat = s.cat
    alg = cat.alg
    p = cat.p
    f = a.map
    for k in s.indices:
        hs = hom_space(alg, a.object, cat.reps[k])
        if hs.dim == 0:
            continue
        through = hom_space(alg, f.target, cat.reps[k])
        img = [g.compose(f).vector() for g in through.basis]
        base = np.vstack(img) if img else np.zeros((0, hs.vectors().shape[1]), dtype=np.int64)
        if any(not linalg.in_span(base, v, p) for v in hs.vectors()):
            return False
    return True
