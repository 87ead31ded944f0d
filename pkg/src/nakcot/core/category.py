"""The module category mod A as a cached context over its indecomposables."""

from __future__ import annotations

from collections import deque
from functools import cached_property

import numpy as np

from . import linalg
from .algebra import Interval, Module, NakayamaAlgebra, list_indecomposables
from .homology import (
    HomSpace,
    cosyzygy,
    hom_space,
    injective_envelope,
    kernel,
    projective_cover,
    syzygy,
)
from .rep import Rep, interval_rep


class ModCat:
    """Indecomposables of kA_n/[x^m] with hom/ext tables computed by matrices.

    Tables are filled lazily by a single writer and only read afterwards.
    """

    def __init__(self, alg: NakayamaAlgebra):
        self.alg = alg
        self.ind: list[Interval] = list_indecomposables(alg)
        self.index: dict[Interval, int] = {iv: k for k, iv in enumerate(self.ind)}
        self.size = len(self.ind)
        self.reps: list[Rep] = [interval_rep(alg, iv) for iv in self.ind]
        self._hom_bases: dict[tuple[int, int], HomSpace] = {}
        self._ext: dict[int, np.ndarray] = {}

    # -- basic lookups -------------------------------------------------
    @property
    def p(self) -> int:
        return self.alg.char

    def idx(self, iv: Interval) -> int:
        try:
            return self.index[iv]
        except KeyError:
            raise ValueError(f"{iv} is not an indecomposable of {self.alg}") from None

    def bits_of(self, intervals) -> int:
        b = 0
        for iv in intervals:
            b |= 1 << self.idx(iv)
        return b

    def intervals_of(self, bits: int) -> list[Interval]:
        return [self.ind[k] for k in range(self.size) if bits >> k & 1]

    def module_bits(self, mod: Module) -> int:
        return self.bits_of(mod.distinct)

    @property
    def full_bits(self) -> int:
        return (1 << self.size) - 1

    # -- hom -----------------------------------------------------------
    def hom_basis(self, i: int, j: int) -> HomSpace:
        key = (i, j)
        hs = self._hom_bases.get(key)
        if hs is None:
            hs = hom_space(self.alg, self.reps[i], self.reps[j])
            self._hom_bases[key] = hs
        return hs

    @cached_property
    def hom_table(self) -> np.ndarray:
        t = np.zeros((self.size, self.size), dtype=np.int64)
        for i in range(self.size):
            for j in range(self.size):
                t[i, j] = self.hom_basis(i, j).dim
        return t

    @cached_property
    def factor_masks(self) -> list[list[int]] | None:
        """``[k][b]``: bitset of j != k, b with k -> j -> b a nonzero composite.

        Only defined when every Hom between indecomposables has dimension at
        most one (true for linear Nakayama algebras); None otherwise.
        """
        ht = self.hom_table
        if ht.max(initial=0) > 1:
            return None
        n = self.size
        out = [[0] * n for _ in range(n)]
        for k in range(n):
            for j in range(n):
                if j == k or not ht[k, j]:
                    continue
                f = self.hom_basis(k, j).basis[0]
                for b in range(n):
                    if b in (k, j) or not ht[j, b]:
                        continue
                    g = self.hom_basis(j, b).basis[0]
                    if any(m.any() for m in g.compose(f).maps):
                        out[k][b] |= 1 << j
        return out

    # -- syzygies ------------------------------------------------------
    @cached_property
    def omega_of(self) -> list[Module]:
        return [syzygy(r)[0].decompose() for r in self.reps]

    @cached_property
    def omega_inv_of(self) -> list[Module]:
        return [cosyzygy(r)[0].decompose() for r in self.reps]

    @cached_property
    def cover_of(self) -> list[Module]:
        return [projective_cover(r).source.decompose() for r in self.reps]

    @cached_property
    def envelope_of(self) -> list[Module]:
        return [injective_envelope(r).target.decompose() for r in self.reps]

    @cached_property
    def projective_bits(self) -> int:
        return self.bits_of(iv for k, iv in enumerate(self.ind) if not self.omega_of[k])

    @cached_property
    def injective_bits(self) -> int:
        return self.bits_of(iv for k, iv in enumerate(self.ind) if not self.omega_inv_of[k])

    @cached_property
    def global_dimension(self) -> int:
        best = 0
        for k in range(self.size):
            d, cur = 0, Module.of(self.ind[k])
            while True:
                nxt = Module.zero()
                for iv in cur:
                    nxt = nxt + self.omega_of[self.idx(iv)]
                if not nxt:
                    break
                cur, d = nxt, d + 1
            best = max(best, d)
        return best

    def omega_module(self, mod: Module) -> Module:
        out = Module.zero()
        for iv in mod:
            out = out + self.omega_of[self.idx(iv)]
        return out

    def omega_inv_module(self, mod: Module) -> Module:
        out = Module.zero()
        for iv in mod:
            out = out + self.omega_inv_of[self.idx(iv)]
        return out

    # -- ext -----------------------------------------------------------
    def _ext1_direct(self, i: int, j: int) -> int:
        cov = projective_cover(self.reps[i])
        k, _ = kernel(cov)
        alg = self.alg
        return (
            hom_space(alg, k, self.reps[j]).dim
            - hom_space(alg, cov.source, self.reps[j]).dim
            + self.hom_table[i, j]
        )

    def ext_table(self, degree: int = 1) -> np.ndarray:
        """``T[i, j] = dim Ext^degree(ind[i], ind[j])``."""
        if degree < 1:
            raise ValueError("Ext degree must be >= 1")
        t = self._ext.get(degree)
        if t is not None:
            return t
        if degree == 1:
            t = np.zeros((self.size, self.size), dtype=np.int64)
            for i in range(self.size):
                if not self.omega_of[i]:
                    continue
                for j in range(self.size):
                    t[i, j] = self._ext1_direct(i, j)
        else:
            prev = self.ext_table(degree - 1)
            t = np.zeros((self.size, self.size), dtype=np.int64)
            for i in range(self.size):
                for iv, k in self.omega_of[i].summands:
                    t[i] += k * prev[self.idx(iv)]
        self._ext[degree] = t
        return t

    def ext(self, degree: int, x: Module, y: Module) -> int:
        t = self.ext_table(degree)
        return int(
            sum(a * b * t[self.idx(u), self.idx(v)] for u, a in x.summands for v, b in y.summands)
        )

    def ext_vanishes(self, degree: int, xbits: int, ybits: int) -> bool:
        t = self.ext_table(degree)
        xs = [k for k in range(self.size) if xbits >> k & 1]
        ys = [k for k in range(self.size) if ybits >> k & 1]
        if not xs or not ys:
            return True
        return not np.any(t[np.ix_(xs, ys)])

    # -- AR quiver -----------------------------------------------------
    @cached_property
    def irreducible_arrows(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with dim rad(X_i, X_j)/rad^2(X_i, X_j) > 0."""
        p = self.p
        arrows = []
        ht = self.hom_table
        for i in range(self.size):
            for j in range(self.size):
                if i == j or ht[i, j] == 0:
                    continue
                target = self.hom_basis(i, j).vectors()
                comps = []
                for z in range(self.size):
                    if z in (i, j) or ht[i, z] == 0 or ht[z, j] == 0:
                        continue
                    for f in self.hom_basis(i, z).basis:
                        for g in self.hom_basis(z, j).basis:
                            comps.append(g.compose(f).vector())
                r2 = linalg.rank(np.vstack(comps), p) if comps else 0
                if linalg.rank(target, p) > r2:
                    arrows.append((i, j))
        return arrows

    @cached_property
    def ar_coordinates(self) -> dict[Interval, tuple[int, int]]:
        """(column, length) positions: every irreducible map advances one column.

        The simple projective sits at column 0; columns are propagated along
        irreducible arrows and checked for consistency.
        """
        start = self.idx(Interval(self.alg.n, 1))
        col = {start: 0}
        adj: dict[int, list[tuple[int, int]]] = {k: [] for k in range(self.size)}
        for i, j in self.irreducible_arrows:
            adj[i].append((j, 1))
            adj[j].append((i, -1))
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, step in adj[u]:
                c = col[u] + step
                if v in col:
                    if col[v] != c:
                        raise ArithmeticError("AR quiver columns are inconsistent")
                else:
                    col[v] = c
                    queue.append(v)
        if len(col) != self.size:
            raise ArithmeticError("AR quiver is disconnected")
        return {self.ind[k]: (c, self.ind[k].length) for k, c in col.items()}

    def ar_translate(self, iv: Interval) -> Interval | None:
        """tau of a non-projective indecomposable, read from the AR coordinates."""
        if iv.is_projective(self.alg):
            return None
        c, l = self.ar_coordinates[iv]
        for other, (c2, l2) in self.ar_coordinates.items():
            if l2 == l and c2 == c - 2:
                return other
        raise ArithmeticError(f"no translate for {iv}")


_CATS: dict[NakayamaAlgebra, ModCat] = {}


def modcat(alg: NakayamaAlgebra) -> ModCat:
    """Shared context per algebra."""
    cat = _CATS.get(alg)
    if cat is None:
        cat = ModCat(alg)
        _CATS[alg] = cat
    return cat
