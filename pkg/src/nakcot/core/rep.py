"""Matrix representations of the linear quiver and their morphisms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Interval, Module, NakayamaAlgebra


@dataclass(frozen=True, eq=False)
class Rep:
    """Representation: ``arrows[a]`` maps vertex a+1 to vertex a+2 (1-based)."""

    alg: NakayamaAlgebra
    dims: tuple[int, ...]
    arrows: tuple[np.ndarray, ...]

    @property
    def p(self) -> int:
        return self.alg.char

    @property
    def n(self) -> int:
        return self.alg.n

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def composite(self, i: int, j: int) -> np.ndarray:
        """Matrix of the path from vertex i to vertex j (0-based, i <= j)."""
        mat = np.eye(self.dims[i], dtype=np.int64)
        for a in range(i, j):
            mat = (self.arrows[a] @ mat) % self.p
        return mat

    def satisfies_relations(self) -> bool:
        m = self.alg.m
        for i in range(self.n - m):
            if np.any(self.composite(i, i + m)):
                return False
        return True

    def rank_invariants(self) -> dict[tuple[int, int], int]:
        r = {}
        for i in range(self.n):
            mat = np.eye(self.dims[i], dtype=np.int64)
            r[i, i] = self.dims[i]
            for j in range(i + 1, self.n):
                mat = (self.arrows[j - 1] @ mat) % self.p
                r[i, j] = linalg.rank(mat, self.p) if mat.size else 0
        return r

    def decompose(self) -> Module:
        """Isomorphism type, from ranks of the path maps."""
        r = self.rank_invariants()
        n = self.n

        def get(i, j):
            if i < 0 or j >= n:
                return 0
            return r[i, j]

        counts = {}
        for i in range(n):
            for j in range(i, n):
                k = get(i, j) - get(i - 1, j) - get(i, j + 1) + get(i - 1, j + 1)
                if k < 0:
                    raise ArithmeticError("negative interval multiplicity")
                if k:
                    counts[Interval(i + 1, j - i + 1)] = k
        return Module.from_counts(counts)

    def dual(self) -> "Rep":
        """Vector-space dual with vertices reflected, again a rep of the same quiver."""
        n = self.n
        dims = tuple(reversed(self.dims))
        arrows = tuple(self.arrows[n - 2 - k].T.copy() for k in range(n - 1))
        return Rep(self.alg, dims, arrows)


def zero_rep(alg: NakayamaAlgebra) -> Rep:
    dims = (0,) * alg.n
    return Rep(alg, dims, tuple(np.zeros((0, 0), dtype=np.int64) for _ in range(alg.n - 1)))


def interval_rep(alg: NakayamaAlgebra, iv: Interval) -> Rep:
    dims = tuple(1 if v in iv.support else 0 for v in range(1, alg.n + 1))
    arrows = tuple(
        np.ones((dims[a + 1], dims[a]), dtype=np.int64) for a in range(alg.n - 1)
    )
    return Rep(alg, dims, arrows)


def _block_diag(blocks, rows, cols):
    out = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    r = c = 0
    for b, nr, nc in zip(blocks, rows, cols):
        if nr and nc:
            out[r : r + nr, c : c + nc] = b
        r += nr
        c += nc
    return out


def sum_reps(alg: NakayamaAlgebra, reps) -> Rep:
    reps = list(reps)
    if not reps:
        return zero_rep(alg)
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(alg.n))
    arrows = tuple(
        _block_diag(
            [r.arrows[a] for r in reps],
            [r.dims[a + 1] for r in reps],
            [r.dims[a] for r in reps],
        )
        for a in range(alg.n - 1)
    )
    return Rep(alg, dims, arrows)


def matrix_rep(alg: NakayamaAlgebra, mod: Module | Interval) -> Rep:
    if isinstance(mod, Interval):
        return interval_rep(alg, mod)
    return sum_reps(alg, [interval_rep(alg, iv) for iv in mod])


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Rep
    target: Rep
    maps: tuple[np.ndarray, ...]  # maps[v]: target.dims[v] x source.dims[v]

    @property
    def p(self) -> int:
        return self.source.p

    def is_morphism(self) -> bool:
        s, t, p = self.source, self.target, self.p
        for a in range(s.n - 1):
            lhs = (t.arrows[a] @ self.maps[a]) % p
            rhs = (self.maps[a + 1] @ s.arrows[a]) % p
            if np.any((lhs - rhs) % p):
                return False
        return True

    def ranks(self) -> list[int]:
        return [linalg.rank(f, self.p) for f in self.maps]

    def is_mono(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_epi(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_zero(self) -> bool:
        return not any(np.any(f % self.p) for f in self.maps)

    def vector(self) -> np.ndarray:
        if not self.maps:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([f.reshape(-1) for f in self.maps]) % self.p

    def compose(self, first: "Morphism") -> "Morphism":
        """``self o first``."""
        p = self.p
        return Morphism(
            first.source,
            self.target,
            tuple((g @ f) % p for g, f in zip(self.maps, first.maps)),
        )

    def scale_add(self, other: "Morphism", c: int = 1) -> "Morphism":
        p = self.p
        return Morphism(
            self.source,
            self.target,
            tuple((f + c * g) % p for f, g in zip(self.maps, other.maps)),
        )

    def dual(self) -> "Morphism":
        n = self.source.n
        maps = tuple(self.maps[n - 1 - k].T.copy() for k in range(n))
        return Morphism(self.target.dual(), self.source.dual(), maps)


def identity(rep: Rep) -> Morphism:
    return Morphism(rep, rep, tuple(np.eye(d, dtype=np.int64) for d in rep.dims))


def zero_morphism(source: Rep, target: Rep) -> Morphism:
    return Morphism(
        source,
        target,
        tuple(np.zeros((dt, ds), dtype=np.int64) for ds, dt in zip(source.dims, target.dims)),
    )


def morphism_from_vector(source: Rep, target: Rep, vec) -> Morphism:
    maps = []
    pos = 0
    for ds, dt in zip(source.dims, target.dims):
        maps.append(np.asarray(vec[pos : pos + ds * dt], dtype=np.int64).reshape(dt, ds))
        pos += ds * dt
    return Morphism(source, target, tuple(maps))


def linear_combination(basis, coeffs, source: Rep, target: Rep) -> Morphism:
    acc = zero_morphism(source, target)
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc.scale_add(b, int(c))
    return acc


def block_column(maps_from: list[Morphism], target: Rep) -> Morphism:
    """The map ``(f_1, ..., f_k): S_1 + ... + S_k -> target``."""
    alg = target.alg
    source = sum_reps(alg, [f.source for f in maps_from])
    mats = []
    for v in range(alg.n):
        parts = [f.maps[v] for f in maps_from]
        if parts:
            mats.append(np.hstack(parts).astype(np.int64))
        else:
            mats.append(np.zeros((target.dims[v], 0), dtype=np.int64))
    return Morphism(source, target, tuple(mats))


def block_row(source: Rep, maps_to: list[Morphism]) -> Morphism:
    """The map ``source -> T_1 + ... + T_k`` with components ``f_i``."""
    alg = source.alg
    target = sum_reps(alg, [f.target for f in maps_to])
    mats = []
    for v in range(alg.n):
        parts = [f.maps[v] for f in maps_to]
        if parts:
            mats.append(np.vstack(parts).astype(np.int64))
        else:
            mats.append(np.zeros((0, source.dims[v]), dtype=np.int64))
    return Morphism(source, target, tuple(mats))


def _column_basis(mat: np.ndarray, p: int) -> np.ndarray:
    """Columns forming a basis of the column space of ``mat``."""
    if mat.size == 0:
        return np.zeros((mat.shape[0], 0), dtype=np.int64)
    rows, _ = linalg.rref(mat.T, p)
    return rows.T.copy()


def _solve_in_basis(basis_cols: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of the columns of ``vecs`` in the column basis ``basis_cols``."""
    k = basis_cols.shape[1]
    if k == 0:
        return np.zeros((0, vecs.shape[1]), dtype=np.int64)
    aug = np.hstack([basis_cols, vecs]) % p
    rows, pivots = linalg.rref(aug, p)
    if any(pc >= k for pc in pivots):
        raise ArithmeticError("vector not in span")
    coords = np.zeros((k, vecs.shape[1]), dtype=np.int64)
    for r, pc in enumerate(pivots):
        coords[pc] = rows[r, k:]
    return coords


def kernel(f: Morphism) -> tuple[Rep, Morphism]:
    """Kernel representation with its inclusion."""
    p = f.p
    src = f.source
    bases = []
    for v, mat in enumerate(f.maps):
        if src.dims[v] == 0:
            bases.append(np.zeros((0, 0), dtype=np.int64))
            continue
        ns = linalg.nullspace(mat.reshape(-1, src.dims[v]), p) if mat.shape[0] else np.eye(src.dims[v], dtype=np.int64)
        bases.append(ns.T.copy())  # columns
    dims = tuple(b.shape[1] if b.size else 0 for b in bases)
    arrows = []
    for a in range(src.n - 1):
        if dims[a] == 0 or dims[a + 1] == 0:
            arrows.append(np.zeros((dims[a + 1], dims[a]), dtype=np.int64))
            continue
        img = (src.arrows[a] @ bases[a]) % p
        arrows.append(_solve_in_basis(bases[a + 1], img, p))
    k = Rep(src.alg, dims, tuple(arrows))
    incl = Morphism(
        k,
        src,
        tuple(
            bases[v] if dims[v] else np.zeros((src.dims[v], 0), dtype=np.int64)
            for v in range(src.n)
        ),
    )
    return k, incl


def cokernel(f: Morphism) -> tuple[Rep, Morphism]:
    """Cokernel representation with its projection (computed through duality)."""
    k, incl = kernel(f.dual())
    return k.dual(), incl.dual()


def image_dims(f: Morphism) -> tuple[int, ...]:
    return tuple(f.ranks())
