"""The quotient G/[Sigma W] realised as modules over W/[I], and tau-tilting on it.

Every object of G is an interval module; morphisms of the quotient are stored
as coordinates in a fixed complement of the ideal inside each Hom space, and
composition is a table of structure constants.  A module over the category
``W/[I]`` is a tuple of vector spaces indexed by the indecomposables of W with
contravariant action matrices, so epimorphisms, kernels, cokernels and Ext^1
all become pointwise rank computations.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .core import linalg
from .core.algebra import Module
from .core.rep import Morphism, Rep, block_row, cokernel, kernel, linear_combination
from .cotorsion import (
    Check,
    CotorsionPair,
    InvariantError,
    TheoremReport,
    check_cotorsion_pair,
    enumerate_cotorsion_pairs,
    mterm_level,
    tower_levels,
)
from .subcat.approx import min_right_approx
from .subcat.base import Subcat, left_perp
from .subcat.calculus import is_extension_closed, sigma
from .subcat.ses import ext_basis


def _zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


@dataclass(frozen=True)
class _QSpace:
    hom: object  # HomSpace
    ideal_rows: np.ndarray  # basis of the ideal, coordinates in the Hom basis
    quot_rows: np.ndarray  # complement, coordinates in the Hom basis
    split: np.ndarray  # ideal_rows stacked over quot_rows

    @property
    def dim(self) -> int:
        return self.quot_rows.shape[0]


@dataclass(frozen=True)
class GMorphism:
    """A morphism of the quotient between direct sums of indecomposables.

    ``coef[(i, j)]`` holds the coordinates of the component ``src[i] -> tgt[j]``.
    """

    src: tuple[int, ...]
    tgt: tuple[int, ...]
    coef: dict


@dataclass(frozen=True)
class Presentation:
    """The G-triangle ``W1 -> W0 -> M`` of an object M, read in the quotient."""

    obj: int
    w1: tuple[int, ...]
    w0: tuple[int, ...]
    f: GMorphism  # W1 -> W0
    cover: GMorphism  # W0 -> M


class QuotientCtx:
    """Quotient Hom spaces and composition constants between objects of G."""

    def __init__(self, G: Subcat, W: Subcat, ideal: Subcat):
        if not W <= G:
            raise ValueError("W must lie in G")
        cat = G.cat
        self.cat = cat
        self.G, self.W, self.ideal = G, W, ideal
        self.p = cat.p
        self.objects = list(G.indices)
        # objects of the ideal outside G still kill the maps passing through them
        self.ideal_inside_G = ideal <= G
        self._spaces: dict = {}
        self._comp: dict = {}
        self._pres: dict = {}
        self._mor: dict = {}
        zero = [x for x in self.objects if self.qdim(x, x) == 0]
        self.zero_bits = sum(1 << x for x in zero)
        self.nonzero = [x for x in self.objects if not self.zero_bits >> x & 1]
        self.nonzero_bits = sum(1 << x for x in self.nonzero)
        self.w_objs = [w for w in W.indices if not self.zero_bits >> w & 1]

    # -- Hom spaces -------------------------------------------------------
    def space(self, a: int, b: int) -> _QSpace:
        key = (a, b)
        hit = self._spaces.get(key)
        if hit is not None:
            return hit
        cat, p = self.cat, self.p
        hs = cat.hom_basis(a, b)
        h = hs.dim
        if h == 0:
            hit = _QSpace(hs, _zeros(0, 0), _zeros(0, 0), _zeros(0, 0))
        else:
            H = hs.vectors()
            vecs = []
            for t in self.ideal.indices:
                if cat.hom_table[a, t] == 0 or cat.hom_table[t, b] == 0:
                    continue
                for f in cat.hom_basis(a, t).basis:
                    for g in cat.hom_basis(t, b).basis:
                        vecs.append(g.compose(f).vector())
            if vecs:
                J = linalg.coordinates(H, np.vstack(vecs), p)
                rows, piv = linalg.rref(J, p)
                J = rows[: len(piv)]
            else:
                J = _zeros(0, h)
            eye = np.eye(h, dtype=np.int64)
            Q = eye[linalg.independent_extension(J, eye, p)]
            hit = _QSpace(hs, J, Q, np.vstack([J, Q]))
        self._spaces[key] = hit
        return hit

    def qdim(self, a: int, b: int) -> int:
        return self.space(a, b).dim

    def ideal_dim(self, a: int, b: int) -> int:
        return self.space(a, b).ideal_rows.shape[0]

    def project(self, a: int, b: int, mor: Morphism) -> np.ndarray:
        """Quotient coordinates of a module map ``a -> b``."""
        sp = self.space(a, b)
        if sp.hom.dim == 0:
            return np.zeros(0, dtype=np.int64)
        c = linalg.coordinates(sp.hom.vectors(), mor.vector(), self.p)
        z = linalg.coordinates(sp.split, c, self.p)[0]
        return z[sp.ideal_rows.shape[0] :] % self.p

    def basis_morphism(self, a: int, b: int, q: int) -> Morphism:
        key = (a, b, q)
        hit = self._mor.get(key)
        if hit is None:
            sp = self.space(a, b)
            hit = linear_combination(sp.hom.basis, sp.quot_rows[q], self.cat.reps[a], self.cat.reps[b])
            self._mor[key] = hit
        return hit

    def comp(self, a: int, b: int, c: int) -> np.ndarray:
        """``C[s, t]`` = coordinates of (basis t of b->c) o (basis s of a->b)."""
        key = (a, b, c)
        hit = self._comp.get(key)
        if hit is not None:
            return hit
        qa, qb, qc = self.qdim(a, b), self.qdim(b, c), self.qdim(a, c)
        out = np.zeros((qa, qb, qc), dtype=np.int64)
        if qa and qb and qc:
            for s in range(qa):
                f = self.basis_morphism(a, b, s)
                for t in range(qb):
                    g = self.basis_morphism(b, c, t)
                    out[s, t] = self.project(a, c, g.compose(f))
        self._comp[key] = out
        return out

    def hom_table(self) -> np.ndarray:
        objs = self.objects
        return np.array([[self.qdim(a, b) for b in objs] for a in objs], dtype=np.int64)

    # -- morphisms of the quotient ---------------------------------------
    def evaluate(self, mor: GMorphism, u: int) -> np.ndarray:
        """``Hom(u, mor)``: matrix ``Hom(u, src) -> Hom(u, tgt)`` (column vectors)."""
        p = self.p
        rows = [self.qdim(u, t) for t in mor.tgt]
        cols = [self.qdim(u, s) for s in mor.src]
        out = _zeros(sum(rows), sum(cols))
        r0 = np.concatenate([[0], np.cumsum(rows)]).astype(int)
        c0 = np.concatenate([[0], np.cumsum(cols)]).astype(int)
        for (i, j), v in mor.coef.items():
            if not rows[j] or not cols[i] or not np.any(v):
                continue
            C = self.comp(u, mor.src[i], mor.tgt[j])  # (cols_i, qd(src_i, tgt_j), rows_j)
            block = np.tensordot(C, v, axes=([1], [0])) % p  # (cols_i, rows_j)
            out[r0[j] : r0[j + 1], c0[i] : c0[i + 1]] = (out[r0[j] : r0[j + 1], c0[i] : c0[i + 1]] + block.T) % p
        return out

    def is_epi(self, mor: GMorphism) -> bool:
        """Epimorphism in the quotient: ``Hom(u, mor)`` onto for every u in W."""
        for u in self.w_objs:
            m = self.evaluate(mor, u)
            if linalg.rank(m, self.p) < m.shape[0]:
                return False
        return True

    def components(self, f: Morphism, src: tuple[int, ...], tgt: tuple[int, ...]) -> GMorphism:
        """Split a module map between standard direct sums into quotient components."""
        reps = self.cat.reps
        n = self.cat.alg.n
        coef = {}
        for i, s in enumerate(src):
            for j, t in enumerate(tgt):
                if self.qdim(s, t) == 0:
                    continue
                maps = []
                for v in range(n):
                    ro = sum(reps[x].dims[v] for x in tgt[:j])
                    co = sum(reps[x].dims[v] for x in src[:i])
                    maps.append(f.maps[v][ro : ro + reps[t].dims[v], co : co + reps[s].dims[v]])
                coef[(i, j)] = self.project(s, t, Morphism(reps[s], reps[t], tuple(maps)))
        return GMorphism(tuple(src), tuple(tgt), coef)

    def presentation(self, x: int) -> Presentation:
        hit = self._pres.get(x)
        if hit is not None:
            return hit
        cat = self.cat
        a = min_right_approx(Module.of(cat.ind[x]), self.W)
        if not a.map.is_epi():
            raise ValueError(f"{cat.ind[x].label} admits no deflation from W")
        krep, incl = kernel(a.map)
        if krep.total_dim == 0:
            w1: tuple[int, ...] = ()
            f = GMorphism((), a.sequence, {})
        else:
            b = min_right_approx(krep, self.W)
            if not (b.map.is_epi() and b.map.is_mono()):
                raise ValueError(f"the W-syzygy of {cat.ind[x].label} leaves add W")
            w1 = b.sequence
            f = self.components(incl.compose(b.map), w1, a.sequence)
        cover = self.components(a.map, a.sequence, (x,))
        hit = Presentation(x, w1, a.sequence, f, cover)
        self._pres[x] = hit
        return hit

    # -- classes of the quotient -----------------------------------------
    def key(self, s: Subcat) -> int:
        """The class of ``s`` in the quotient: its indecomposables that survive."""
        return s.bits & self.nonzero_bits

    def as_subcat(self, key: int) -> Subcat:
        return Subcat(self.cat, key | self.zero_bits)

    def labels(self, key: int) -> list[str]:
        return [self.cat.ind[k].label for k in range(self.cat.size) if key >> k & 1]


def build_quotient_ctx(G: Subcat, W: Subcat, ideal: Subcat) -> QuotientCtx:
    return QuotientCtx(G, W, ideal)


# -- modules over the category W/[I] --------------------------------------


@dataclass
class GammaModule:
    """Contravariant module: ``act[(u, w, t)]`` is ``M(w) -> M(u)`` for basis t of u -> w."""

    ctx: QuotientCtx
    dims: dict
    act: dict

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def check_associative(self) -> bool:
        ctx, p = self.ctx, self.ctx.p
        ws = ctx.w_objs
        for v, u, w in itertools.product(ws, ws, ws):
            C = ctx.comp(v, u, w)
            for s, t in itertools.product(range(C.shape[0]), range(C.shape[1])):
                lhs = (self.act[(v, u, s)] @ self.act[(u, w, t)]) % p
                rhs = _zeros(self.dims[v], self.dims[w])
                for r, c in enumerate(C[s, t]):
                    if c:
                        rhs = (rhs + c * self.act[(v, w, r)]) % p
                if not np.array_equal(lhs, rhs):
                    return False
        return True


def gbar_module(ctx: QuotientCtx, objs) -> GammaModule:
    """``Hom(-, M)`` restricted to W, for ``M`` the direct sum of ``objs`` (indices in G)."""
    objs = tuple(objs)
    for x in objs:
        if not ctx.G.bits >> x & 1:
            raise ValueError(f"{ctx.cat.ind[x].label} is not in G")
    ws = ctx.w_objs
    dims = {u: sum(ctx.qdim(u, x) for x in objs) for u in ws}
    act = {}
    for u, w in itertools.product(ws, ws):
        for t in range(ctx.qdim(u, w)):
            mat = _zeros(dims[u], dims[w])
            r0 = c0 = 0
            for x in objs:
                C = ctx.comp(u, w, x)  # (qd(u,w), qd(w,x), qd(u,x))
                qw, qu = ctx.qdim(w, x), ctx.qdim(u, x)
                if qw and qu:
                    mat[r0 : r0 + qu, c0 : c0 + qw] = C[t].T
                r0 += qu
                c0 += qw
            act[(u, w, t)] = mat
    return GammaModule(ctx, dims, act)


def module_cokernel(mod: GammaModule, images: dict) -> GammaModule:
    """Quotient of ``mod`` by the submodule spanned pointwise by the columns of ``images[u]``."""
    ctx, p = mod.ctx, mod.ctx.p
    lift, proj, dims = {}, {}, {}
    for u in ctx.w_objs:
        d = mod.dims[u]
        S = images.get(u, _zeros(d, 0))
        rows, piv = linalg.rref(S.T, p) if S.size else (_zeros(0, d), [])
        Sb = rows[: len(piv)]
        eye = np.eye(d, dtype=np.int64)
        keep = linalg.independent_extension(Sb, eye, p)
        R = eye[keep]
        split = np.vstack([Sb, R]) if d else _zeros(0, 0)
        lift[u] = R.T  # d x k
        # coordinates in [Sb; R] then the R part
        proj[u] = (split, Sb.shape[0])
        dims[u] = len(keep)
    act = {}
    for (u, w, t), mat in mod.act.items():
        split, off = proj[u]
        image = (mat @ lift[w]) % p  # columns in mod(u)
        if dims[u] == 0 or dims[w] == 0:
            act[(u, w, t)] = _zeros(dims[u], dims[w])
            continue
        coords = linalg.coordinates(split, image.T, p)  # one row per column
        act[(u, w, t)] = coords[:, off:].T % p
    return GammaModule(ctx, dims, act)


def hom_from_object(ctx: QuotientCtx, z: int, mod: GammaModule) -> int:
    """dim Hom(F z, mod) from the presentation of z (Yoneda on W0 and W1)."""
    pr = ctx.presentation(z)
    p = ctx.p
    cols = [mod.dims.get(w, 0) for w in pr.w0]
    rows = [mod.dims.get(w, 0) for w in pr.w1]
    total = sum(cols)
    if total == 0:
        return 0
    m = _zeros(sum(rows), total)
    r0 = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    c0 = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for (i, j), v in pr.f.coef.items():
        a, b = pr.w1[i], pr.w0[j]
        if a not in mod.dims or b not in mod.dims:
            continue
        block = _zeros(rows[i], cols[j])
        for t, c in enumerate(v):
            if c:
                block = (block + c * mod.act[(a, b, t)]) % p
        m[r0[i] : r0[i + 1], c0[j] : c0[j + 1]] = block
    return total - linalg.rank(m, p)


def decompose_module(ctx: QuotientCtx, mod: GammaModule) -> dict[int, int]:
    """Indecomposable summands of a module, as multiplicities of objects of G.

    The quotient is equivalent to the module category, so every module is the
    image of an object of G, and the vector of dims Hom(F z, -) over the
    indecomposables z determines it.
    """
    objs = ctx.nonzero
    if mod.is_zero():
        return {}
    H = np.array([[ctx.qdim(a, b) for b in objs] for a in objs], dtype=float)
    h = np.array([hom_from_object(ctx, z, mod) for z in objs], dtype=float)
    try:
        c = np.linalg.solve(H, h)
    except np.linalg.LinAlgError as exc:
        raise InvariantError("hom matrix of the quotient is singular") from exc
    ci = np.rint(c).astype(np.int64)
    if np.any(ci < 0) or not np.array_equal(H.astype(np.int64) @ ci, h.astype(np.int64)):
        raise InvariantError("module is not the image of an object of G")
    return {objs[k]: int(v) for k, v in enumerate(ci) if v}


# -- Ext^1 in the quotient and the two tau-rigidity deciders ---------------


def _coboundary(ctx: QuotientCtx, pr: Presentation, n: int) -> tuple[np.ndarray, list[int], list[int]]:
    """Matrix of Hom(W0, n) -> Hom(W1, n), precomposition with the presentation."""
    p = ctx.p
    xs = [ctx.qdim(w, n) for w in pr.w1]
    ys = [ctx.qdim(w, n) for w in pr.w0]
    D = _zeros(sum(xs), sum(ys))
    r0 = np.concatenate([[0], np.cumsum(xs)]).astype(int)
    c0 = np.concatenate([[0], np.cumsum(ys)]).astype(int)
    for (i, j), v in pr.f.coef.items():
        if not xs[i] or not ys[j]:
            continue
        C = ctx.comp(pr.w1[i], pr.w0[j], n)  # (qd(w1,w0), qd(w0,n), qd(w1,n))
        block = np.tensordot(v, C, axes=([0], [0])) % p  # (ys_j, xs_i)
        D[r0[i] : r0[i + 1], c0[j] : c0[j + 1]] = block.T
    return D, xs, ys


def hom_surjective(ctx: QuotientCtx, m: int, n: int) -> bool:
    """Decider A for the pair (m, n): Hom(f, n) onto for the presentation f of m."""
    pr = ctx.presentation(m)
    D, xs, _ = _coboundary(ctx, pr, n)
    return linalg.rank(D, ctx.p) == sum(xs)


def ext1_gbar(ctx: QuotientCtx, m: int, n: int) -> int:
    """dim Ext^1 in the quotient: maps on the syzygy image modulo those from W0."""
    p = ctx.p
    if ctx.zero_bits >> m & 1 or ctx.zero_bits >> n & 1:
        return 0
    pr = ctx.presentation(m)
    D, xs, _ = _coboundary(ctx, pr, n)
    nx = sum(xs)
    if nx == 0:
        return 0
    r0 = np.concatenate([[0], np.cumsum(xs)]).astype(int)
    conds = []
    for u in ctx.w_objs:
        Fu = ctx.evaluate(pr.f, u)  # Hom(u, W1) -> Hom(u, W0)
        if Fu.shape[1] == 0:
            continue
        K = linalg.nullspace(Fu, p) if Fu.shape[0] else np.eye(Fu.shape[1], dtype=np.int64)
        if K.shape[0] == 0:
            continue
        a_dims = [ctx.qdim(u, w) for w in pr.w1]
        a0 = np.concatenate([[0], np.cumsum(a_dims)]).astype(int)
        qn = ctx.qdim(u, n)
        if qn == 0:
            continue
        for k in K:
            row = _zeros(qn, nx)
            for i, w in enumerate(pr.w1):
                alpha = k[a0[i] : a0[i + 1]]
                if not xs[i] or not np.any(alpha):
                    continue
                C = ctx.comp(u, w, n)  # (qd(u,w), qd(w,n), qd(u,n))
                row[:, r0[i] : r0[i + 1]] = (np.tensordot(alpha, C, axes=([0], [0])) % p).T
            conds.append(row)
    A = np.vstack(conds) % p if conds else _zeros(0, nx)
    if A.shape[0] and D.size and np.any((A @ D) % p):
        raise InvariantError("coboundaries are not cocycles; the presentation is not a complex")
    z = nx - (linalg.rank(A, p) if A.shape[0] else 0)
    return z - linalg.rank(D, p)


def _nonzero(ctx: QuotientCtx, s: Subcat | int) -> list[int]:
    bits = s.bits if isinstance(s, Subcat) else s
    return [x for x in ctx.nonzero if bits >> x & 1]


def fac_closure(ctx: QuotientCtx, mset: Subcat | int) -> Subcat:
    """Objects of G receiving an epimorphism of the quotient from add(mset)."""
    ms = _nonzero(ctx, mset)
    key = 0
    for b in ctx.nonzero:
        src, coef = [], {}
        for m in ms:
            for q in range(ctx.qdim(m, b)):
                e = np.zeros(ctx.qdim(m, b), dtype=np.int64)
                e[q] = 1
                coef[(len(src), 0)] = e
                src.append(m)
        if src and ctx.is_epi(GMorphism(tuple(src), (b,), coef)):
            key |= 1 << b
    return ctx.as_subcat(key)


def p_of(ctx: QuotientCtx, nset: Subcat | int) -> Subcat:
    ns = _nonzero(ctx, nset)
    key = 0
    for a in ns:
        if all(ext1_gbar(ctx, a, b) == 0 for b in ns):
            key |= 1 << a
    return ctx.as_subcat(key)


@dataclass
class RigidVerdict:
    decider_a: bool
    decider_b: bool
    failures: list = field(default_factory=list)

    @property
    def value(self) -> bool:
        return self.decider_a


def is_tau_rigid(ctx: QuotientCtx, mset: Subcat | int) -> RigidVerdict:
    """Both deciders; disagreement is a hard failure."""
    ms = _nonzero(ctx, mset)
    fa = [(m, n) for m in ms for n in ms if not hom_surjective(ctx, m, n)]
    fac = _nonzero(ctx, fac_closure(ctx, mset))
    fb = [(m, n) for m in ms for n in fac if ext1_gbar(ctx, m, n)]
    v = RigidVerdict(not fa, not fb, [("A",) + x for x in fa] + [("B",) + x for x in fb])
    if v.decider_a != v.decider_b:
        raise InvariantError(
            f"tau-rigidity deciders disagree on {ctx.labels(sum(1 << m for m in ms))}: {v.failures[:4]}"
        )
    return v


@dataclass
class STTCandidate:
    members: Subcat
    key: int
    tau_rigid: bool
    support: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.tau_rigid and self.support

    def to_dict(self, ctx: QuotientCtx) -> dict:
        return {
            "members": ctx.labels(self.key),
            "tau_rigid": self.tau_rigid,
            "support_tau_tilting": self.support,
            "witnesses": self.witnesses,
        }


def left_sequence(ctx: QuotientCtx, w: int, ms: list[int]):
    """``w -> M0 -> coker -> 0`` with the universal left add(ms)-approximation.

    A minimal approximation differs from this one by a summand of M0 in add(ms)
    mapped to by zero, which adds the same summand to the cokernel, so the
    membership test below does not depend on that choice.
    """
    src_w = (w,)
    tgt, coef = [], {}
    for m in ms:
        for q in range(ctx.qdim(w, m)):
            e = np.zeros(ctx.qdim(w, m), dtype=np.int64)
            e[q] = 1
            coef[(0, len(tgt))] = e
            tgt.append(m)
    g = GMorphism(src_w, tuple(tgt), coef)
    M0 = gbar_module(ctx, tgt)
    images = {u: ctx.evaluate(g, u) for u in ctx.w_objs}
    coker = module_cokernel(M0, images)
    return tuple(tgt), decompose_module(ctx, coker)


def is_support_tau_tilting(ctx: QuotientCtx, mset: Subcat | int, rigid: RigidVerdict | None = None) -> STTCandidate:
    ms = _nonzero(ctx, mset)
    key = sum(1 << m for m in ms)
    rigid = rigid or is_tau_rigid(ctx, key)
    cand = STTCandidate(ctx.as_subcat(key), key, rigid.value, False)
    if not rigid.value:
        return cand
    support = True
    for w in ctx.w_objs:
        m0, m1 = left_sequence(ctx, w, ms)
        inside = all(key >> x & 1 for x in m1)
        cand.witnesses[ctx.cat.ind[w].label] = {
            "M0": [ctx.cat.ind[x].label for x in m0],
            "M1": {ctx.cat.ind[x].label: c for x, c in sorted(m1.items())},
            "M1_in_class": inside,
        }
        support &= inside
    cand.support = support
    return cand


@dataclass
class SttEnumeration:
    candidates: list[STTCandidate]
    examined: int
    rigid_classes: list[int]


def enumerate_stt(ctx: QuotientCtx, prune: bool = True) -> SttEnumeration:
    """All support tau-tilting classes of the quotient.

    Pruned mode grows subsets in index order and never extends a set that
    fails decider A pairwise (tau-rigidity only involves pairs of summands and
    passes to subsets).  Every examined subset runs both deciders.
    """
    objs = ctx.nonzero
    ok_pair = {(m, n): hom_surjective(ctx, m, n) for m in objs for n in objs}
    rigid_classes, found, examined = [], [], 0

    def visit(key: int, rv: RigidVerdict) -> None:
        rigid_classes.append(key)
        cand = is_support_tau_tilting(ctx, key, rv)
        if cand.ok:
            found.append(cand)

    if prune:
        stack = [(0, 0)]
        while stack:
            key, start = stack.pop()
            examined += 1
            rv = is_tau_rigid(ctx, key)
            if not rv.value:
                continue
            visit(key, rv)
            chosen = [x for x in objs if key >> x & 1]
            for k in range(len(objs) - 1, start - 1, -1):
                x = objs[k]
                if ok_pair[(x, x)] and all(ok_pair[(x, y)] and ok_pair[(y, x)] for y in chosen):
                    stack.append((key | 1 << x, k + 1))
    else:
        for r in range(len(objs) + 1):
            for combo in itertools.combinations(objs, r):
                key = sum(1 << x for x in combo)
                examined += 1
                rv = is_tau_rigid(ctx, key)
                if rv.value:
                    visit(key, rv)
    found.sort(key=lambda c: (bin(c.key).count("1"), c.key))
    rigid_classes.sort(key=lambda k: (bin(k).count("1"), k))
    return SttEnumeration(found, examined, rigid_classes)


# -- supporting lemmas ----------------------------------------------------


def _standardize(ctx: QuotientCtx, rep: Rep, within: Subcat):
    """(summand sequence, iso std -> rep, inverse) for a module in add(within)."""
    a = min_right_approx(rep, within)
    if not (a.map.is_epi() and a.map.is_mono()):
        raise ValueError("module is not in the given additive closure")
    p = ctx.p
    inv = Morphism(rep, a.map.source, tuple(linalg.inverse(m, p) if m.size else m.T for m in a.map.maps))
    return a.sequence, a.map, inv


@dataclass
class RightExactness:
    checked: int
    failures: list


def corp2_check(ctx: QuotientCtx) -> RightExactness:
    """``X -> Y -> Z -> 0`` exact in the quotient for every nonsplit conflation of G
    with indecomposable end terms (one conflation per basis class of Ext^1)."""
    cat, p = ctx.cat, ctx.p
    alg = cat.alg
    t = cat.ext_table(1)
    G = ctx.G
    checked, failures = 0, []
    for z in ctx.objects:
        for x in ctx.objects:
            if not t[z, x]:
                continue
            eb = ext_basis(alg, cat.reps[z], cat.reps[x])
            for phi in eb.classes:
                neg = Morphism(phi.source, phi.target, tuple((-m) % p for m in phi.maps))
                q_rep, q = cokernel(block_row(eb.incl.source, [eb.incl, neg]))
                # X -> P0 + X -> B
                n0 = eb.incl.target.dims
                inc = Morphism(
                    cat.reps[x],
                    q.source,
                    tuple(
                        np.vstack([_zeros(n0[v], cat.reps[x].dims[v]), np.eye(cat.reps[x].dims[v], dtype=np.int64)])
                        for v in range(alg.n)
                    ),
                )
                iota = q.compose(inc)
                zr, r = cokernel(iota)
                mid = q_rep.decompose()
                if mid not in G:
                    failures.append({"X": cat.ind[x].label, "Z": cat.ind[z].label, "reason": "middle term leaves G"})
                    continue
                bseq, bpsi, binv = _standardize(ctx, q_rep, G)
                zseq, zpsi, zinv = _standardize(ctx, zr, G)
                xbar = ctx.components(binv.compose(iota), (x,), bseq)
                ybar = ctx.components(zinv.compose(r.compose(bpsi)), bseq, zseq)
                checked += 1
                for u in ctx.w_objs:
                    fx, fy = ctx.evaluate(xbar, u), ctx.evaluate(ybar, u)
                    ry = linalg.rank(fy, p)
                    onto = ry == fy.shape[0]
                    cx = not np.any((fy @ fx) % p) if fx.size and fy.size else True
                    exact_mid = linalg.rank(fx, p) == fy.shape[1] - ry
                    if not (onto and cx and exact_mid):
                        failures.append({"X": cat.ind[x].label, "Z": cat.ind[z].label, "u": cat.ind[u].label})
                        break
    return RightExactness(checked, failures)


def lemma_p3(ctx: QuotientCtx) -> list[tuple[str, str]]:
    """Indecomposable pairs with Ext^1 = 0 in mod A but not in the quotient."""
    t = ctx.cat.ext_table(1)
    bad = []
    for a in ctx.objects:
        for b in ctx.objects:
            if t[a, b] == 0 and ext1_gbar(ctx, a, b):
                bad.append((ctx.cat.ind[a].label, ctx.cat.ind[b].label))
    return bad


def lemma_p6(ctx: QuotientCtx, key: int) -> bool:
    """Fac of a tau-rigid class, together with the zero objects, is closed under extensions."""
    y = fac_closure(ctx, key)
    return is_extension_closed(y).closed


def maximal_rigid(pair: CotorsionPair) -> list[str]:
    """Objects Z of G outside X cap Y with Ext^1 vanishing both ways against it."""
    cat = pair.U.cat
    core = pair.U & pair.V
    out = []
    for z in pair.ambient.indices:
        if core.bits >> z & 1:
            continue
        zb = 1 << z
        if cat.ext_vanishes(1, core.bits, zb) and cat.ext_vanishes(1, zb, core.bits):
            out.append(cat.ind[z].label)
    return out


def two_rigid(W: Subcat) -> bool:
    cat = W.cat
    return cat.ext_vanishes(1, W.bits, W.bits) and cat.ext_vanishes(2, W.bits, W.bits)


# -- Theorem main2 ----------------------------------------------------------


def two_term(W: Subcat, convention: str = "usage") -> Subcat:
    """The proper 2-term subcategory: Cone(W, W) under ``usage``, one level higher under ``definition``."""
    return tower_levels(W, mterm_level(2, convention))[-1]


def verify_main2(
    W: Subcat, enforce_hypothesis: bool = True, prune: bool = True, convention: str = "usage"
) -> TheoremReport:
    """Cotorsion pairs of the 2-term subcategory G against support tau-tilting classes of G/[Sigma W]."""
    t0 = time.perf_counter()
    cat = W.cat
    rep = TheoremReport("main2")
    I = Subcat.injectives(cat)
    rigid = two_rigid(W)
    hyp = I < W
    rep.preconditions.append(Check("two_rigid", rigid))
    rep.preconditions.append(Check("I_properly_in_W", hyp, None if hyp else (I - W).labels))
    if not rigid or (enforce_hypothesis and not hyp):
        rep.status = "rejected"
        rep.notes.append("theorem hypotheses fail; verification not attempted")
        return rep.finish(t0)
    if not hyp:
        rep.notes.append("hypothesis I < W fails; conclusions evaluated anyway")

    G = two_term(W, convention)
    SW = sigma(W, 1)
    if convention != "usage":
        rep.notes.append(f"convention {convention}: G is tower level {mterm_level(2, convention)}")
    rep.subchecks.append(Check("G_extension_closed", is_extension_closed(G).closed))
    ctx = build_quotient_ctx(G, W, SW)
    if not ctx.ideal_inside_G:
        rep.notes.append(f"Sigma W leaves G: {', '.join((SW - G).labels)}")
    ctx_i = build_quotient_ctx(W, W, I)
    same = all(ctx.qdim(a, b) == ctx_i.qdim(a, b) for a in W.indices for b in W.indices)
    rep.subchecks.append(Check("Wbar_equals_W_mod_I", same))

    pairs = enumerate_cotorsion_pairs(G)
    try:
        stt = enumerate_stt(ctx, prune=prune)
    except InvariantError as exc:
        rep.subchecks.append(Check("lemma_p5_deciders_agree", False, str(exc)))
        rep.bijection = False
        return rep.finish(t0)
    rep.subchecks.append(Check("lemma_p5_deciders_agree", True, {"subsets_examined": stt.examined}))
    stt_keys = {c.key: c for c in stt.candidates}
    rep.counts = {
        "G": len(G),
        "cotorsion_pairs_in_G": len(pairs),
        "support_tau_tilting": len(stt.candidates),
        "tau_rigid_classes": len(stt.rigid_classes),
    }

    images = {}
    p4_ok = impor_ok = maxr_ok = True
    for pr in pairs:
        core = ctx.key(pr.U & pr.V)
        ybar = ctx.key(pr.V)
        fac_y = ctx.key(fac_closure(ctx, ybar))
        fac_core = ctx.key(fac_closure(ctx, core))
        p_y = ctx.key(p_of(ctx, ybar))
        lost = maximal_rigid(pr)
        p4 = fac_y == ybar and fac_core == ybar
        impor = core in stt_keys and p_y == core
        p4_ok &= p4
        impor_ok &= impor
        maxr_ok &= not lost
        images.setdefault(core, []).append(pr)
        rep.forward.append(
            {
                "pair": pr.to_dict(),
                "image": ctx.labels(core),
                "lemma_p4": p4,
                "cor_impor": impor,
                "maximal_rigid_violations": lost,
            }
        )
    rep.subchecks.append(Check("lemma_p4", p4_ok))
    rep.subchecks.append(Check("cor_impor", impor_ok))
    rep.subchecks.append(Check("maximal_rigid", maxr_ok))
    injective = all(len(v) == 1 for v in images.values())
    lands = all(k in stt_keys for k in images)
    surjective = all(k in images for k in stt_keys)

    # surjectivity construction: Y = add(Fac M + Sigma W) inside G
    construct_ok = True
    for cand in stt.candidates:
        fac = fac_closure(ctx, cand.key)
        N = Subcat(cat, ctx.key(fac))
        Y = (N | SW) & G
        X = left_perp(Y, G)
        res = check_cotorsion_pair(G, X, Y, assert_invariants=False)
        hit = bool(res.ok) and ctx.key(res.U & res.V) == cand.key
        construct_ok &= hit
        rep.backward.append(
            {
                "class": ctx.labels(cand.key),
                "N_meets_SigmaW": (N & SW).labels,
                "Y": Y.labels,
                "pair_ok": bool(res.ok),
                "recovers_class": hit,
            }
        )
    rep.subchecks.append(Check("surjectivity_construction", construct_ok))

    p6 = [k for k in stt.rigid_classes if not lemma_p6(ctx, k)]
    rep.subchecks.append(Check("lemma_p6", not p6, [ctx.labels(k) for k in p6[:5]]))
    p3 = lemma_p3(ctx)
    rep.subchecks.append(Check("lemma_p3", not p3, p3[:10]))
    p2 = corp2_check(ctx)
    rep.subchecks.append(Check("cor_p2", not p2.failures, {"triangles": p2.checked, "failures": p2.failures[:5]}))

    rep.bijection = bool(injective and lands and surjective)
    if not rep.bijection:
        missing = [ctx.labels(k) for k in stt_keys if k not in images]
        stray = [ctx.labels(k) for k in images if k not in stt_keys]
        rep.counterexample = {"unhit_classes": missing, "images_not_stt": stray}
    return rep.finish(t0)
