"""Short exact sequences: existence search, extension classes, cocycle Ext.

``ses_search`` decides whether some ``0 -> A -> B -> C -> 0`` exists by walking
``Hom(A, B)`` (exhaustively below a threshold, otherwise by seeded sampling).
``extension_middle_terms`` realises every class of ``Ext^1(C, A)`` as a
pushout of the projective presentation of ``C``.  ``ext1_by_cocycles`` computes
``dim Ext^1`` from the block upper-triangular description of extensions,
independent of projective resolutions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..core import linalg
from ..core.algebra import Interval, Module, NakayamaAlgebra
from ..core.homology import hom_space, projective_cover
from ..core.rep import (
    Morphism,
    Rep,
    block_row,
    cokernel,
    kernel,
    linear_combination,
    matrix_rep,
)
from .base import Certainty

DEFAULT_EXHAUSTIVE_DIM = 16
DEFAULT_SAMPLES = 10_000


@dataclass
class SearchConfig:
    exhaustive_dim: int = DEFAULT_EXHAUSTIVE_DIM
    samples: int = DEFAULT_SAMPLES
    seed: int = 0


CONFIG = SearchConfig()


def configure(exhaustive_dim: int | None = None, samples: int | None = None, seed: int | None = None) -> None:
    if exhaustive_dim is not None:
        CONFIG.exhaustive_dim = exhaustive_dim
    if samples is not None:
        CONFIG.samples = samples
    if seed is not None:
        CONFIG.seed = seed


@dataclass(frozen=True, eq=False)
class SesWitness:
    A: Module
    B: Module
    C: Module
    inj: Morphism

    def check(self) -> bool:
        if not self.inj.is_mono():
            return False
        coker, _ = cokernel(self.inj)
        return coker.decompose() == self.C


@dataclass(frozen=True)
class SesResult:
    """Outcome of a search; a missing witness is only conclusive when exhaustive."""

    witness: SesWitness | None
    certainty: Certainty
    reason: str = ""

    @property
    def exists(self) -> bool:
        return self.witness is not None

    @property
    def definite_no(self) -> bool:
        return self.witness is None and self.certainty is Certainty.EXHAUSTIVE


def _coefficients(dim: int, p: int, cfg: SearchConfig, salt: int = 0):
    """Coefficient vectors over GF(p): all of them, or a seeded sample."""
    if p**dim <= 2**cfg.exhaustive_dim:
        return itertools.product(range(p), repeat=dim), Certainty.EXHAUSTIVE
    rng = np.random.default_rng([cfg.seed, salt, dim])
    return (tuple(rng.integers(0, p, size=dim)) for _ in range(cfg.samples)), Certainty.PROBABILISTIC


def _coker_type(b_rep: Rep, f: Morphism) -> Module:
    """Iso type of coker(f) for a mono f, from ranks of path maps modulo the image."""
    p = b_rep.p
    n = b_rep.n
    fr = [linalg.rank(m, p) if m.size else 0 for m in f.maps]
    r = {}
    for i in range(n):
        r[i, i] = b_rep.dims[i] - fr[i]
        mat = np.eye(b_rep.dims[i], dtype=np.int64)
        for j in range(i + 1, n):
            mat = (b_rep.arrows[j - 1] @ mat) % p
            if b_rep.dims[j] == 0:
                r[i, j] = 0
                continue
            aug = np.hstack([mat, f.maps[j]]) if f.maps[j].size else mat
            r[i, j] = (linalg.rank(aug, p) if aug.size else 0) - fr[j]

    def get(i, j):
        if i < 0 or j >= n:
            return 0
        return r[i, j]

    counts = {}
    for i in range(n):
        for j in range(i, n):
            k = get(i, j) - get(i - 1, j) - get(i, j + 1) + get(i - 1, j + 1)
            if k:
                counts[Interval(i + 1, j - i + 1)] = k
    return Module.from_counts(counts)


def ses_search(alg: NakayamaAlgebra, a: Module, b: Module, c: Module, cfg: SearchConfig | None = None) -> SesResult:
    """Find ``0 -> a -> b -> c -> 0``."""
    cfg = cfg or CONFIG
    da, db, dc = a.dimvec(alg), b.dimvec(alg), c.dimvec(alg)
    if any(x + z != y for x, y, z in zip(da, db, dc)):
        return SesResult(None, Certainty.EXHAUSTIVE, "dimension vectors do not add up")
    ar, br = matrix_rep(alg, a), matrix_rep(alg, b)
    if not a:  # 0 -> b -> c: need b = c
        from ..core.rep import zero_morphism

        w = SesWitness(a, b, c, zero_morphism(ar, br))
        ok = b == c
        return SesResult(w if ok else None, Certainty.EXHAUSTIVE, "" if ok else "b is not c")
    hs = hom_space(alg, ar, br)
    if hs.dim == 0:
        return SesResult(None, Certainty.EXHAUSTIVE, "no maps a -> b")
    coeffs, certainty = _coefficients(hs.dim, alg.char, cfg, salt=hash((a, b, c)) & 0xFFFF)
    for co in coeffs:
        if not any(co):
            continue
        f = linear_combination(hs.basis, co, ar, br)
        if not f.is_mono():
            continue
        if _coker_type(br, f) == c:
            return SesResult(SesWitness(a, b, c, f), certainty)
    return SesResult(None, certainty, "no injective map with the right cokernel")


@dataclass(frozen=True, eq=False)
class ExtBasis:
    """``Ext^1(C, A)`` as maps ``Omega C -> A`` modulo those through the cover."""

    c: Rep
    a: Rep
    cover: Morphism  # P0 -> C
    incl: Morphism  # K -> P0
    classes: tuple[Morphism, ...]  # K -> A, a basis of Ext^1

    @property
    def dim(self) -> int:
        return len(self.classes)


def ext_basis(alg: NakayamaAlgebra, c, a) -> ExtBasis:
    cr = c if isinstance(c, Rep) else matrix_rep(alg, c)
    ar = a if isinstance(a, Rep) else matrix_rep(alg, a)
    p = alg.char
    cov = projective_cover(cr)
    k, incl = kernel(cov)
    hk = hom_space(alg, k, ar)
    if hk.dim == 0:
        return ExtBasis(cr, ar, cov, incl, ())
    hp = hom_space(alg, cov.source, ar)
    restricted = [g.compose(incl).vector() for g in hp.basis]
    base = np.vstack(restricted) if restricted else np.zeros((0, hk.vectors().shape[1]), dtype=np.int64)
    keep = linalg.independent_extension(base, hk.vectors(), p)
    return ExtBasis(cr, ar, cov, incl, tuple(hk.basis[q] for q in keep))


def pushout_middle(eb: ExtBasis, coeffs) -> Rep:
    """Middle term of the class ``sum coeffs * classes``."""
    phi = linear_combination(eb.classes, coeffs, eb.incl.source, eb.a)
    neg = Morphism(phi.source, phi.target, tuple((-m) % phi.p for m in phi.maps))
    emb = block_row(eb.incl.source, [eb.incl, neg])
    mid, _ = cokernel(emb)
    return mid


def extension_middle_terms(alg: NakayamaAlgebra, c: Module, a: Module, cfg: SearchConfig | None = None):
    """All middle terms of extensions ``0 -> a -> B -> c -> 0`` (as iso types).

    Returns ``(set of Modules, certainty)``; the split class is included.
    """
    cfg = cfg or CONFIG
    eb = ext_basis(alg, c, a)
    if eb.dim == 0:
        return {a + c}, Certainty.EXHAUSTIVE
    coeffs, certainty = _coefficients(eb.dim, alg.char, cfg, salt=hash((c, a)) & 0xFFFF)
    out = {a + c}
    for co in coeffs:
        if not any(co):
            continue
        out.add(pushout_middle(eb, co).decompose())
    return out, certainty


def ext1_by_cocycles(alg: NakayamaAlgebra, c, a) -> int:
    """dim Ext^1(c, a) = dim(cocycles) - dim(coboundaries).

    An extension of c by a is ``B_v = a_v + c_v`` with arrow blocks
    ``[[a_arrow, h], [0, c_arrow]]``; h is a cocycle when every m-fold composite
    vanishes, a coboundary when it comes from a change of splitting.
    """
    cr = c if isinstance(c, Rep) else matrix_rep(alg, c)
    ar = a if isinstance(a, Rep) else matrix_rep(alg, a)
    p, n, m = alg.char, alg.n, alg.m
    # unknowns h_k : c_k -> a_{k+1}, k = 0..n-2
    off = [0]
    for k in range(n - 1):
        off.append(off[-1] + ar.dims[k + 1] * cr.dims[k])
    nh = off[-1]
    if nh == 0:
        return 0
    rows = []
    for i in range(n - m):
        j = i + m
        if ar.dims[j] * cr.dims[i] == 0:
            continue
        block = np.zeros((ar.dims[j] * cr.dims[i], nh), dtype=np.int64)
        for k in range(i, j):
            left = ar.composite(k + 1, j)  # a_{k+1} -> a_j
            right = cr.composite(i, k)  # c_i -> c_k
            if left.size == 0 or right.size == 0 or off[k + 1] == off[k]:
                continue
            block[:, off[k] : off[k + 1]] += np.kron(left, right.T)
        rows.append(block % p)
    if rows:
        z_dim = nh - linalg.rank(np.vstack(rows), p)
    else:
        z_dim = nh
    # coboundary map s -> (a_k s_k - s_{k+1} c_k)_k, s_v : c_v -> a_v
    soff = [0]
    for v in range(n):
        soff.append(soff[-1] + ar.dims[v] * cr.dims[v])
    ns = soff[-1]
    if ns == 0:
        return z_dim
    cob = np.zeros((nh, ns), dtype=np.int64)
    for k in range(n - 1):
        r0, r1 = off[k], off[k + 1]
        if r1 == r0:
            continue
        if soff[k + 1] > soff[k]:
            cob[r0:r1, soff[k] : soff[k + 1]] += np.kron(ar.arrows[k], np.eye(cr.dims[k], dtype=np.int64))
        if soff[k + 2] > soff[k + 1]:
            cob[r0:r1, soff[k + 1] : soff[k + 2]] -= np.kron(np.eye(ar.dims[k + 1], dtype=np.int64), cr.arrows[k].T)
    return z_dim - linalg.rank(cob % p, p)


def count_extension_classes(alg: NakayamaAlgebra, c, a, limit_bits: int = 20) -> int:
    """Brute force: number of extension classes, |cocycles| / |coboundaries|.

    Enumerates every h and every change of splitting; only for tiny cases.
    """
    cr = c if isinstance(c, Rep) else matrix_rep(alg, c)
    ar = a if isinstance(a, Rep) else matrix_rep(alg, a)
    p, n, m = alg.char, alg.n, alg.m
    shapes = [(ar.dims[k + 1], cr.dims[k]) for k in range(n - 1)]
    nh = sum(x * y for x, y in shapes)
    sshapes = [(ar.dims[v], cr.dims[v]) for v in range(n)]
    ns = sum(x * y for x, y in sshapes)
    if nh > limit_bits or ns > limit_bits:
        raise ValueError("case too large for brute force")

    def split(vec, shp):
        out, pos = [], 0
        for x, y in shp:
            out.append(np.array(vec[pos : pos + x * y], dtype=np.int64).reshape(x, y))
            pos += x * y
        return out

    def is_cocycle(hs):
        for i in range(n - m):
            j = i + m
            tot = np.zeros((ar.dims[j], cr.dims[i]), dtype=np.int64)
            for k in range(i, j):
                tot = tot + ar.composite(k + 1, j) @ hs[k] @ cr.composite(i, k)
            if np.any(tot % p):
                return False
        return True

    cocycles = sum(1 for vec in itertools.product(range(p), repeat=nh) if is_cocycle(split(vec, shapes)))
    cobs = set()
    for vec in itertools.product(range(p), repeat=ns):
        s = split(vec, sshapes)
        parts = []
        for k in range(n - 1):
            d = (ar.arrows[k] @ s[k] - s[k + 1] @ cr.arrows[k]) % p
            parts.extend(int(x) for x in d.reshape(-1))
        cobs.add(tuple(parts))
    return cocycles // len(cobs)


def pushout_of(incl: Morphism, phi: Morphism) -> Rep:
    """Middle term of the pushout of ``K -> P0`` along ``phi: K -> A``."""
    neg = Morphism(phi.source, phi.target, tuple((-m) % phi.p for m in phi.maps))
    mid, _ = cokernel(block_row(incl.source, [incl, neg]))
    return mid


@dataclass(frozen=True)
class ClassOrbit:
    support: tuple[int, ...]  # indices y with a nonzero component
    middle: Module  # middle term of the extension of C by sum of y over support
    support_bits: int = 0
    middle_bits: int = 0


class ExtensionAtlas:
    """Middle terms of all extensions of each indecomposable C by indecomposables.

    When every dim Ext^1(C, y) is at most one, automorphisms of ``sum y`` scale
    the components independently, so an extension of C by ``sum_{y in T} y``
    with all components nonzero is unique up to isomorphism of middle terms.
    Extensions of C by any A in add S are then, up to split summands of A,
    the orbits with support inside S.
    """

    def __init__(self, cat):
        self.cat = cat
        self._orbits: dict[int, list[ClassOrbit] | None] = {}

    def orbits(self, c: int) -> list[ClassOrbit] | None:
        """None when some Ext^1(C, y) exceeds one (no orbit shortcut)."""
        if c in self._orbits:
            return self._orbits[c]
        cat = self.cat
        t = cat.ext_table(1)
        ys = [y for y in range(cat.size) if t[c, y]]
        if any(t[c, y] > 1 for y in ys):
            self._orbits[c] = None
            return None
        cr = cat.reps[c]
        cov = projective_cover(cr)
        k, incl = kernel(cov)
        # the cover is deterministic, so every basis below shares ``incl``
        base = {y: ext_basis(cat.alg, cr, cat.reps[y]).classes[0] for y in ys}
        out = []
        for size in range(1, len(ys) + 1):
            for supp in itertools.combinations(ys, size):
                phi = block_row(k, [base[y] for y in supp])
                mid = pushout_of(incl, phi).decompose()
                out.append(ClassOrbit(supp, mid, sum(1 << y for y in supp), cat.module_bits(mid)))
        self._orbits[c] = out
        return out

    def middles(self, c: int, allowed_bits: int):
        """Middle terms (minus split summands) of nonsplit extensions of C by add(allowed)."""
        orbs = self.orbits(c)
        if orbs is None:
            return None
        return [o.middle for o in orbs if o.support_bits & ~allowed_bits == 0]

    def first_escape(self, c: int, bits: int) -> ClassOrbit | None | bool:
        """An orbit supported in ``bits`` whose middle term leaves it, False if none, None if no atlas."""
        orbs = self.orbits(c)
        if orbs is None:
            return None
        for o in orbs:
            if o.support_bits & ~bits == 0 and o.middle_bits & ~bits:
                return o
        return False


def atlas(cat) -> ExtensionAtlas:
    a = cat.__dict__.get("_ext_atlas")
    if a is None:
        a = ExtensionAtlas(cat)
        cat.__dict__["_ext_atlas"] = a
    return a
