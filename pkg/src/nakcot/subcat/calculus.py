"""Cone / CoCone / Sigma / Omega / star, and extension closure.

All outputs are summand-closed subcategories.  Memberships with an exact
structural criterion use it; the others go through the witness searches of
:mod:`nakcot.subcat.ses` and carry their certainty level.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from ..core.algebra import Interval, Module
from .approx import min_left_approx, min_right_approx
from .base import Certainty, Subcat
from .ses import SearchConfig, atlas, extension_middle_terms, ses_search
from ..core.rep import cokernel, kernel

DEBUG = os.environ.get("NAKCOT_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class Derived:
    """A computed subcategory with the provenance of its membership tests."""

    subcat: Subcat
    certainty: Certainty = Certainty.EXHAUSTIVE
    method: str = "fast"


@dataclass
class ExtClosureReport:
    closed: bool
    certainty: Certainty
    counterexample: tuple[Module, Module, Module] | None = None  # (A, B, C)
    checked: int = 0


def _as_module(x) -> Module:
    return Module.of(x) if isinstance(x, Interval) else x


# -- Cone / CoCone ----------------------------------------------------------


def ext_free(s_from: Subcat, s_to: Subcat) -> bool:
    """Ext^1(s_from, s_to) = 0."""
    return s_from.cat.ext_vanishes(1, s_from.bits, s_to.bits)


def cone_member_fast(x, s1: Subcat, s2: Subcat) -> bool:
    """X in Cone(s1, s2), assuming Ext^1(s2, s1) = 0.

    A conflation s1 -> s2 -> X is then a right s2-approximation; it differs from
    the minimal one by a summand ``B1 -> 0`` that lands in the kernel.
    """
    a = min_right_approx(_as_module(x), s2)
    if not a.map.is_epi():
        return False
    k, _ = kernel(a.map)
    return k.decompose() in s1


def cocone_member_fast(x, s1: Subcat, s2: Subcat) -> bool:
    """X in CoCone(s1, s2) = {X : X -> s1 -> s2}, assuming Ext^1(s2, s1) = 0."""
    a = min_left_approx(_as_module(x), s1)
    if not a.map.is_mono():
        return False
    c, _ = cokernel(a.map)
    return c.decompose() in s2


def _multisets_with_dimvec(cat, members: list[Interval], target: tuple[int, ...]):
    """All multisets over ``members`` whose dimension vectors add to ``target``."""
    alg = cat.alg
    vecs = [iv.dimvec(alg) if hasattr(iv, "dimvec") else Module.of(iv).dimvec(alg) for iv in members]
    out: list[dict] = []

    def rec(k: int, rest: list[int], chosen: dict):
        if all(r == 0 for r in rest):
            out.append(dict(chosen))
            return
        if k == len(members):
            return
        v = vecs[k]
        cap = min((rest[i] // v[i] for i in range(len(v)) if v[i]), default=0)
        for mult in range(cap, -1, -1):
            if mult:
                chosen[members[k]] = mult
            rec(k + 1, [r - mult * d for r, d in zip(rest, v)], chosen)
            chosen.pop(members[k], None)

    rec(0, list(target), {})
    return [Module.from_counts(c) for c in out]


def _bounded_kernels(cat, x: Module, s1: Subcat) -> list[Module]:
    """Candidate first terms: sub-multisets of ``sum a^{ext(x, a)}`` over a in s1.

    Summands with Ext^1(x, a) = 0 split off, and multiplicities above
    dim Ext^1(x, a) can be reduced by a change of basis, so nothing is lost.
    """
    caps = []
    for iv in s1.members:
        e = cat.ext(1, x, Module.of(iv))
        if e:
            caps.append((iv, e))
    out = []
    for mults in itertools.product(*[range(e + 1) for _, e in caps]):
        out.append(Module.from_counts({iv: k for (iv, _), k in zip(caps, mults) if k}))
    return out


def cone_member_search(x, s1: Subcat, s2: Subcat, cfg: SearchConfig | None = None):
    """Definitional test: search for ``0 -> A -> B -> X -> 0``, A in s1, B in s2.

    Returns ``(member, certainty)``.
    """
    cat = s1.cat
    x = _as_module(x)
    if x in s2:
        return True, Certainty.EXHAUSTIVE
    certainty = Certainty.EXHAUSTIVE
    dx = x.dimvec(cat.alg)
    for a in _bounded_kernels(cat, x, s1):
        if not a:
            continue
        target = tuple(p + q for p, q in zip(a.dimvec(cat.alg), dx))
        for b in _multisets_with_dimvec(cat, s2.members, target):
            res = ses_search(cat.alg, a, b, x, cfg)
            if res.exists:
                return True, Certainty.EXHAUSTIVE
            certainty = Certainty.combine(certainty, res.certainty)
    return False, certainty


def cocone_member_search(x, s1: Subcat, s2: Subcat, cfg: SearchConfig | None = None):
    """Search for ``0 -> X -> B -> C -> 0`` with B in s1, C in s2."""
    cat = s1.cat
    x = _as_module(x)
    if x in s1:
        return True, Certainty.EXHAUSTIVE
    certainty = Certainty.EXHAUSTIVE
    dx = x.dimvec(cat.alg)
    caps = [(iv, cat.ext(1, Module.of(iv), x)) for iv in s2.members]
    caps = [(iv, e) for iv, e in caps if e]
    for mults in itertools.product(*[range(e + 1) for _, e in caps]):
        c = Module.from_counts({iv: k for (iv, _), k in zip(caps, mults) if k})
        if not c:
            continue
        target = tuple(p + q for p, q in zip(c.dimvec(cat.alg), dx))
        for b in _multisets_with_dimvec(cat, s1.members, target):
            res = ses_search(cat.alg, x, b, c, cfg)
            if res.exists:
                return True, Certainty.EXHAUSTIVE
            certainty = Certainty.combine(certainty, res.certainty)
    return False, certainty


def cone_cocone(
    s1: Subcat,
    s2: Subcat,
    direction: str = "cone",
    method: str = "auto",
    cfg: SearchConfig | None = None,
) -> Derived:
    """Cone(s1, s2) or CoCone(s1, s2), closed under summands.

    ``method``: ``fast`` (requires Ext^1(s2, s1) = 0), ``search`` (definitional,
    decides indecomposables), or ``auto``.
    """
    if direction not in ("cone", "cocone"):
        raise ValueError("direction must be 'cone' or 'cocone'")
    cat = s1.cat
    fast_ok = ext_free(s2, s1)
    if method == "fast" and not fast_ok:
        raise ValueError("fast path needs Ext^1(s2, s1) = 0")
    use_fast = method == "fast" or (method == "auto" and fast_ok)
    memo = cat.__dict__.setdefault("_cone_memo", {})
    key = (direction, s1.bits, s2.bits, DEBUG)  # debug entries were asserted
    if use_fast and key in memo:
        return Derived(Subcat(cat, memo[key]), Certainty.EXHAUSTIVE, "fast")
    bits = 0
    certainty = Certainty.EXHAUSTIVE
    for k, iv in enumerate(cat.ind):
        if use_fast:
            ok = (cone_member_fast if direction == "cone" else cocone_member_fast)(iv, s1, s2)
        else:
            test = cone_member_search if direction == "cone" else cocone_member_search
            ok, c = test(iv, s1, s2, cfg)
            if not ok:
                certainty = Certainty.combine(certainty, c)
        if ok:
            bits |= 1 << k
    out = Subcat(cat, bits)
    if DEBUG and use_fast:
        member = cone_member_fast if direction == "cone" else cocone_member_fast
        assert_summand_closed(out, lambda mod: member(mod, s1, s2))
    if use_fast:
        memo[key] = bits
    return Derived(out, certainty, "fast" if use_fast else "search")


def cone(s1: Subcat, s2: Subcat, **kw) -> Subcat:
    return cone_cocone(s1, s2, "cone", **kw).subcat


def cocone(s1: Subcat, s2: Subcat, **kw) -> Subcat:
    return cone_cocone(s1, s2, "cocone", **kw).subcat


# -- Sigma / Omega ------------------------------------------------------------


def sigma_omega_subcat(s: Subcat, i: int = 1, direction: str = "sigma") -> Subcat:
    """Sigma^i S = add(Omega^- S + I) iterated; Omega^i S dually with P.

    Exact: a conflation S -> I' -> X splits off the minimal envelope, so X is
    Omega^- S plus injectives; Omega^- of an interval is an interval or zero.
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    cat = s.cat
    if direction in ("sigma", "Σ", "Sigma"):
        step, extra = cat.omega_inv_of, cat.injective_bits
    elif direction in ("omega", "Ω", "Omega"):
        step, extra = cat.omega_of, cat.projective_bits
    else:
        raise ValueError("direction must be 'sigma' or 'omega'")
    memo = cat.__dict__.setdefault("_shift_memo", {})
    key = (step is cat.omega_inv_of, s.bits, i, DEBUG)
    if key in memo:
        return Subcat(cat, memo[key])
    bits = s.bits
    for _ in range(i):
        nxt = extra
        for k in range(cat.size):
            if bits >> k & 1:
                nxt |= cat.module_bits(step[k])
        bits = nxt
    out = Subcat(cat, bits)
    if DEBUG and i:
        prev = s if i == 1 else sigma_omega_subcat(s, i - 1, direction)
        stepmod = cat.omega_inv_module if step is cat.omega_inv_of else cat.omega_module
        allowed = {iv for src in prev.members for iv in stepmod(Module.of(src)).distinct}
        allowed.update(cat.intervals_of(extra))
        assert_summand_closed(out, lambda mod: all(iv in allowed for iv in mod.distinct))
    memo[key] = bits
    return out


def sigma(s: Subcat, i: int = 1) -> Subcat:
    return sigma_omega_subcat(s, i, "sigma")


def omega(s: Subcat, i: int = 1) -> Subcat:
    return sigma_omega_subcat(s, i, "omega")


# -- star ---------------------------------------------------------------------


def _multisets_up_to(members: list[Interval], k: int):
    for size in range(1, k + 1):
        for combo in itertools.combinations_with_replacement(members, size):
            counts: dict = {}
            for iv in combo:
                counts[iv] = counts.get(iv, 0) + 1
            yield Module.from_counts(counts)


def star_add(s1: Subcat, s2: Subcat, k: int = 1, cfg: SearchConfig | None = None) -> Derived:
    """add(s1 * s2): summands of middle terms of ``s1 -> X -> s2`` conflations.

    The end term runs over multisets of at most ``k`` indecomposables of s2; the
    first term over the bounded kernels forced by Ext dimensions.  For k = 1
    the cached extension orbits give the answer without sampling.
    """
    cat = s1.cat
    alg = cat.alg
    bits = s1.bits | s2.bits
    certainty = Certainty.EXHAUSTIVE
    at = atlas(cat)
    for c in _multisets_up_to(s2.members, k):
        if len(c) == 1:
            mids = at.middles(cat.idx(c.distinct[0]), s1.bits)
            if mids is not None:
                for b in mids:
                    bits |= cat.module_bits(b)
                continue
        caps = []
        for iv in s1.members:
            e = cat.ext(1, c, Module.of(iv))
            if e:
                caps.append((iv, e))
        if not caps:
            continue
        a_max = Module.from_counts(dict(caps))
        mids, cert = extension_middle_terms(alg, c, a_max, cfg)
        certainty = Certainty.combine(certainty, cert)
        for b in mids:
            bits |= cat.module_bits(b)
    return Derived(Subcat(cat, bits), certainty, f"classes(k={k})")


def star_bracket(s1: Subcat, s2: Subcat, cfg: SearchConfig | None = None) -> tuple[Subcat, Subcat, Derived]:
    """Lower and upper bounds for add(s1 * s2).

    The k = 1 star is contained in add(s1 * s2), which is contained in the
    extension closure of s1 + s2.  When the two bounds meet the value is exact;
    otherwise the k = 2 star is returned as the working value.
    """
    lo = star_add(s1, s2, k=1, cfg=cfg)
    hi = extension_closure(s1 | s2, cfg)
    if lo.subcat == hi:
        return lo.subcat, hi, Derived(hi, lo.certainty, "bracket")
    two = star_add(s1, s2, k=2, cfg=cfg)
    return lo.subcat, hi, Derived(two.subcat, Certainty.PROBABILISTIC, "classes(k=2)")


# -- extension closure ------------------------------------------------------


def is_extension_closed(s: Subcat, cfg: SearchConfig | None = None) -> ExtClosureReport:
    """Check every extension of an indecomposable C in S by objects of add S.

    Summands of the first term with Ext^1(C, a) = 0 split off and excess
    multiplicity is removed by a change of basis, so A_max(C) = sum of
    a^{dim Ext^1(C, a)} suffices; a pullback argument reduces decomposable end
    terms to indecomposable ones.
    """
    cat = s.cat
    alg = cat.alg
    at = atlas(cat)
    certainty = Certainty.EXHAUSTIVE
    checked = 0
    for c_iv in s.members:
        ci = cat.idx(c_iv)
        esc = at.first_escape(ci, s.bits)
        if esc is not None:
            checked += 1
            if esc is not False:
                a = Module.from_counts({cat.ind[y]: 1 for y in esc.support})
                return ExtClosureReport(False, Certainty.EXHAUSTIVE, (a, esc.middle, Module.of(c_iv)), checked)
            continue
        c = Module.of(c_iv)
        caps = [(iv, cat.ext(1, c, Module.of(iv))) for iv in s.members]
        caps = [(iv, e) for iv, e in caps if e]
        if not caps:
            continue
        a_max = Module.from_counts(dict(caps))
        mids, cert = extension_middle_terms(alg, c, a_max, cfg)
        certainty = Certainty.combine(certainty, cert)
        for b in sorted(mids, key=lambda m: m.summands):
            checked += 1
            if b not in s:
                return ExtClosureReport(False, Certainty.EXHAUSTIVE, (a_max, b, c), checked)
    return ExtClosureReport(True, certainty, None, checked)


def extension_closure(s: Subcat, cfg: SearchConfig | None = None) -> Subcat:
    """Smallest extension-closed summand-closed subcategory containing S."""
    cur = s
    while True:
        rep = is_extension_closed(cur, cfg)
        if rep.closed:
            return cur
        cur = cur | Subcat(cur.cat, cur.cat.module_bits(rep.counterexample[1]))


# -- debug assertions -------------------------------------------------------


class SummandClosureError(AssertionError):
    pass


def assert_summand_closed(s: Subcat, member, pairs: int = 12) -> None:
    """The unclosed membership test agrees with the bitset on direct sums.

    For X, Y inside S the sum X + Y must pass ``member``; for X outside S the sum
    X + Y (Y in S) must fail it, otherwise S would not be closed under summands.
    """
    import random

    cat = s.cat
    rng = random.Random(s.bits)
    ins = s.members
    outs = [iv for iv in cat.ind if iv not in s]
    if not ins:
        return
    for _ in range(pairs):
        x, y = rng.choice(ins), rng.choice(ins)
        if not member(Module.of(x) + Module.of(y)):
            raise SummandClosureError(f"{x.label} + {y.label} rejected by the construction")
        if outs:
            z = rng.choice(outs)
            if member(Module.of(z) + Module.of(y)):
                raise SummandClosureError(f"{z.label} + {y.label} accepted though {z.label} is not a member")
