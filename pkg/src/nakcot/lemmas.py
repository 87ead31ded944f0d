"""Property suites over whole families of subcategories.

Each suite returns a :class:`~nakcot.cotorsion.Check`; details carry the
first few offending objects so a failure is reproducible from the report.
"""

from __future__ import annotations

import random

import numpy as np

from .core.algebra import NakayamaAlgebra
from .core.category import modcat
from .cotorsion import (
    Check,
    CotorsionPair,
    InvariantError,
    enumerate_cotorsion_pairs,
    hereditary_check,
    hereditary_conditions,
    lemma_imp_check,
    nested_pairs,
    relative_injectives,
    relative_projectives,
    wakamatsu_check,
    w_tower,
)
from .subcat.base import Certainty, Subcat, left_perp, right_perp
from .subcat.calculus import (
    cocone_member_fast,
    cocone_member_search,
    cone_member_fast,
    cone_member_search,
    ext_free,
    extension_closure,
    is_extension_closed,
)
from .subcat.galois import galois_enumerate
from .tautilt import (
    QuotientCtx,
    corp2_check,
    enumerate_stt,
    lemma_p3,
    lemma_p6,
    maximal_rigid,
)


def y1_suite(pairs: list[CotorsionPair]) -> Check:
    """Perp identities, relative (co)generators and extension closure per pair."""
    bad = []
    for pr in pairs:
        amb, U, V = pr.ambient, pr.U, pr.V
        probs = []
        if right_perp(U, amb) != V:
            probs.append("V != U^perp")
        if left_perp(V, amb) != U:
            probs.append("U != ^perp V")
        if not relative_projectives(amb) <= U:
            probs.append("P not in U")
        if not relative_injectives(amb) <= V:
            probs.append("I not in V")
        if not is_extension_closed(U).closed:
            probs.append("U not extension closed")
        if not is_extension_closed(V).closed:
            probs.append("V not extension closed")
        if probs:
            bad.append({"pair": pr.to_dict(), "problems": probs})
    nested = nested_pairs(pairs)
    detail = {"pairs": len(pairs), "failures": bad[:5], "nested": len(nested)}
    return Check("lemma_y1", not bad and not nested, detail)


def y2_suite(ambient: Subcat) -> Check:
    """Four hereditary conditions agree on every Galois fixed pair."""
    bad, total = [], 0
    for U, V in galois_enumerate(ambient):
        total += 1
        conds = hereditary_conditions(U, V)
        if len(set(conds.values())) != 1:
            bad.append({"U": U.labels, "V": V.labels, "conditions": conds})
    return Check("lemma_y2", not bad, {"galois_pairs": total, "failures": bad[:5]})


def random_extension_closed(cat, rng: random.Random, density: float = 0.25) -> Subcat:
    seed_bits = sum(1 << k for k in range(cat.size) if rng.random() < density)
    return extension_closure(Subcat(cat, seed_bits))


def wakamatsu_suite(cat, samples: int, seed: int) -> Check:
    """Ext^1(coker, D) = 0 for minimal left D-approximations that are mono."""
    rng = random.Random(seed)
    tested = applicable = 0
    bad = []
    for _ in range(samples):
        D = random_extension_closed(cat, rng, rng.choice((0.1, 0.2, 0.35)))
        tested += 1
        for x in cat.ind:
            if x in D:
                continue
            res = wakamatsu_check(D, x)
            if res.applicable:
                applicable += 1
                if not res.holds:
                    bad.append({"D": D.labels, "X": x.label})
    detail = {"subcategories": tested, "applicable_objects": applicable, "failures": bad[:5]}
    return Check("wakamatsu", not bad, detail)


def imp_suite(pairs: list[CotorsionPair]) -> Check:
    """Tower level i equals V cap ^perp(Sigma^i V) at every level up to gldim."""
    bad, levels = [], 0
    for pr in pairs:
        try:
            if not hereditary_check(pr).verdict:
                continue
        except InvariantError:
            bad.append({"pair": pr.to_dict(), "reason": "hereditary conditions disagree"})
            continue
        top = max(pr.U.cat.global_dimension, 1)
        tower = w_tower(pr, top, check=False)
        for i in range(1, top + 1):
            levels += 1
            c = lemma_imp_check(pr, i, tower)
            if not c.equal:
                bad.append({"pair": pr.to_dict(), "i": i, "diff": c.diff})
    return Check("lemma_imp", not bad, {"levels_checked": levels, "failures": bad[:5]})


def quotient_suites(ctx: QuotientCtx, prune: bool = True) -> list[Check]:
    """Lemmas on the quotient: p3, p5 (inside the enumeration), p6, Cor p2, maximal rigid."""
    out = []
    p3 = lemma_p3(ctx)
    out.append(Check("lemma_p3", not p3, {"pairs": len(ctx.objects) ** 2, "failures": p3[:10]}))
    try:
        stt = enumerate_stt(ctx, prune=prune)
        out.append(Check("lemma_p5", True, {"subsets_examined": stt.examined}))
    except InvariantError as exc:
        out.append(Check("lemma_p5", False, str(exc)))
        return out
    p6 = [k for k in stt.rigid_classes if not lemma_p6(ctx, k)]
    out.append(Check("lemma_p6", not p6, {"rigid_classes": len(stt.rigid_classes), "failures": [ctx.labels(k) for k in p6[:5]]}))
    p2 = corp2_check(ctx)
    out.append(Check("cor_p2", not p2.failures, {"triangles": p2.checked, "failures": p2.failures[:5]}))
    pairs = enumerate_cotorsion_pairs(ctx.G)
    lost = [(pr.to_dict(), v) for pr in pairs if (v := maximal_rigid(pr))]
    out.append(Check("maximal_rigid", not lost, {"pairs": len(pairs), "failures": lost[:5]}))
    return out


# -- oracle equivalence ------------------------------------------------------


def characteristic_suite(n: int, m: int, chars: list[int]) -> Check:
    """Hom and Ext^d tables (d up to the global dimension) agree across characteristics."""
    cats = [modcat(NakayamaAlgebra(n, m, p)) for p in chars]
    base = cats[0]
    top = max(c.global_dimension for c in cats)
    bad = []
    for other in cats[1:]:
        if not np.array_equal(base.hom_table, other.hom_table):
            bad.append({"char": other.p, "table": "hom"})
        for d in range(1, top + 1):
            if not np.array_equal(base.ext_table(d), other.ext_table(d)):
                bad.append({"char": other.p, "table": f"ext{d}"})
    detail = {"characteristics": list(chars), "ext_degrees": top, "indecomposables": base.size, "failures": bad}
    return Check("characteristic_independence", not bad, detail)


def _cone_test_family(cat) -> list[Subcat]:
    full = Subcat.full(cat)
    fam = {Subcat.projectives(cat), Subcat.injectives(cat), full}
    for pr in enumerate_cotorsion_pairs(full):
        fam.update((pr.U, pr.V, pr.heart))
    return sorted(fam, key=lambda s: s.bits)


def cone_oracle_suite(cat) -> Check:
    """Cone/CoCone fast path against the definitional search on every object.

    Pairs (s1, s2) range over the U, V and co-hearts of all cotorsion pairs,
    together with P, I and the whole category, whenever Ext^1(s2, s1) = 0.
    """
    fam = _cone_test_family(cat)
    bad, compared, probabilistic = [], 0, False
    for s1 in fam:
        for s2 in fam:
            if not ext_free(s2, s1):
                continue
            for iv in cat.ind:
                compared += 1
                fast = cone_member_fast(iv, s1, s2)
                slow, cert = cone_member_search(iv, s1, s2)
                probabilistic |= not slow and cert is Certainty.PROBABILISTIC
                cfast = cocone_member_fast(iv, s1, s2)
                cslow, ccert = cocone_member_search(iv, s1, s2)
                probabilistic |= not cslow and ccert is Certainty.PROBABILISTIC
                if fast != slow or cfast != cslow:
                    bad.append({"s1": s1.labels, "s2": s2.labels, "object": iv.label})
    detail = {"subcategories": len(fam), "comparisons": compared, "failures": bad[:5]}
    return Check("cone_fast_vs_search", not bad and not probabilistic, detail)
