import itertools

import pytest

from nakcot.core.algebra import Interval, Module
from nakcot.core.homology import projective_dimension
from nakcot.core.labels import EXAMPLE_U_PRIME, EXAMPLE_W, EXAMPLE_W1_MINUS_W, EXAMPLE_X_MINUS_W
from nakcot.cotorsion import (
    HypothesisRejected,
    InvariantError,
    check_cotorsion_pair,
    enumerate_cotorsion_pairs,
    hereditary_check,
    hereditary_conditions,
    lemma_imp_check,
    main1_phi,
    main1_psi,
    mterm_level,
    nested_pairs,
    proper_mterm,
    search_validate,
    verify_main1,
    verify_main5,
    w_tower,
    wakamatsu_check,
)
from nakcot.subcat.base import Subcat, right_perp
from nakcot.subcat.calculus import is_extension_closed, sigma

from conftest import cat_of, named


def trivial_pairs(cat):
    full = Subcat.full(cat)
    return (
        check_cotorsion_pair(None, Subcat.projectives(cat), full),
        check_cotorsion_pair(None, full, Subcat.injectives(cat)),
    )


def test_trivial_pairs_are_hereditary():
    for n, m in ((3, 2), (5, 3), (9, 4)):
        for pr in trivial_pairs(cat_of(n, m)):
            assert pr.ok
            assert hereditary_check(pr).verdict


def test_failure_names_the_triangle():
    cat = cat_of(2, 2)
    S1 = Subcat.of(cat, [Interval(1, 1)])
    res = check_cotorsion_pair(None, S1, Subcat.full(cat))
    assert not res.ok and res.triangle == "orthogonality"
    res = check_cotorsion_pair(None, S1, right_perp(S1))
    assert not res.ok and res.triangle in ("right", "left")
    assert res.to_dict()["object"] is not None


def test_single_pair_when_semisimple():
    cat = cat_of(1, 2)
    pairs = enumerate_cotorsion_pairs(Subcat.full(cat))
    assert len(pairs) == 1
    assert pairs[0].U == pairs[0].V == Subcat.full(cat)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 3)])
def test_enumeration_matches_definitional_search(n, m):
    cat = cat_of(n, m)
    got = {(p.U.bits, p.V.bits) for p in enumerate_cotorsion_pairs(Subcat.full(cat))}
    brute = set()
    for u, v in itertools.product(range(1 << cat.size), repeat=2):
        if search_validate(None, Subcat(cat, u), Subcat(cat, v)):
            brute.add((u, v))
    assert got == brute


def test_enumeration_2_2_listing():
    cat = cat_of(2, 2)
    listed = sorted((p.U.labels, p.V.labels) for p in enumerate_cotorsion_pairs(Subcat.full(cat)))
    assert listed == [
        (["1:1", "1:2", "2:1"], ["1:1", "1:2"]),
        (["1:2", "2:1"], ["1:1", "1:2", "2:1"]),
    ]


def test_no_nested_pairs():
    cat = cat_of(4, 3)
    pairs = enumerate_cotorsion_pairs(Subcat.full(cat))
    assert not nested_pairs(pairs)
    # a pair is never reported as nested with itself
    assert not nested_pairs(pairs[:3] + pairs[:3])


def test_hereditary_conditions_agree_small():
    for n in range(1, 5):
        for m in (2, 3):
            cat = cat_of(n, m)
            for pr in enumerate_cotorsion_pairs(Subcat.full(cat)):
                conds = hereditary_conditions(pr.U, pr.V)
                assert len(set(conds.values())) == 1, conds


def test_example_pair_is_hereditary(example_pair, cat94, example_W):
    assert hereditary_check(example_pair).verdict
    assert example_pair.heart == example_W
    assert len(example_W) == 9


def test_example_tower(example_pair, cat94):
    t = w_tower(example_pair, 3)
    assert t[1] - t[0] == named(cat94, EXAMPLE_W1_MINUS_W)
    for a, b in zip(t.levels, t.levels[1:]):
        assert a <= b
    assert lemma_imp_check(example_pair, 1, t).equal
    assert lemma_imp_check(example_pair, 2, t).equal


def test_tower_constant_at_injectives():
    cat = cat_of(5, 3)
    pr = trivial_pairs(cat)[1]
    t = w_tower(pr, 3)
    assert all(lv == Subcat.injectives(cat) for lv in t.levels)
    for i in (1, 2, 3):
        c = lemma_imp_check(pr, i)
        assert c.equal and c.tower_side == Subcat.injectives(cat)


def test_imp_on_all_2_2_pairs():
    cat = cat_of(2, 2)
    for pr in enumerate_cotorsion_pairs(Subcat.full(cat)):
        if hereditary_check(pr).verdict:
            for i in (1, 2):
                assert lemma_imp_check(pr, i).equal


def test_phi_on_U_is_coheart_and_level(example_pair):
    W, V = example_pair.heart, example_pair.V
    for i in (1, 2):
        img = main1_phi(example_pair, i, example_pair)
        assert img.U == W
        assert img.V == w_tower(example_pair, i)[i]


def test_phi_on_example_U_prime(example_pair, cat94, example_W):
    Up = named(cat94, EXAMPLE_U_PRIME)
    inter = check_cotorsion_pair(None, Up, right_perp(Up))
    assert inter.ok
    img = main1_phi(example_pair, 1, inter)
    assert img.U - example_W == named(cat94, EXAMPLE_X_MINUS_W)
    back = main1_psi(example_pair, 1, img)
    assert back == inter


def test_phi_rejects_non_intermediate(example_pair):
    cat = example_pair.U.cat
    P = check_cotorsion_pair(None, Subcat.projectives(cat), Subcat.full(cat))
    with pytest.raises(ValueError):
        main1_phi(example_pair, 1, P)


def test_main1_trivial_pair():
    cat = cat_of(4, 3)
    pr = trivial_pairs(cat)[1]
    rep = verify_main1(pr, 1)
    assert rep.status == "pass"
    assert rep.counts == {"intermediate_pairs": 1, "pairs_in_W_i": 1}


def test_main1_exhaustive_2_2():
    cat = cat_of(2, 2)
    for pr in enumerate_cotorsion_pairs(Subcat.full(cat)):
        if not hereditary_check(pr).verdict:
            continue
        for i in range(1, max(cat.global_dimension, 1) + 1):
            rep = verify_main1(pr, i)
            assert rep.status == "pass", rep.to_dict()
            assert rep.counts["intermediate_pairs"] == rep.counts["pairs_in_W_i"]


def test_main1_caps_i_at_global_dimension():
    cat = cat_of(3, 2)
    pr = trivial_pairs(cat)[0]
    rep = verify_main1(pr, 7)
    assert any("global dimension" in n for n in rep.notes)
    with pytest.raises(ValueError):
        verify_main1(pr, 0)


def test_main5_degenerate_tower_rejected():
    cat = cat_of(5, 3)
    pr = trivial_pairs(cat)[1]
    rep = verify_main5(pr, 1, 2)
    assert rep.status == "rejected"
    assert rep.preconditions[0].name == "I_properly_in_W" and not rep.preconditions[0].passed
    with pytest.raises(HypothesisRejected):
        verify_main5(pr, 2, 1)


def test_main5_example_rejected_by_default(example_pair):
    rep = verify_main5(example_pair, 1, 2)
    assert rep.status == "rejected" and rep.conclusion is None


def test_wakamatsu_trivial_cases():
    cat = cat_of(6, 3)
    for D in (Subcat.injectives(cat), Subcat.full(cat)):
        for iv in cat.ind:
            if iv in D:
                continue
            res = wakamatsu_check(D, iv)
            assert res.applicable and res.holds
    res = wakamatsu_check(Subcat.full(cat), cat.ind[0])
    assert res.holds


def test_wakamatsu_reports_preconditions():
    cat = cat_of(2, 2)
    simples = Subcat.of(cat, [Interval(1, 1), Interval(2, 1)])
    res = wakamatsu_check(simples, Interval(1, 2))
    assert not res.applicable


def test_mterm_levels():
    assert mterm_level(2, "usage") == 1
    assert mterm_level(2, "definition") == 2
    with pytest.raises(ValueError):
        mterm_level(2, "other")


def test_proper_mterm_examples(cat94, example_W):
    G, rep = proper_mterm(example_W, 2)
    assert len(G) == 15 and G == w_tower_level(example_W, 1)
    assert rep.extension_closed and rep.enough_projectives
    I = Subcat.injectives(cat94)
    Gi, _ = proper_mterm(I, 3)
    assert Gi == I
    for n, m in ((2, 2), (3, 2)):
        cat = cat_of(n, m)
        G, _ = proper_mterm(Subcat.projectives(cat), 2)
        pd1 = Subcat.of(cat, [iv for iv in cat.ind if projective_dimension(cat.alg, Module.of(iv)) <= 1])
        assert G == pd1


def w_tower_level(W, k):
    from nakcot.cotorsion import tower_levels

    return tower_levels(W, k)[k]


def test_proper_mterm_rejects_nonrigid():
    cat = cat_of(2, 2)
    with pytest.raises(HypothesisRejected):
        proper_mterm(Subcat.full(cat), 2)


def test_shifted_pairs_of_example(example_pair):
    for i in (1, 2):
        s = sigma(example_pair.V, i)
        assert is_extension_closed(s).closed
        from nakcot.subcat.base import left_perp

        assert check_cotorsion_pair(None, left_perp(s), s).ok


def test_vanishing_variant_on_small_towers():
    from nakcot.cotorsion import section5_vanishing

    towers = 0
    for n in range(1, 6):
        for m in (2, 3):
            cat = cat_of(n, m)
            for pr in enumerate_cotorsion_pairs(Subcat.full(cat)):
                if hereditary_check(pr).verdict:
                    towers += 1
                    levels = w_tower(pr, max(cat.global_dimension, 1) + 1).levels
                    # Ext^m(W_a, W_b) = 0 for a <= b, m > a and for b < a, m > a
                    assert section5_vanishing(levels, strict_lower=True) == []
    assert towers == 47


def test_literal_vanishing_fails_on_example(example_pair):
    from nakcot.cotorsion import section5_vanishing

    levels = w_tower(example_pair, 3).levels
    assert {"m": 2, "a": 2, "b": 0} in section5_vanishing(levels)
    assert section5_vanishing(levels, strict_lower=True) == []
