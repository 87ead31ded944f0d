"""Randomized properties over small Nakayama algebras."""

import numpy as np
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from nakcot.core.algebra import Interval, Module, NakayamaAlgebra
from nakcot.core.rep import matrix_rep
from nakcot.cotorsion import (
    check_cotorsion_pair,
    enumerate_cotorsion_pairs,
    hereditary_check,
    lemma_imp_check,
    section5_vanishing,
    w_tower,
    wakamatsu_check,
)
from nakcot.subcat.base import Subcat, left_perp, right_perp
from nakcot.subcat.calculus import cone, extension_closure, is_extension_closed, omega, sigma
from nakcot.subcat.galois import ExtContext
from nakcot.tautilt import build_quotient_ctx, fac_closure, is_tau_rigid

from conftest import cat_of

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

algebras = st.tuples(st.integers(1, 6), st.integers(2, 4))


@st.composite
def cat_and_bits(draw, max_n=6):
    n, m = draw(st.integers(1, max_n)), draw(st.integers(2, 4))
    cat = cat_of(n, m)
    return cat, draw(st.integers(0, cat.full_bits))


@st.composite
def modules(draw):
    n, m = draw(algebras)
    alg = NakayamaAlgebra(n, m)
    tops = draw(st.lists(st.integers(1, n), min_size=0, max_size=5))
    ivs = [Interval(t, draw(st.integers(1, alg.max_length(t)))) for t in tops]
    return alg, Module.of(*ivs)


@SETTINGS
@given(modules())
def test_matrix_rep_roundtrip(am):
    alg, mod = am
    rep = matrix_rep(alg, mod)
    assert rep.satisfies_relations()
    assert rep.decompose() == mod
    assert rep.dims == mod.dimvec(alg)


@SETTINGS
@given(cat_and_bits())
def test_galois_closure_idempotent(cb):
    cat, bits = cb
    ctx = ExtContext(Subcat.full(cat))
    c = ctx.closure(bits)
    assert c & bits == bits
    assert ctx.closure(c) == c


@SETTINGS
@given(cat_and_bits(), st.integers(0, 2**30))
def test_perp_antitone_and_triple(cb, extra):
    cat, bits = cb
    S = Subcat(cat, bits)
    T = Subcat(cat, bits | (extra & cat.full_bits))
    assert right_perp(T) <= right_perp(S)
    assert left_perp(T) <= left_perp(S)
    assert right_perp(left_perp(right_perp(S))) == right_perp(S)


@SETTINGS
@given(cat_and_bits())
def test_extension_closure_is_closed(cb):
    cat, bits = cb
    E = extension_closure(Subcat(cat, bits))
    assert Subcat(cat, bits) <= E
    assert is_extension_closed(E).closed
    assert extension_closure(E) == E


@SETTINGS
@given(cat_and_bits())
def test_cone_with_zero_and_shift_contents(cb):
    cat, bits = cb
    S = Subcat(cat, bits)
    assert cone(Subcat.zero(cat), S) == S
    assert Subcat.injectives(cat) <= sigma(S)
    assert Subcat.projectives(cat) <= omega(S)
    assert sigma(S, 2) == sigma(sigma(S))


@SETTINGS
@given(st.integers(1, 5), st.integers(2, 4), st.sampled_from([3, 5]))
def test_tables_characteristic_free(n, m, p):
    a, b = cat_of(n, m, 2), cat_of(n, m, p)
    assert np.array_equal(a.hom_table, b.hom_table)
    for d in range(1, a.global_dimension + 1):
        assert np.array_equal(a.ext_table(d), b.ext_table(d))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(2, 3), st.data())
def test_random_pair_invariants(n, m, data):
    cat = cat_of(n, m)
    pairs = enumerate_cotorsion_pairs(Subcat.full(cat))
    pr = data.draw(st.sampled_from(pairs))
    assert is_extension_closed(pr.U).closed and is_extension_closed(pr.V).closed
    assert check_cotorsion_pair(None, pr.U, pr.V).ok
    assume(hereditary_check(pr).verdict)
    top = max(cat.global_dimension, 1)
    t = w_tower(pr, top + 1)
    for a, b in zip(t.levels, t.levels[1:]):
        assert a <= b
    for i in range(1, top + 1):
        assert lemma_imp_check(pr, i, t).equal
    # Ext^m(W_a, W_b) = 0 whenever m exceeds a
    assert section5_vanishing(t.levels, strict_lower=True) == []


@settings(max_examples=40, deadline=None)
@given(cat_and_bits(max_n=5), st.data())
def test_wakamatsu_random(cb, data):
    cat, bits = cb
    D = extension_closure(Subcat(cat, bits))
    x = data.draw(st.sampled_from(cat.ind))
    res = wakamatsu_check(D, x)
    if res.applicable:
        assert res.holds


def _small_ctx():
    cat = cat_of(4, 2)
    W = Subcat.of(cat, [Interval(1, 1), Interval(1, 2), Interval(2, 2), Interval(3, 2), Interval(4, 1)])
    return build_quotient_ctx(cone(W, W), W, sigma(W))


CTX = _small_ctx()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**20))
def test_tau_rigidity_deciders_and_heredity(raw):
    ctx = CTX
    key = raw & ctx.nonzero_bits
    v = is_tau_rigid(ctx, key)  # raises if the deciders disagree
    if v.value:
        sub = key & (key - 1)  # drop the lowest member
        assert is_tau_rigid(ctx, sub).value
        fac = ctx.key(fac_closure(ctx, key))
        assert fac & key == key
