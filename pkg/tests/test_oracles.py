"""Independent deciders checked against each other before anything else."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nakcot.core import _gf_fallback, linalg
from nakcot.core.algebra import Interval, Module, NakayamaAlgebra, list_indecomposables
from nakcot.core.homology import ext_dim, hom_dim, hom_space
from nakcot.subcat.approx import min_left_approx, min_right_approx
from nakcot.subcat.base import Subcat
from nakcot.subcat.galois import galois_enumerate, naive_galois_pairs
from nakcot.subcat.ses import atlas, count_extension_classes, ext1_by_cocycles, extension_middle_terms
from nakcot.lemmas import cone_oracle_suite

from conftest import cat_of

try:
    from nakcot.core import _gf
except ImportError:
    _gf = None

SMALL = [(n, m) for n in range(1, 5) for m in range(2, 4)]


def brute_rank(a, p):
    """Rank over GF(p) by counting the row span (tiny matrices only)."""
    a = np.asarray(a) % p
    span = set()
    for co in itertools.product(range(p), repeat=a.shape[0]):
        span.add(tuple((np.array(co) @ a) % p))
    r = 0
    while p**r < len(span):
        r += 1
    return r


matrices = st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 5)).flatmap(
    lambda t: st.tuples(
        st.just(t[0]),
        st.lists(st.lists(st.integers(0, t[0] - 1), min_size=t[2], max_size=t[2]), min_size=t[1], max_size=t[1]),
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_brute_force(pm):
    p, rows = pm
    a = np.array(rows, dtype=np.int64)
    assert _gf_fallback.rank(a.copy(), p) == brute_rank(a, p)


@pytest.mark.skipif(_gf is None, reason="compiled kernel not built")
@settings(max_examples=150, deadline=None)
@given(matrices)
def test_compiled_rref_equals_fallback(pm):
    p, rows = pm
    a = np.array(rows, dtype=np.int64)
    r1, p1 = _gf_fallback.rref(a.copy(), p)
    r2, p2 = _gf.rref(a.copy(), p)
    assert np.array_equal(r1, r2)
    assert list(p1) == list(p2)


def test_backend_is_compiled_when_available():
    if _gf is None:
        pytest.skip("compiled kernel not built")
    if "NAKCOT_PURE_PYTHON" in __import__("os").environ:
        pytest.skip("fallback forced")
    assert linalg.BACKEND == "compiled"


def interval_hom_rule(x: Interval, y: Interval) -> int:
    a, b = x.top, x.socle
    c, d = y.top, y.socle
    return int(c <= a <= d <= b)


@pytest.mark.parametrize("n,m", SMALL + [(5, 3), (6, 2)])
def test_hom_rule_matches_linear_algebra(n, m):
    alg = NakayamaAlgebra(n, m)
    ind = list_indecomposables(alg)
    for x in ind:
        for y in ind:
            assert hom_space(alg, x, y).dim == interval_hom_rule(x, y), (x.label, y.label)


@pytest.mark.parametrize("n,m", SMALL)
def test_ext1_three_ways(n, m):
    alg = NakayamaAlgebra(n, m)
    ind = list_indecomposables(alg)
    for x in ind:
        for y in ind:
            e = ext_dim(alg, 1, x, y)
            assert ext1_by_cocycles(alg, x, y) == e
            assert count_extension_classes(alg, x, y) == alg.char**e


@pytest.mark.parametrize("n,m", SMALL)
def test_category_tables_match_direct_ext(n, m):
    cat = cat_of(n, m)
    for d in range(1, cat.global_dimension + 1):
        t = cat.ext_table(d)
        for i, x in enumerate(cat.ind):
            for j, y in enumerate(cat.ind):
                assert t[i, j] == ext_dim(cat.alg, d, x, y)


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (3, 2), (2, 3)])
def test_galois_matches_naive(n, m):
    cat = cat_of(n, m)
    full = Subcat.full(cat)
    fast = {(u.bits, v.bits) for u, v in galois_enumerate(full)}
    slow = {(u.bits, v.bits) for u, v in naive_galois_pairs(full)}
    assert fast == slow


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_atlas_matches_middle_terms(n, m):
    cat = cat_of(n, m)
    at = atlas(cat)
    for c in range(cat.size):
        orbs = at.orbits(c)
        if orbs is None:
            continue
        for o in orbs:
            a = Module.from_counts({cat.ind[y]: 1 for y in o.support})
            mids, _ = extension_middle_terms(cat.alg, Module.of(cat.ind[c]), a)
            assert o.middle in mids


@pytest.mark.parametrize("n,m", [(4, 3), (5, 3), (9, 4)])
def test_fast_approximation_matches_general_path(n, m):
    import random

    cat = cat_of(n, m)
    rng = random.Random(n * 10 + m)
    for _ in range(25):
        s = Subcat(cat, rng.getrandbits(cat.size))
        for k in range(cat.size):
            for fast_fn in (min_right_approx, min_left_approx):
                fast = fast_fn(Module.of(cat.ind[k]), s)
                slow = fast_fn(cat.reps[k], s)
                assert fast.target == slow.target
                assert fast.map.is_epi() == slow.map.is_epi()
                assert fast.map.is_mono() == slow.map.is_mono()


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 4) for m in (2, 3)])
def test_cone_fast_path_matches_search(n, m):
    c = cone_oracle_suite(cat_of(n, m))
    assert c.passed, c.detail
