import numpy as np
import pytest

from nakcot.core.algebra import Interval, Module, NakayamaAlgebra, list_indecomposables, parse_interval
from nakcot.core.homology import (
    ext_dim,
    global_dimension,
    hom_space,
    injective_envelope,
    omega,
    omega_inv,
    projective_cover,
    projective_cover_module,
)
from nakcot.core.labels import derive_label_dictionary, load_label_dictionary
from nakcot.core.rep import interval_rep, matrix_rep

from conftest import cat_of


@pytest.mark.parametrize("n,m,count", [(9, 4, 30), (1, 2, 1), (2, 2, 3), (5, 3, 12)])
def test_indecomposable_count(n, m, count):
    alg = NakayamaAlgebra(n, m)
    ind = list_indecomposables(alg)
    assert len(ind) == count == sum(min(m, n - v + 1) for v in range(1, n + 1))
    assert ind == sorted(ind)


def test_every_interval_rep_is_indecomposable_and_bound():
    alg = NakayamaAlgebra(9, 4)
    for iv in list_indecomposables(alg):
        r = interval_rep(alg, iv)
        assert r.satisfies_relations()
        assert r.decompose() == Module.of(iv)
        assert hom_space(alg, iv, iv).dim == 1


def test_bad_algebras_rejected():
    for args in ((0, 2), (3, 1), (3, 2, 4)):
        with pytest.raises(ValueError):
            NakayamaAlgebra(*args)


def test_parse_interval_forms():
    assert parse_interval("3:2") == Interval(3, 2)
    assert parse_interval("(3, 2)") == Interval(3, 2)
    with pytest.raises(ValueError):
        parse_interval("M^1_2")


def test_hom_table_2_2():
    cat = cat_of(2, 2)
    assert [iv.label for iv in cat.ind] == ["1:1", "1:2", "2:1"]
    assert cat.hom_table.tolist() == [[1, 0, 0], [1, 1, 0], [0, 1, 1]]


def test_ext_table_2_2_in_two_characteristics():
    for p in (2, 3):
        t = cat_of(2, 2, p).ext_table(1)
        assert t.tolist() == [[0, 0, 1], [0, 0, 0], [0, 0, 0]]


def test_identity_in_endomorphisms():
    alg = NakayamaAlgebra(4, 3)
    for iv in list_indecomposables(alg):
        hs = hom_space(alg, iv, iv)
        r = interval_rep(alg, iv)
        ident = np.concatenate([np.eye(d, dtype=np.int64).ravel() for d in r.dims])
        assert np.array_equal(hs.vectors() % 2, ident[None, :] % 2)


def test_distinct_simples_orthogonal():
    alg = NakayamaAlgebra(5, 3)
    for a in range(1, 6):
        for b in range(1, 6):
            if a != b:
                assert hom_space(alg, Interval(a, 1), Interval(b, 1)).dim == 0


@pytest.mark.parametrize("n,m", [(3, 2), (4, 3), (9, 4)])
def test_ext_vanishing_on_projectives_and_injectives(n, m):
    cat = cat_of(n, m)
    alg = cat.alg
    for x in cat.ind:
        for y in cat.ind:
            for i in range(1, cat.global_dimension + 1):
                if x.is_projective(alg) or y.is_injective(alg):
                    assert cat.ext_table(i)[cat.idx(x), cat.idx(y)] == 0


def test_cover_of_simple_9_4():
    alg = NakayamaAlgebra(9, 4)
    for v in range(1, 10):
        cover = projective_cover_module(alg, Module.of(Interval(v, 1)))
        assert cover == Module.of(Interval(v, min(4, 10 - v)))


def test_cover_and_envelope_trivial_cases():
    alg = NakayamaAlgebra(6, 3)
    for iv in list_indecomposables(alg):
        r = interval_rep(alg, iv)
        cov = projective_cover(r)
        env = injective_envelope(r)
        assert cov.is_epi() and cov.is_morphism()
        assert env.is_mono() and env.is_morphism()
        if iv.is_projective(alg):
            assert cov.source.decompose() == Module.of(iv)
        if iv.is_injective(alg):
            assert env.target.decompose() == Module.of(iv)


def test_syzygies():
    alg = NakayamaAlgebra(2, 2)
    assert omega(alg, Module.of(Interval(1, 1))) == Module.of(Interval(2, 1))
    alg = NakayamaAlgebra(7, 3)
    for iv in list_indecomposables(alg):
        if iv.is_projective(alg):
            assert omega(alg, Module.of(iv)) == Module.zero()
        if iv.is_injective(alg):
            assert omega_inv(alg, Module.of(iv)) == Module.zero()


def test_matrix_rep_shapes():
    alg = NakayamaAlgebra(5, 3)
    for v in range(1, 6):
        r = matrix_rep(alg, Module.of(Interval(v, 1)))
        assert r.dims == tuple(int(u == v) for u in range(1, 6))
        assert not any(np.any(a) for a in r.arrows)
    r = interval_rep(alg, Interval(2, 3))
    for a in (1, 2):
        assert np.array_equal(r.arrows[a], np.eye(1, dtype=np.int64))
    big = matrix_rep(alg, Module.of(Interval(1, 3), Interval(2, 2), Interval(2, 3)))
    assert big.satisfies_relations()
    assert big.decompose() == Module.of(Interval(1, 3), Interval(2, 2), Interval(2, 3))


def test_global_dimension_small():
    assert global_dimension(NakayamaAlgebra(1, 2)) == 0
    assert global_dimension(NakayamaAlgebra(2, 2)) == 1
    assert global_dimension(NakayamaAlgebra(3, 2)) == 2
    assert cat_of(9, 4).global_dimension == global_dimension(NakayamaAlgebra(9, 4))


def test_higher_ext_by_shifting():
    alg = NakayamaAlgebra(3, 2)
    # 0 -> S3 -> P2 -> P1 -> S1 -> 0
    assert ext_dim(alg, 2, Interval(1, 1), Interval(3, 1)) == 1
    assert ext_dim(alg, 2, Interval(1, 1), Interval(2, 1)) == 0


def test_label_dictionary_is_derived_consistently():
    shipped = load_label_dictionary()
    assert shipped == derive_label_dictionary()
    assert len(shipped) == 30
    alg = NakayamaAlgebra(9, 4)
    for i in range(1, 7):
        assert shipped[f"P_{i}"].is_projective(alg)


def test_ar_translate_is_injective_on_nonprojectives():
    cat = cat_of(6, 3)
    seen = set()
    for iv in cat.ind:
        t = cat.ar_translate(iv)
        if iv.is_projective(cat.alg):
            assert t is None
        else:
            assert t is not None and t not in seen
            seen.add(t)
