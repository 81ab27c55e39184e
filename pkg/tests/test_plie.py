from itertools import product

import numpy as np
import pytest

from hopfkit.degeneracy import analyze
from hopfkit.hopf import check_hopf
from hopfkit.linalg import PrimeField
from hopfkit.plie import (PLiePresentation, abelian2, catalog, check_plie, enveloping, frobenius_check,
                          generator_element, gl3_frobenius_functional, gl3_parabolic, monomial_index_list,
                          nonabelian2, pbw_certificate, plie_from_json, plie_to_json, reduced_enveloping,
                          torus, witt)
from oracles import element_power


@pytest.mark.parametrize("p", [2, 3, 5])
def test_catalog_algebras_pass(p):
    for L in (abelian2(p), nonabelian2(p), torus(2, p)):
        assert check_plie(L).passed


@pytest.mark.parametrize("p", [3, 5])
def test_witt_passes(p):
    rep = check_plie(witt(p))
    assert rep.passed
    assert rep["pbw_certificate"].passed


def test_witt_rejects_p2():
    with pytest.raises(ValueError):
        witt(2)


def test_bad_pmap_is_caught():
    # [x, y] = y with x^[p] = 0 violates ad(x^[p]) = ad(x)^p
    L = PLiePresentation(PrimeField(3), ("x", "y"), nonabelian2(3).bracket, np.zeros((2, 2), dtype=np.int64))
    assert not check_plie(L)["restricted_ad"].passed


def test_envelope_shapes():
    U = enveloping(abelian2(2))
    assert U.dim == 4 and U.is_commutative() and U.is_cocommutative()
    G = enveloping(nonabelian2(2))
    assert G.dim == 4 and not G.is_commutative()


def test_witt_envelope_commutator():
    L = witt(3)
    U = enveloping(L).algebra
    x1, x2 = generator_element(L, [0, 1, 0]), generator_element(L, [0, 0, 1])
    diff = (U.product(x1, x2) - U.product(x2, x1)) % 3
    assert np.array_equal(diff, generator_element(L, [1, 0, 0]))


def test_reduced_enveloping_examples():
    L = nonabelian2(3)
    assert np.array_equal(reduced_enveloping(L, [0, 0]).M, enveloping(L).M)
    line = PLiePresentation(PrimeField(2), ("x",), np.zeros((1, 1, 1), dtype=np.int64), [[0]])
    a = reduced_enveloping(line, [1])
    x = np.array([0, 1])
    assert a.dim == 2
    assert np.array_equal(a.product(x, x), a.unit)       # x^2 = 1, so (x + 1)^2 = 0
    assert analyze(a).radical_dim == 1
    torus = PLiePresentation(PrimeField(2), ("x",), np.zeros((1, 1, 1), dtype=np.int64), [[1]])
    b = reduced_enveloping(torus, [0])
    assert np.array_equal(b.product(x, x), x)            # idempotent
    assert analyze(b).radical_dim == 0


def test_frobenius_examples():
    assert not frobenius_check(abelian2(3), [1, 1])
    assert frobenius_check(nonabelian2(3), [0, 1])
    assert frobenius_check(gl3_parabolic(2), gl3_frobenius_functional(2))


def test_catalog_lookup():
    a = catalog("abelian2", 3)
    assert a.dim == 2 and not a.bracket.any() and not a.pmap.any()
    t = catalog("torus(1)", 2)
    assert t.dim == 1 and t.pmap[0, 0] == 1
    g = catalog("gl3_parabolic", 2)
    assert g.basis == ("E11", "E12", "E13", "E21", "E22", "E23")
    with pytest.raises(KeyError):
        catalog("sl2", 3)


def test_gl3_envelope_hopf_at_p2():
    assert check_hopf(enveloping(gl3_parabolic(2))).passed


def test_pbw_certificate_for_gl3_at_p3():
    # 729-dimensional envelope: only the relation certificate is run
    assert pbw_certificate(gl3_parabolic(3)) is None


def test_plie_json_roundtrip():
    L = witt(3)
    back, xi = plie_from_json(plie_to_json(L, [1, 0, 0]))
    assert np.array_equal(back.bracket, L.bracket) and np.array_equal(back.pmap, L.pmap)
    assert list(xi) == [1, 0, 0]


@pytest.mark.parametrize("name,p", [("abelian2", 2), ("nonabelian2", 3), ("torus(2)", 3), ("witt", 3),
                                    ("nonabelian2", 2)])
def test_jacobson_oracle(name, p):
    """For every v in L: v^p computed in u(L) lies in L and ad(v^p) = ad(v)^p."""
    L = catalog(name, p)
    U = enveloping(L).algebra
    gens = monomial_index_list(L.dim, p)
    M = U.M.astype(np.int64)
    for v in product(range(p), repeat=L.dim):
        x = generator_element(L, v)
        y = element_power(M, x, p, p)
        rest = np.delete(y, gens)
        assert not rest.any()
        w = y[gens]
        adv = L.ad_of(np.array(v))
        assert np.array_equal(L.ad_of(w), np.linalg.matrix_power(adv.astype(np.int64), p) % p)
