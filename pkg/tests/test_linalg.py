from fractions import Fraction

import numpy as np
import pytest

from hopfkit.hopf import invert, multiply, unit_element
from hopfkit.linalg import (QQ, PrimeField, SparseTensor, contract, field_from_spec, field_to_json,
                            field_from_json, in_span, inverse, nullspace, rank, rref, solve)
from hopfkit.plie import abelian2, enveloping, generator_element
from hopfkit.twists import exp_twist
from oracles import gf_rank

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_field_specs_roundtrip():
    for spec, f in (("Fp:7", PrimeField(7)), ("Q", QQ), ("F3", F3)):
        g = field_from_spec(spec)
        assert g == f
        assert field_from_json(field_to_json(g)) == f
    with pytest.raises(ValueError):
        field_from_spec("GF(4)")


def test_rank_examples():
    assert rank(F5, np.eye(3, dtype=np.int64)) == 3
    assert rank(F3, np.zeros((4, 2), dtype=np.int64)) == 0
    assert rank(QQ, QQ.asarray([[1, 2], [2, 4]])) == 1
    assert rank(F2, [[1, 1], [1, 1]]) == 1


def test_rank_of_minimal_r_matrix_flattening():
    from hopfkit.plie import nonabelian2
    from hopfkit.twists import falling_factorial_twist, r_matrix

    L = nonabelian2(2)
    U = enveloping(L)
    x = SparseTensor.from_dense(F2, generator_element(L, [1, 0]))
    y = SparseTensor.from_dense(F2, generator_element(L, [0, 1]))
    R = r_matrix(U, falling_factorial_twist(U, x, y)).R
    assert rank(F2, R.dense()) == 4 == gf_rank(R.dense(), 2)


def test_solve_examples():
    b = np.array([1, 2, 0], dtype=np.int64)
    assert np.array_equal(solve(F3, np.eye(3, dtype=np.int64), b), b)
    assert solve(F3, [[0]], [1]) is None
    x = solve(QQ, QQ.asarray([[2, 1], [1, 3]]), QQ.asarray([1, 0]))
    assert list(x) == [Fraction(3, 5), Fraction(-1, 5)]


def test_inverse_and_nullspace():
    m = np.array([[1, 2], [3, 4]], dtype=np.int64)
    inv = inverse(F5, m)
    assert np.array_equal(F5.matmul(m, inv), np.eye(2, dtype=np.int64))
    assert inverse(F2, m) is None                     # det = -2 = 0 mod 2
    ns = nullspace(F2, m)
    assert ns.shape == (1, 2) and not np.any(F2.matmul(m, ns.T))


def test_rref_pivots():
    r, piv = rref(F3, [[0, 2, 1], [0, 1, 1]])
    assert piv == [1, 2]
    assert in_span(F3, r, np.array([0, 1, 1]))


def test_exp_twist_inverse_multiplies_back():
    for p in (3, 5):
        f = PrimeField(p)
        L = abelian2(p)
        U = enveloping(L)
        h = SparseTensor.from_dense(f, generator_element(L, [1, 0]))
        x = SparseTensor.from_dense(f, generator_element(L, [0, 1]))
        J = exp_twist(U, h, x)
        J_inv = invert(U, J)
        assert J_inv == exp_twist(U, h.scale(-1), x)
        assert multiply(U, J, J_inv) == unit_element(U, 2) == multiply(U, J_inv, J)


def test_sparse_tensor_basics():
    t = SparseTensor(F3, 2, 3, {(0, 1): 4, (2, 2): 3})
    assert t.entries == {(0, 1): 1}
    assert SparseTensor.from_dense(F3, t.dense()) == t
    assert t.permute((1, 0)) == SparseTensor(F3, 2, 3, {(1, 0): 1})
    assert (t - t).is_zero()
    with pytest.raises(ValueError):
        SparseTensor(F3, 2, 3, {(0, 3): 1})
    with pytest.raises(ValueError):
        t + SparseTensor(F3, 1, 3, {(0,): 1})


def test_contract_examples():
    x = SparseTensor(F5, 1, 3, {(0,): 2, (2,): 1})
    ident = SparseTensor.from_dense(F5, np.eye(3, dtype=np.int64))
    assert contract(x, ident, [(0, 0)]) == x
    with pytest.raises(ValueError):
        contract(x, SparseTensor(F5, 1, 4, {(0,): 1}), [(0, 0)])
    with pytest.raises(ValueError):
        contract(x, ident, [(1, 0)])
