import numpy as np
import pytest

from hopfkit.commutative import CommutativePair, alpha_p, constant_hopf, cyclic, group_algebra, heisenberg_twist
from hopfkit.degeneracy import (NONSEMISIMPLE, SEMISIMPLE_NONSIMPLE, SEMISIMPLE_Q, analyze, center,
                                certify_radical, dual_algebra, ideal_power_chain, is_nondegenerate,
                                is_simple_matrix, quotient_algebra, radical)
from hopfkit.hopf import AlgebraPresentation, unit_element
from hopfkit.linalg import QQ, PrimeField
from hopfkit.plie import abelian2, enveloping, gl3_frobenius_functional, gl3_parabolic, reduced_enveloping
from hopfkit.report import ConsistencyError
from hopfkit.twists import twisted_coalgebra
from oracles import brute_radical_dim


def matrix_algebra(n, f):
    """M_n on the matrix units E_ij, index i * n + j."""
    M = np.zeros((n * n,) * 3, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                M[i * n + j, j * n + k, i * n + k] = 1
    unit = np.zeros(n * n, dtype=np.int64)
    unit[[i * n + i for i in range(n)]] = 1
    return AlgebraPresentation(f, tuple(f"E{i}{j}" for i in range(n) for j in range(n)), M, unit, f"M{n}")


def truncated(n, f):
    """k[x]/(x^n)."""
    M = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n - i):
            M[i, j, i + j] = 1
    return AlgebraPresentation(f, tuple(f"x^{i}" for i in range(n)), M, np.eye(n, dtype=np.int64)[0])


def weyl(p):
    """k<x, d>/(dx - xd - 1, x^p, d^p) on the basis x^i d^j, the matrix algebra M_p."""
    f = PrimeField(p)
    n = p * p
    # act on k[x]/(x^p): x multiplies, d differentiates; the image is all of End
    X = np.zeros((p, p), dtype=np.int64)
    Dm = np.zeros((p, p), dtype=np.int64)
    for i in range(p - 1):
        X[i + 1, i] = 1
        Dm[i, i + 1] = (i + 1) % p
    mats = [np.linalg.matrix_power(X, i) @ np.linalg.matrix_power(Dm, j) % p for i in range(p) for j in range(p)]
    flat = np.array([m.reshape(-1) for m in mats]).T % p          # columns = basis images
    from hopfkit.linalg import inverse
    inv = inverse(f, flat)
    M = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            M[a, b] = f.matmul(inv, (mats[a] @ mats[b] % p).reshape(-1))
    unit = np.zeros(n, dtype=np.int64)
    unit[0] = 1
    return AlgebraPresentation(f, tuple(f"x{i}d{j}" for i in range(p) for j in range(p)), M, unit, "weyl")


def test_matrix_algebra_is_simple():
    an = is_simple_matrix(matrix_algebra(2, PrimeField(2)))
    assert an.label() == "simple_matrix(2)"
    assert an.radical_dim == 0 and an.center_dim == 1


def test_truncated_polynomial():
    a = truncated(4, PrimeField(2))
    an = analyze(a)
    assert an.verdict == NONSEMISIMPLE and an.radical_dim == 3
    assert brute_radical_dim(a.M, 2) == 3
    assert ideal_power_chain(a, an.radical) == [3, 2, 1, 0]


def test_center_of_m2_over_f3():
    cen = center(matrix_algebra(2, PrimeField(3)))
    assert cen.shape[0] == 1
    assert np.array_equal(cen[0], [1, 0, 0, 1])


def test_weyl_algebra_at_p3():
    a = weyl(3)
    an = analyze(a)
    assert an.center_dim == 1
    assert an.label() == "simple_matrix(3)"


def test_field_is_one_by_one_matrices():
    f = PrimeField(5)
    a = AlgebraPresentation(f, ("1",), np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64))
    assert analyze(a).label() == "simple_matrix(1)"


def test_functions_on_z2_split():
    fun, _ = constant_hopf(cyclic(2), PrimeField(2))
    assert analyze(fun.algebra).verdict == SEMISIMPLE_NONSIMPLE


def test_rationals_give_no_matrix_verdict():
    _, ka = constant_hopf(cyclic(3), QQ)
    with pytest.raises(ValueError):
        is_simple_matrix(ka.algebra)
    assert analyze(ka.algebra).verdict == SEMISIMPLE_Q
    assert analyze(truncated(3, QQ)).radical_dim == 2


def test_frobenius_gl3_at_p2():
    a = reduced_enveloping(gl3_parabolic(2), gl3_frobenius_functional(2))
    assert analyze(a).label() == "simple_matrix(8)"


def test_heisenberg_z3_over_f7():
    parent, psi = heisenberg_twist(CommutativePair(group_algebra(cyclic(3), PrimeField(7))))
    assert is_nondegenerate(parent, psi)
    an = analyze(dual_algebra(twisted_coalgebra(parent, psi)))
    assert an.label() == "simple_matrix(3)"


def test_heisenberg_alpha2():
    parent, psi = heisenberg_twist(alpha_p(PrimeField(2)))
    assert is_nondegenerate(parent, psi)


def test_untwisted_abelian_dual_has_radical():
    U = enveloping(abelian2(3))
    an = analyze(dual_algebra(twisted_coalgebra(U, unit_element(U, 2))))
    assert an.radical_dim == 8 and an.center_dim == 9
    assert not is_nondegenerate(U, unit_element(U, 2))


def test_quotient_by_radical_is_semisimple():
    _, ka = constant_hopf(cyclic(6), PrimeField(2))
    rad = radical(ka.algebra)
    q = quotient_algebra(ka.algebra, rad)
    assert q.dim == 3 and radical(q).shape[0] == 0


def test_certificate_rejects_wrong_radical():
    a = truncated(4, PrimeField(2))
    with pytest.raises(ConsistencyError):
        certify_radical(a, np.array([[0, 0, 1, 0]]))              # not an ideal
    with pytest.raises(ConsistencyError):
        certify_radical(a, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(ConsistencyError):
        certify_radical(a, np.array([[0, 0, 0, 1]]))              # quotient still nilpotent
