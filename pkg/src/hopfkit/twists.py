"""Drinfeld twists, twisted Hopf algebras and coalgebras, R-matrices.

Twist equation, with J in H (x) H:

    (J (x) 1) (Delta (x) id)(J) = (1 (x) J) (id (x) Delta)(J)

The twisted coproduct is Delta^J(b) = J Delta(b) J^{-1}, the twisted
antipode is S^J(b) = Q S(b) Q^{-1} with Q = m (id (x) S)(J), and
R = J_21 J^{-1} is a triangular structure on H^J.  The falling-factorial twist
on the two-dimensional nonabelian p-Lie algebra satisfies this ordering and
not the mirrored one once p > 2, which is what fixes the choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import factorial

import numpy as np

from .hopf import (
    CoalgebraPresentation,
    HopfPresentation,
    NotInvertible,
    apply_map,
    embed,
    invert,
    left_operator,
    multiply,
    multiply_all,
    power,
    right_operator,
    swap,
    unit_element,
)
from .linalg import PrimeField, SparseTensor, inverse, rank
from .report import CheckReport, ConsistencyError

# Which side the extra J factor sits on in the twist equation: "left" is the
# form in the module docstring, "right" its mirror image.
TWIST_EQUATION_SIDE = "left"


@dataclass(frozen=True, eq=False)
class Twist:
    parent: HopfPresentation
    J: SparseTensor

    @cached_property
    def inverse(self) -> SparseTensor:
        return invert(self.parent, self.J)


@dataclass(frozen=True, eq=False)
class RMatrix:
    parent: HopfPresentation
    R: SparseTensor


def _witness(h, x: SparseTensor, y: SparseTensor) -> dict:
    diff = x - y
    idx, _ = next(iter(diff.items()))
    return {"component": [h.basis[i] for i in idx], "indices": list(idx)}


def twist_equation_sides(h: HopfPresentation, J: SparseTensor, side: str = TWIST_EQUATION_SIDE):
    d1 = apply_map(h, J, "coproduct", 0)     # (Delta (x) id)(J)
    d2 = apply_map(h, J, "coproduct", 1)     # (id (x) Delta)(J)
    j12 = embed(h, J, (0, 1), 3)
    j23 = embed(h, J, (1, 2), 3)
    if side == "right":
        return multiply(h, d1, j12), multiply(h, d2, j23)
    return multiply(h, j12, d1), multiply(h, j23, d2)


def check_twist(h: HopfPresentation, J: SparseTensor, side: str = TWIST_EQUATION_SIDE) -> CheckReport:
    rep = CheckReport("twist")
    if J.arity != 2 or J.dim != h.dim or J.field != h.field:
        rep.add("shape", False, detail="J must be an arity-2 element over the same space")
        return rep
    try:
        inv = invert(h, J)
        rep.add("invertible", True)
        rep.data["inverse_terms"] = len(inv)
    except NotInvertible as exc:
        rep.add("invertible", False, detail=str(exc))
    one = unit_element(h, 1)
    for slot, nm in ((0, "counit_left"), (1, "counit_right")):
        e = apply_map(h, J, "counit", slot)
        rep.add(nm, e == one, None if e == one else _witness(h, e, one))
    lhs, rhs = twist_equation_sides(h, J, side)
    rep.add("twist_equation", lhs == rhs, None if lhs == rhs else _witness(h, lhs, rhs))
    return rep


def _conjugation_matrix(h: HopfPresentation, left: SparseTensor, right: SparseTensor) -> np.ndarray:
    """Matrix of X -> left X right on H (x) H (row-major flattening)."""
    return h.field.matmul(left_operator(h, left), right_operator(h, right))


def twisted_coproduct(h: HopfPresentation, J: SparseTensor, J_inv: SparseTensor | None = None) -> np.ndarray:
    """Delta^J as a structure tensor."""
    f, n = h.field, h.dim
    J_inv = invert(h, J) if J_inv is None else J_inv
    op = _conjugation_matrix(h, J, J_inv)
    return f.matmul(op, h.D.reshape(n * n, n)).reshape(n, n, n)


def drinfeld_element(h: HopfPresentation, J: SparseTensor) -> np.ndarray:
    """Q = m (id (x) S)(J) as a coordinate vector."""
    s_j = apply_map(h, J, "antipode", 1)
    f = h.field
    return f.tensordot(s_j.dense(), h.M, ([0, 1], [0, 1]))


def twisted_antipode(h: HopfPresentation, J: SparseTensor) -> np.ndarray:
    """S^J(b) = Q S(b) Q^{-1}."""
    f = h.field
    Q = drinfeld_element(h, J)
    LQinv = inverse(f, h.algebra.regular(Q))
    if LQinv is None:
        raise ConsistencyError("m (id x S)(J) is not invertible")
    Qinv = f.matmul(LQinv, h.unit)
    RQinv = f.tensordot(Qinv, h.algebra.right_mats, ([0], [0]))
    return f.matmul(h.algebra.regular(Q), f.matmul(RQinv, h.S))


def apply_twist(h: HopfPresentation, J: SparseTensor, name: str = "") -> HopfPresentation:
    """H^J: same algebra, Delta^J = J Delta J^{-1}, twisted antipode."""
    J_inv = invert(h, J)
    D = twisted_coproduct(h, J, J_inv)
    S = twisted_antipode(h, J)
    return h.with_coalgebra(D, S, name or (f"{h.name}^J" if h.name else ""))


def twisted_coalgebra(h: HopfPresentation, psi: SparseTensor) -> CoalgebraPresentation:
    """Delta_psi(b) = Delta(b) psi; meant for commutative h."""
    f, n = h.field, h.dim
    D = f.matmul(right_operator(h, psi), h.D.reshape(n * n, n)).reshape(n, n, n)
    return CoalgebraPresentation(f, h.basis, D, h.counit, f"{h.name}_psi" if h.name else "")


def r_matrix(h: HopfPresentation, J: SparseTensor) -> RMatrix:
    """R = J_21 J^{-1} (the algebra of H^J equals that of H)."""
    R = multiply(h, swap(J), invert(h, J))
    if multiply(h, swap(R), R) != unit_element(h, 2):
        raise ConsistencyError("R_21 R != 1 for a twist-derived R")
    return RMatrix(h, R)


def check_triangular(hJ: HopfPresentation, R: SparseTensor | RMatrix) -> CheckReport:
    R = R.R if isinstance(R, RMatrix) else R
    f, n = hJ.field, hJ.dim
    rep = CheckReport("triangular")
    one2 = unit_element(hJ, 2)
    r21r = multiply(hJ, swap(R), R)
    rep.add("unitarity", r21r == one2, None if r21r == one2 else _witness(hJ, r21r, one2))
    try:
        R_inv = invert(hJ, R)
    except NotInvertible as exc:
        rep.add("invertible", False, detail=str(exc))
        return rep
    rep.add("invertible", True)
    conj = f.matmul(_conjugation_matrix(hJ, R, R_inv), hJ.D.reshape(n * n, n)).reshape(n, n, n)
    op = np.transpose(hJ.D, (1, 0, 2))
    bad = np.flatnonzero(np.any(conj != op, axis=(0, 1)))
    rep.add("intertwines_coproduct", bad.size == 0,
            None if bad.size == 0 else {"element": hJ.basis[int(bad[0])]})
    r13 = embed(hJ, R, (0, 2), 3)
    r23 = embed(hJ, R, (1, 2), 3)
    r12 = embed(hJ, R, (0, 1), 3)
    lhs = apply_map(hJ, R, "coproduct", 0)
    rhs = multiply(hJ, r13, r23)
    rep.add("hexagon_left", lhs == rhs, None if lhs == rhs else _witness(hJ, lhs, rhs))
    lhs = apply_map(hJ, R, "coproduct", 1)
    rhs = multiply(hJ, r13, r12)
    rep.add("hexagon_right", lhs == rhs, None if lhs == rhs else _witness(hJ, lhs, rhs))
    return rep


def minimality_rank(h, R: SparseTensor | RMatrix) -> tuple[int, bool]:
    """Rank of R viewed as a dim x dim matrix, and whether it is full."""
    R = R.R if isinstance(R, RMatrix) else R
    r = rank(R.field, R.dense())
    return r, r == h.dim


def check_gauge_element(h: HopfPresentation, u: SparseTensor) -> bool:
    if apply_map(h, u, "counit", 0) != h.field.one:
        return False
    try:
        invert(h, u)
    except NotInvertible:
        return False
    return True


def gauge_transform(h: HopfPresentation, J: SparseTensor, u: SparseTensor) -> SparseTensor:
    """(u (x) u) J Delta(u)^{-1}."""
    if not check_gauge_element(h, u):
        raise ValueError("gauge element must be invertible with counit 1")
    uu = multiply(h, embed(h, u, (0,), 2), embed(h, u, (1,), 2))
    du_inv = apply_map(h, invert(h, u), "coproduct", 0)
    return multiply_all(h, uu, J, du_inv)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _require_prime(h) -> PrimeField:
    if not isinstance(h.field, PrimeField):
        raise ValueError("this builder needs a prime field")
    return h.field


def exp_twist(h: HopfPresentation, a: SparseTensor, b: SparseTensor) -> SparseTensor:
    """sum_{i<p} a^i (x) b^i / i!  (requires a^p = b^p = 0)."""
    f = _require_prime(h)
    p = f.p
    zero = SparseTensor(f, 1, h.dim)
    if power(h, a, p) != zero or power(h, b, p) != zero:
        raise ValueError("exp twist needs a^p = b^p = 0")
    out = SparseTensor(f, 2, h.dim)
    ai, bi = unit_element(h), unit_element(h)
    for i in range(p):
        out = out + _outer(ai, bi).scale(f.inv(factorial(i) % p))
        ai, bi = multiply(h, ai, a), multiply(h, bi, b)
    return out


def _outer(x: SparseTensor, y: SparseTensor) -> SparseTensor:
    return SparseTensor(x.field, 2, x.dim,
                        {(i[0], j[0]): c * d for i, c in x.items() for j, d in y.items()})


def falling_factorial_twist(h: HopfPresentation, x: SparseTensor, y: SparseTensor) -> SparseTensor:
    """sum_{i<p} x(x-1)...(x-i+1) (x) y^i / i!  (requires xy - yx = y, x^p = x, y^p = 0)."""
    f = _require_prime(h)
    p = f.p
    one = unit_element(h)
    if power(h, x, p) != x or power(h, y, p) != SparseTensor(f, 1, h.dim):
        raise ValueError("falling factorial twist needs x^p = x and y^p = 0")
    if multiply(h, x, y) - multiply(h, y, x) != y:
        raise ValueError("falling factorial twist needs [x, y] = y")
    out = SparseTensor(f, 2, h.dim)
    fall, yi = one, one
    for i in range(p):
        out = out + _outer(fall, yi).scale(f.inv(factorial(i) % p))
        fall = multiply(h, fall, x - one.scale(i))
        yi = multiply(h, yi, y)
    return out


def push_forward(phi: np.ndarray, x: SparseTensor, field) -> SparseTensor:
    """Apply the linear map ``phi`` (target x source) to every slot."""
    arr = x.dense()
    for s in range(x.arity):
        arr = np.moveaxis(field.tensordot(phi, arr, ([1], [s])), 0, s)
    return SparseTensor.from_dense(field, arr)


@dataclass
class WittTwist:
    i: int
    sub_hopf: HopfPresentation
    J_sub: SparseTensor
    inclusion: np.ndarray
    parent: HopfPresentation
    J: SparseTensor


def witt_twist(p: int, i: int, parent: HopfPresentation | None = None) -> WittTwist:
    """The twist J(i): falling-factorial twist on span(i^-1 x_0, i x_i), pushed into u(witt)."""
    from . import plie

    if i % p == 0:
        raise ValueError("i must be nonzero mod p")
    W = plie.witt(p)
    f = W.field
    vecs = np.zeros((2, p), dtype=np.int64)
    vecs[0, 0] = f.inv(i)
    vecs[1, i % p] = i % p
    sub = plie.subalgebra(W, vecs, ("x", "y"), f"witt_sub{i}")
    U_sub = plie.enveloping(sub)
    gx, gy = plie.monomial_index_list(2, p)
    J_sub = falling_factorial_twist(
        U_sub, SparseTensor(f, 1, U_sub.dim, {(gx,): 1}), SparseTensor(f, 1, U_sub.dim, {(gy,): 1}))
    inc = plie.pbw_inclusion(W, vecs)
    parent = plie.enveloping(W) if parent is None else parent
    return WittTwist(i, U_sub, J_sub, inc, parent, push_forward(inc, J_sub, f))
