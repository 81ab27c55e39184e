"""Jacobson radical, center and matrix-algebra recognition.

In characteristic p the radical is computed with iterated trace functions:
for x in the regular representation lift L_x to an integer matrix and put

    g_i(x) = (Tr(L_x^(p^i)) mod p^(i+1)) / p^i,

then I_{-1} = A, I_i = {x in I_{i-1} : g_i(x y) = 0 for all y} and the radical
is I_l with l = floor(log_p dim A).  Each g_i is linear on I_{i-1}, so it is
only ever evaluated on a basis of I_{i-1}.  Over Q the radical is the kernel
of the trace form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hopf import AlgebraPresentation, CoalgebraPresentation, HopfPresentation
from .linalg import PrimeField, nullspace, rank, rref, row_basis
from .report import ConsistencyError


def dual_algebra(c: CoalgebraPresentation) -> AlgebraPresentation:
    """Convolution algebra of a coalgebra, on the dual basis."""
    basis = tuple(b[:-1] if b.endswith("*") else b + "*" for b in c.basis)
    return AlgebraPresentation(c.field, basis, c.D, c.counit, f"{c.name}*" if c.name else "")


def _products(a: AlgebraPresentation, rows: np.ndarray) -> np.ndarray:
    """prod[t, j] = rows[t] * b_j as coordinate vectors."""
    return a.field.tensordot(rows, a.M, ([1], [0]))


def _int_power_trace(L: np.ndarray, e: int, mod: int) -> int:
    """Tr(L^e) mod ``mod`` for a non-negative integer matrix."""
    result = None
    base = L % mod
    while e:
        if e & 1:
            result = base if result is None else (result @ base) % mod
        e >>= 1
        if e:
            base = (base @ base) % mod
    return int(np.trace(result)) % mod


def _trace_function(a: AlgebraPresentation, x: np.ndarray, i: int) -> int:
    p = a.field.p
    mod = p ** (i + 1)
    L = np.tensordot(x.astype(np.int64), a.left_mats.astype(np.int64), axes=([0], [0]))
    t = _int_power_trace(L, p**i, mod)
    if t % p**i:
        raise ConsistencyError("trace function is not divisible; element left the ideal chain")
    return (t // p**i) % p


def _radical_char_p(a: AlgebraPresentation) -> np.ndarray:
    f, n = a.field, a.dim
    p = f.p
    l = 0
    while p ** (l + 1) <= n:
        l += 1
    basis = f.eye(n)
    for i in range(l + 1):
        if basis.shape[0] == 0:
            break
        piv = [int(np.flatnonzero(row)[0]) for row in basis]   # basis is in rref
        g = np.array([_trace_function(a, u, i) for u in basis], dtype=np.int64)
        prods = _products(a, basis)                       # (m, n, n) rows in I_{i-1}
        coords = prods[..., piv]                          # (m, n, m)
        G = f.reduce(coords @ g)                          # G[t, j] = g_i(u_t b_j)
        ker = nullspace(f, G.T)                           # alpha with alpha^T G = 0
        basis = row_basis(f, f.matmul(ker, basis)) if ker.shape[0] else f.zeros((0, n))
    return basis


def _radical_char_0(a: AlgebraPresentation) -> np.ndarray:
    f, n = a.field, a.dim
    traces = f.reduce(np.array([np.trace(a.left_mats[k]) for k in range(n)], dtype=object))
    # T[k, j] = Tr(L_{b_k b_j}) = sum_m M[k, j, m] Tr(L_{b_m})
    T = f.tensordot(a.M, traces, ([2], [0]))
    ker = nullspace(f, T.T)
    return row_basis(f, ker) if ker.shape[0] else f.zeros((0, n))


def radical(a: AlgebraPresentation, certify: bool = True) -> np.ndarray:
    """Basis (rows, reduced echelon) of the Jacobson radical."""
    rad = _radical_char_p(a) if isinstance(a.field, PrimeField) else _radical_char_0(a)
    if certify:
        certify_radical(a, rad)
    return rad


def ideal_power_chain(a: AlgebraPresentation, ideal: np.ndarray) -> list[int]:
    """Dimensions of I, I^2, ... down to the first zero power (or stagnation)."""
    f = a.field
    dims = []
    cur = ideal
    while cur.shape[0]:
        dims.append(cur.shape[0])
        prods = f.tensordot(cur, f.tensordot(ideal, a.M, ([1], [1])), ([1], [1]))
        nxt = row_basis(f, prods.reshape(-1, a.dim))
        if nxt.shape[0] == cur.shape[0]:
            dims.append(nxt.shape[0])
            return dims
        cur = nxt
    dims.append(0)
    return dims


def is_nilpotent_ideal(a: AlgebraPresentation, ideal: np.ndarray) -> bool:
    return ideal_power_chain(a, ideal)[-1] == 0


def is_two_sided_ideal(a: AlgebraPresentation, ideal: np.ndarray) -> bool:
    f = a.field
    if ideal.shape[0] == 0:
        return True
    left = f.tensordot(ideal, a.M, ([1], [1])).reshape(-1, a.dim)     # b_j * u
    right = f.tensordot(ideal, a.M, ([1], [0])).reshape(-1, a.dim)    # u * b_j
    r = ideal.shape[0]
    return rank(f, np.vstack([ideal, left, right])) == r


def quotient_algebra(a: AlgebraPresentation, ideal: np.ndarray) -> AlgebraPresentation:
    """A / I on the standard basis vectors complementary to I's pivots."""
    f, n = a.field, a.dim
    if ideal.shape[0] == 0:
        return a
    red, piv = rref(f, ideal)
    red = red[: len(piv)]
    keep = [c for c in range(n) if c not in set(piv)]

    def reduce_mod(v):
        # red is in rref, so one subtraction clears every pivot column
        return f.reduce(v - f.tensordot(v[..., piv], red, ([v.ndim - 1], [0])))

    sub = a.M[np.ix_(keep, keep)]                       # (q, q, n)
    sub = reduce_mod(sub)
    Mq = sub[..., keep]
    unit = reduce_mod(a.unit)[keep]
    return AlgebraPresentation(f, tuple(a.basis[c] for c in keep), Mq, unit,
                               f"{a.name}/rad" if a.name else "")


def certify_radical(a: AlgebraPresentation, rad: np.ndarray) -> None:
    """Raise ConsistencyError unless rad is a nilpotent ideal with semisimple quotient."""
    if not is_two_sided_ideal(a, rad):
        raise ConsistencyError("computed radical is not a two-sided ideal")
    if not is_nilpotent_ideal(a, rad):
        raise ConsistencyError("computed radical is not nilpotent")
    if rad.shape[0]:
        q = quotient_algebra(a, rad)
        if radical(q, certify=False).shape[0]:
            raise ConsistencyError("quotient by the computed radical is not semisimple")


def center(a: AlgebraPresentation) -> np.ndarray:
    """Basis of {z : z b = b z for every basis element b}."""
    f, n = a.field, a.dim
    # z b_j - b_j z = sum_k z_k (M[k, j, :] - M[j, k, :])
    comm = f.reduce(a.M - np.transpose(a.M, (1, 0, 2)))   # [k, j, out]
    system = np.transpose(comm, (1, 2, 0)).reshape(n * n, n)
    ker = nullspace(f, system)
    return row_basis(f, ker) if ker.shape[0] else f.zeros((0, n))


SIMPLE = "simple_matrix"
SEMISIMPLE_NONSIMPLE = "semisimple_nonsimple"
NONSEMISIMPLE = "nonsemisimple"
SEMISIMPLE_Q = "semisimple"


@dataclass
class AlgebraAnalysis:
    radical: np.ndarray
    center: np.ndarray
    verdict: str
    matrix_size: int | None = None

    @property
    def radical_dim(self) -> int:
        return int(self.radical.shape[0])

    @property
    def center_dim(self) -> int:
        return int(self.center.shape[0])

    @property
    def is_simple(self) -> bool:
        return self.verdict == SIMPLE

    def label(self) -> str:
        return f"{SIMPLE}({self.matrix_size})" if self.is_simple else self.verdict

    def to_dict(self) -> dict:
        return {"verdict": self.label(), "radical_dim": self.radical_dim, "center_dim": self.center_dim}


def analyze(a: AlgebraPresentation) -> AlgebraAnalysis:
    """Radical, center and a verdict.

    Over F_p a central simple algebra is a full matrix algebra (finite
    division rings are fields), so radical 0, a one-dimensional center and a
    square dimension certify ``simple_matrix(n)``.  Over Q the verdict is
    only ``semisimple`` or ``nonsemisimple``.
    """
    rad = radical(a)
    cen = center(a)
    if rad.shape[0]:
        return AlgebraAnalysis(rad, cen, NONSEMISIMPLE)
    if not isinstance(a.field, PrimeField):
        return AlgebraAnalysis(rad, cen, SEMISIMPLE_Q)
    root = int(round(a.dim ** 0.5))
    if cen.shape[0] == 1 and root * root == a.dim:
        return AlgebraAnalysis(rad, cen, SIMPLE, root)
    return AlgebraAnalysis(rad, cen, SEMISIMPLE_NONSIMPLE)


def is_simple_matrix(a: AlgebraPresentation) -> AlgebraAnalysis:
    if not isinstance(a.field, PrimeField):
        raise ValueError("matrix-algebra verdicts are only offered over prime fields")
    return analyze(a)


def is_nondegenerate(h: HopfPresentation, psi) -> bool:
    """Whether the psi-twisted coalgebra of a commutative h is simple."""
    from .twists import twisted_coalgebra

    return is_simple_matrix(dual_algebra(twisted_coalgebra(h, psi))).is_simple
