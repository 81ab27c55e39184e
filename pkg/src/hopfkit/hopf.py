"""Finite-dimensional algebras, coalgebras and Hopf algebras by structure constants.

Conventions (all tensors are dense numpy arrays, read-only once built):

* ``M[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``;
* ``D[i, j, k]`` is the coefficient of ``e_i (x) e_j`` in ``Delta(e_k)``;
* ``S[i, j]`` is the coefficient of ``e_i`` in ``S(e_j)``.

With these index orders the dual Hopf algebra is obtained by literally
swapping ``M`` and ``D`` (and ``unit`` with ``counit``, ``S`` with its
transpose).

Elements of tensor powers H^{(x)k} are :class:`~hopfkit.linalg.SparseTensor`
instances of arity ``k`` and dimension ``dim H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .linalg import (
    Field,
    SparseTensor,
    field_from_json,
    field_to_json,
    solve,
)
from .report import CheckReport


class NotInvertible(ValueError):
    """Raised when an element of a tensor power has no two-sided inverse."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    field: Field
    basis: tuple
    M: np.ndarray
    unit: np.ndarray
    name: str = ""

    def __post_init__(self):
        n = len(self.basis)
        object.__setattr__(self, "basis", tuple(str(b) for b in self.basis))
        object.__setattr__(self, "M", _frozen(self.field.reduce(self.M)))
        object.__setattr__(self, "unit", _frozen(self.field.reduce(self.unit)))
        if self.M.shape != (n, n, n) or self.unit.shape != (n,):
            raise ValueError("structure constant shapes do not match the basis")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def mult(self) -> SparseTensor:
        return SparseTensor.from_dense(self.field, self.M)

    @cached_property
    def left_mats(self) -> np.ndarray:
        """``left_mats[a]`` is the matrix of x -> e_a x (out, in)."""
        return _frozen(np.transpose(self.M, (0, 2, 1)))

    @cached_property
    def right_mats(self) -> np.ndarray:
        """``right_mats[b]`` is the matrix of x -> x e_b (out, in)."""
        return _frozen(np.transpose(self.M, (1, 2, 0)))

    def product(self, x, y) -> np.ndarray:
        """Product of two coordinate vectors."""
        t = self.field.tensordot(x, self.M, ([0], [0]))
        return self.field.tensordot(y, t, ([0], [0]))

    def regular(self, x) -> np.ndarray:
        """Matrix of left multiplication by the coordinate vector ``x``."""
        return self.field.tensordot(x, self.left_mats, ([0], [0]))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.M, np.transpose(self.M, (1, 0, 2))))

    def commutativity_witness(self):
        diff = np.argwhere(np.any(self.M != np.transpose(self.M, (1, 0, 2)), axis=2))
        if diff.size == 0:
            return None
        i, j = (int(v) for v in diff[0])
        return {"pair": [self.basis[i], self.basis[j]], "indices": [i, j]}


@dataclass(frozen=True, eq=False)
class CoalgebraPresentation:
    field: Field
    basis: tuple
    D: np.ndarray
    counit: np.ndarray
    name: str = ""

    def __post_init__(self):
        n = len(self.basis)
        object.__setattr__(self, "basis", tuple(str(b) for b in self.basis))
        object.__setattr__(self, "D", _frozen(self.field.reduce(self.D)))
        object.__setattr__(self, "counit", _frozen(self.field.reduce(self.counit)))
        if self.D.shape != (n, n, n) or self.counit.shape != (n,):
            raise ValueError("structure constant shapes do not match the basis")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def comult(self) -> SparseTensor:
        return SparseTensor.from_dense(self.field, self.D)

    def is_cocommutative(self) -> bool:
        return bool(np.array_equal(self.D, np.transpose(self.D, (1, 0, 2))))

    def cocommutativity_witness(self):
        diff = np.argwhere(np.any(self.D != np.transpose(self.D, (1, 0, 2)), axis=(0, 1)))
        if diff.size == 0:
            return None
        k = int(diff[0][0])
        return {"element": self.basis[k], "index": k}


@dataclass(frozen=True, eq=False)
class HopfPresentation:
    algebra: AlgebraPresentation
    coalgebra: CoalgebraPresentation
    S: np.ndarray
    name: str = ""

    def __post_init__(self):
        if self.algebra.basis != self.coalgebra.basis or self.algebra.field != self.coalgebra.field:
            raise ValueError("algebra and coalgebra must share field and basis")
        object.__setattr__(self, "S", _frozen(self.field.reduce(self.S)))
        if self.S.shape != (self.dim, self.dim):
            raise ValueError("antipode has the wrong shape")

    @classmethod
    def build(cls, field: Field, basis, M, unit, D, counit, S, name: str = "") -> "HopfPresentation":
        return cls(
            AlgebraPresentation(field, tuple(basis), M, unit, name),
            CoalgebraPresentation(field, tuple(basis), D, counit, name),
            S,
            name,
        )

    field = property(lambda self: self.algebra.field)
    basis = property(lambda self: self.algebra.basis)
    dim = property(lambda self: self.algebra.dim)
    M = property(lambda self: self.algebra.M)
    D = property(lambda self: self.coalgebra.D)
    unit = property(lambda self: self.algebra.unit)
    counit = property(lambda self: self.coalgebra.counit)

    @property
    def antipode(self) -> np.ndarray:
        return self.S

    def is_commutative(self) -> bool:
        return self.algebra.is_commutative()

    def is_cocommutative(self) -> bool:
        return self.coalgebra.is_cocommutative()

    def with_coalgebra(self, D, S=None, name: str = "") -> "HopfPresentation":
        return HopfPresentation.build(
            self.field, self.basis, self.M, self.unit, D, self.counit,
            self.S if S is None else S, name or self.name,
        )

    def renamed(self, name: str) -> "HopfPresentation":
        return HopfPresentation(self.algebra, self.coalgebra, self.S, name)

    def __repr__(self):
        return f"HopfPresentation({self.name or '?'}, dim={self.dim}, field={self.field})"


def same_tables(a, b) -> bool:
    """Basis-identical equality of two presentations of the same kind."""
    if type(a) is not type(b) or a.field != b.field or a.basis != b.basis:
        return False
    if isinstance(a, HopfPresentation):
        return same_tables(a.algebra, b.algebra) and same_tables(a.coalgebra, b.coalgebra) \
            and np.array_equal(a.S, b.S)
    if isinstance(a, AlgebraPresentation):
        return np.array_equal(a.M, b.M) and np.array_equal(a.unit, b.unit)
    return np.array_equal(a.D, b.D) and np.array_equal(a.counit, b.counit)


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------


def _labels(basis, idx):
    return [basis[int(i)] for i in idx]


def check_algebra(a: AlgebraPresentation) -> CheckReport:
    f, M, n = a.field, a.M, a.dim
    rep = CheckReport(f"algebra {a.name}".strip())
    witness = None
    for i in range(n):
        left = f.tensordot(M[i], M, ([1], [0]))        # (e_i e_j) e_k
        # e_i (e_j e_k) = sum_l M[j,k,l] M[i,l,m]
        right = f.tensordot(M, M[i], ([2], [0]))
        bad = np.argwhere(np.any(left != right, axis=2))
        if bad.size:
            j, k = (int(v) for v in bad[0])
            witness = {"triple": _labels(a.basis, (i, j, k)), "indices": [i, j, k]}
            break
    rep.add("associativity", witness is None, witness)

    lu = f.tensordot(a.unit, M, ([0], [0]))            # 1 e_j
    ru = f.tensordot(M, a.unit, ([1], [0]))            # e_i 1
    bad = np.flatnonzero(np.any(lu != f.eye(n), axis=1) | np.any(ru != f.eye(n), axis=1))
    w = None if bad.size == 0 else {"element": a.basis[int(bad[0])], "index": int(bad[0])}
    rep.add("unit", w is None, w)
    return rep


def check_coalgebra(c: CoalgebraPresentation) -> CheckReport:
    f, D, n = c.field, c.D, c.dim
    rep = CheckReport(f"coalgebra {c.name}".strip())
    witness = None
    for k in range(n):
        # (Delta (x) id) Delta(e_k)[a,b,c] = sum_m D[a,b,m] D[m,c,k]
        lhs = f.tensordot(D, D[:, :, k], ([2], [0]))
        # (id (x) Delta) Delta(e_k)[a,b,c] = sum_m D[a,m,k] D[b,c,m]
        rhs = f.tensordot(D[:, :, k], D, ([1], [2]))
        if not np.array_equal(lhs, rhs):
            witness = {"element": c.basis[k], "index": k}
            break
    rep.add("coassociativity", witness is None, witness)
    left = f.tensordot(c.counit, D, ([0], [0]))      # (eps (x) id) Delta(e_k) -> [j,k]
    right = f.tensordot(c.counit, D, ([0], [1]))     # (id (x) eps) Delta(e_k) -> [i,k]
    eye = f.eye(n)
    bad = np.flatnonzero(np.any(left != eye, axis=0) | np.any(right != eye, axis=0))
    w = None if bad.size == 0 else {"element": c.basis[int(bad[0])], "index": int(bad[0])}
    rep.add("counit", w is None, w)
    return rep


def _coproduct_products(h: HopfPresentation, i: int, terms) -> np.ndarray:
    """Delta(e_i) Delta(e_j) for all j, shape (n, n, n) indexed [e, f, j]."""
    f, M, n = h.field, h.M, h.dim
    ks, as_, bs, ws, starts, present, widest = terms
    sel = ks == i
    ai, bi, wi = as_[sel], bs[sel], ws[sel]
    out = f.zeros((n, n, n))
    if ai.size == 0:
        return out
    A = M[ai[:, None], as_[None, :], :]                 # (m_i, T, n)
    B = M[bi[:, None], bs[None, :], :]
    W = wi[:, None] * ws[None, :]                       # (m_i, T)
    p = getattr(f, "p", None)
    exact = p is not None and ai.size * widest * (p - 1) ** 4 < 2**53
    dt = np.float64 if exact else object
    if not exact:
        W = f.reduce(W)
    left = np.transpose(A, (1, 0, 2)).astype(dt) * W.T[:, :, None]     # (T, m_i, n)
    right = np.transpose(B, (1, 0, 2)).astype(dt)                      # (T, m_i, n)
    ends = np.append(starts[1:], ks.size)
    sums = np.empty((len(present), n, n), dtype=dt)
    for t, (s0, s1) in enumerate(zip(starts, ends)):
        # sum over the terms of Delta(e_j) and of Delta(e_i) in one product
        sums[t] = left[s0:s1].reshape(-1, n).T @ right[s0:s1].reshape(-1, n)
    sums = np.mod(np.rint(sums).astype(np.int64), p) if exact else f.reduce(sums)
    out[:, :, present] = np.transpose(sums, (1, 2, 0))
    return out


def check_hopf(h: HopfPresentation) -> CheckReport:
    """Full Hopf axiom suite; the algebra and coalgebra checks are included."""
    f, M, D, n = h.field, h.M, h.D, h.dim
    rep = CheckReport(f"hopf {h.name}".strip())
    rep.extend(check_algebra(h.algebra))
    rep.extend(check_coalgebra(h.coalgebra))
    basis = h.basis

    du = f.tensordot(D, h.unit, ([2], [0]))
    rep.add("coproduct_of_unit", np.array_equal(du, f.reduce(np.outer(h.unit, h.unit))))
    rep.add("counit_of_unit", f(int(f.tensordot(h.counit, h.unit, 1))) == f.one)
    em = f.tensordot(M, h.counit, ([2], [0]))
    bad = np.argwhere(em != f.reduce(np.outer(h.counit, h.counit)))
    rep.add("counit_multiplicative", bad.size == 0,
            None if bad.size == 0 else {"pair": _labels(basis, bad[0]), "indices": bad[0].tolist()})

    nz = np.argwhere(np.transpose(D, (2, 0, 1)) != 0)  # sorted by k
    ks, as_, bs = nz[:, 0], nz[:, 1], nz[:, 2]
    ws = D[as_, bs, ks]
    present, starts, counts = np.unique(ks, return_index=True, return_counts=True)
    terms = (ks, as_, bs, ws, starts, present, int(counts.max()) if counts.size else 0)
    witness = None
    for i in range(n):
        lhs = f.tensordot(D, M[i], ([2], [1]))         # [e, f, j] = Delta(e_i e_j)
        rhs = _coproduct_products(h, i, terms)
        bad = np.argwhere(np.any(lhs != rhs, axis=(0, 1)))
        if bad.size:
            j = int(bad[0][0])
            witness = {"pair": [basis[i], basis[j]], "indices": [i, j]}
            break
    rep.add("coproduct_multiplicative", witness is None, witness)

    target = f.reduce(np.outer(h.counit, h.unit))      # [k, e] = eps(e_k) 1
    # m (S (x) id) Delta(e_k) = sum D[a,b,k] S[c,a] M[c,b,e]
    X = f.tensordot(h.S, D, ([1], [0]))                # [c, b, k]
    left = f.tensordot(X, M, ([0, 1], [0, 1]))         # [k, e]
    Y = f.tensordot(h.S, D, ([1], [1]))                # [c, a, k] with S applied to second leg
    right = f.tensordot(Y, M, ([1, 0], [0, 1]))        # sum D[a,b,k] S[c,b] M[a,c,e]
    for nm, val in (("antipode_left", left), ("antipode_right", right)):
        bad = np.flatnonzero(np.any(val != target, axis=1))
        rep.add(nm, bad.size == 0,
                None if bad.size == 0 else {"element": basis[int(bad[0])], "index": int(bad[0])})
    return rep


def check_hopf_map(h1: HopfPresentation, h2: HopfPresentation, phi, algebra_only=False) -> CheckReport:
    """Check that the matrix ``phi`` (columns = images of h1's basis) is a Hopf map."""
    f = h1.field
    phi = f.reduce(np.asarray(phi))
    rep = CheckReport("hopf map")
    # phi(e_i e_j) = phi(e_i) phi(e_j)
    lhs = f.tensordot(h1.M, phi, ([2], [1]))                       # [i, j, out]
    t = f.tensordot(phi, h2.M, ([0], [0]))                          # [i, b, out]
    rhs = f.tensordot(phi, t, ([0], [1]))                           # [j, i, out]
    rhs = np.transpose(rhs, (1, 0, 2))
    bad = np.argwhere(np.any(lhs != rhs, axis=2))
    rep.add("multiplicative", bad.size == 0,
            None if bad.size == 0 else {"pair": _labels(h1.basis, bad[0])})
    rep.add("unital", np.array_equal(f.tensordot(phi, h1.unit, ([1], [0])), h2.unit))
    if algebra_only:
        return rep
    # Delta2(phi(e_k)) = (phi (x) phi) Delta1(e_k)
    lhs = f.tensordot(h2.D, phi, ([2], [0]))                        # [a, b, k]
    t = f.tensordot(phi, h1.D, ([1], [0]))                          # [a, j, k]
    rhs = np.transpose(f.tensordot(phi, t, ([1], [1])), (1, 0, 2))  # [a, b, k]
    bad = np.flatnonzero(np.any(lhs != rhs, axis=(0, 1)))
    rep.add("comultiplicative", bad.size == 0,
            None if bad.size == 0 else {"element": h1.basis[int(bad[0])]})
    rep.add("counital", np.array_equal(f.tensordot(h2.counit, phi, ([0], [0])), h1.counit))
    rep.add("antipode", np.array_equal(f.matmul(phi, h1.S), f.matmul(h2.S, phi)))
    return rep


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _dual_label(lbl: str) -> str:
    return lbl[:-1] if lbl.endswith("*") else lbl + "*"


def dual_algebra_of(c: CoalgebraPresentation) -> AlgebraPresentation:
    return AlgebraPresentation(c.field, tuple(_dual_label(b) for b in c.basis), c.D, c.counit,
                               f"dual({c.name})" if c.name else "")


def dual(h: HopfPresentation) -> HopfPresentation:
    name = h.name[5:-1] if h.name.startswith("dual(") else (f"dual({h.name})" if h.name else "")
    basis = tuple(_dual_label(b) for b in h.basis)
    return HopfPresentation.build(h.field, basis, h.D, h.counit, h.M, h.unit, h.S.T, name)


def trivial_hopf(field: Field) -> HopfPresentation:
    one = np.ones((1, 1, 1), dtype=object)
    return HopfPresentation.build(field, ("1",), one, [1], one, [1], [[1]], "k")


def tensor_hopf(h1: HopfPresentation, h2: HopfPresentation) -> HopfPresentation:
    if h1.field != h2.field:
        raise ValueError("field mismatch")
    f = h1.field
    n = h1.dim * h2.dim
    basis = tuple(f"{a}⊗{b}" for a in h1.basis for b in h2.basis)
    M = f.reduce(np.einsum("ace,bdf->abcdef", h1.M, h2.M).reshape(n, n, n))
    D = f.reduce(np.einsum("ace,bdf->abcdef", h1.D, h2.D).reshape(n, n, n))
    return HopfPresentation.build(
        f, basis, M, f.reduce(np.kron(h1.unit, h2.unit)), D, f.reduce(np.kron(h1.counit, h2.counit)),
        f.reduce(np.kron(h1.S, h2.S)), f"{h1.name}⊗{h2.name}",
    )


# ---------------------------------------------------------------------------
# elements of tensor powers
# ---------------------------------------------------------------------------


def element(h, coords_or_entries, arity: int | None = None) -> SparseTensor:
    """Build an element from a coordinate array or an entry map."""
    if isinstance(coords_or_entries, dict):
        return SparseTensor(h.field, arity or len(next(iter(coords_or_entries), (0,))), h.dim, coords_or_entries)
    arr = h.field.reduce(np.asarray(coords_or_entries))
    return SparseTensor.from_dense(h.field, arr)


def basis_element(h, i: int) -> SparseTensor:
    return SparseTensor(h.field, 1, h.dim, {(i,): 1})


def unit_element(h, arity: int = 1) -> SparseTensor:
    u = h.unit
    arr = u
    for _ in range(arity - 1):
        arr = np.multiply.outer(arr, u)
    return SparseTensor.from_dense(h.field, h.field.reduce(arr))


def tensor(*xs: SparseTensor) -> SparseTensor:
    """Outer tensor product of elements."""
    f = xs[0].field
    arr = xs[0].dense()
    for x in xs[1:]:
        arr = np.multiply.outer(arr, x.dense())
    return SparseTensor.from_dense(f, f.reduce(arr))


def embed(h, x: SparseTensor, positions: Sequence[int], arity: int) -> SparseTensor:
    """Place the slots of ``x`` at ``positions`` of an arity-``arity`` element, 1 elsewhere."""
    if len(positions) != x.arity:
        raise ValueError("one position per slot required")
    f = h.field
    arr = x.dense()
    current = list(positions)
    for s in range(arity):
        if s in positions:
            continue
        arr = np.multiply.outer(arr, h.unit)
        current.append(s)
    order = [current.index(s) for s in range(arity)]
    return SparseTensor.from_dense(f, f.reduce(np.transpose(arr, order)))


def swap(x: SparseTensor) -> SparseTensor:
    """x_21 for arity 2 (general: reverse slots)."""
    return x.permute(list(reversed(range(x.arity))))


def _apply_along(f: Field, mat, arr, axis: int):
    out = f.tensordot(mat, arr, ([1], [axis]))
    return np.moveaxis(out, 0, axis)


def multiply(h, x: SparseTensor, y: SparseTensor) -> SparseTensor:
    """Product in the algebra H^{(x)k}."""
    if x.arity != y.arity or x.dim != h.dim or y.dim != h.dim:
        raise ValueError("arity/dimension mismatch")
    return SparseTensor.from_dense(h.field, _multiply_dense(h, x, y))


def _multiply_dense(h, x: SparseTensor, y: SparseTensor) -> np.ndarray:
    f = h.field
    alg = h.algebra if isinstance(h, HopfPresentation) else h
    k = x.arity
    if len(x) <= len(y):
        mats, terms, other = alg.left_mats, x.items(), y.dense()
    else:
        mats, terms, other = alg.right_mats, y.items(), x.dense()
    acc = f.zeros((h.dim,) * k)
    for idx, c in terms:
        cur = other
        for s in range(k):
            cur = _apply_along(f, mats[idx[s]], cur, s)
        acc = acc + cur * c
    return f.reduce(acc)


def multiply_all(h, *xs: SparseTensor) -> SparseTensor:
    out = xs[0]
    for x in xs[1:]:
        out = multiply(h, out, x)
    return out


def power(h, x: SparseTensor, e: int) -> SparseTensor:
    out = unit_element(h, x.arity)
    for _ in range(e):
        out = multiply(h, out, x)
    return out


def _kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def left_operator(h, x: SparseTensor) -> np.ndarray:
    """Matrix of y -> x y on H^{(x)k} in the row-major flattened basis."""
    f = h.field
    alg = h.algebra if isinstance(h, HopfPresentation) else h
    N = h.dim ** x.arity
    acc = f.zeros((N, N))
    for idx, c in x.items():
        acc = acc + _kron_all([alg.left_mats[i] for i in idx]) * c
    return f.reduce(acc)


def right_operator(h, x: SparseTensor) -> np.ndarray:
    f = h.field
    alg = h.algebra if isinstance(h, HopfPresentation) else h
    N = h.dim ** x.arity
    acc = f.zeros((N, N))
    for idx, c in x.items():
        acc = acc + _kron_all([alg.right_mats[i] for i in idx]) * c
    return f.reduce(acc)


def invert(h, x: SparseTensor) -> SparseTensor:
    """Two-sided inverse in H^{(x)k}; raises :class:`NotInvertible`."""
    f = h.field
    one = unit_element(h, x.arity)
    z = solve(f, left_operator(h, x), one.dense().reshape(-1))
    if z is None:
        raise NotInvertible("x z = 1 has no solution")
    zt = SparseTensor.from_dense(f, z.reshape((h.dim,) * x.arity))
    if multiply(h, zt, x) != one:
        raise NotInvertible("right inverse is not a left inverse")
    return zt


def apply_map(h: HopfPresentation, x: SparseTensor, which: str, slot: int = 0) -> SparseTensor | object:
    """Apply Delta, epsilon or S to one slot of ``x``.

    ``which`` is ``"coproduct"``, ``"counit"`` or ``"antipode"``.  Applying
    the counit to an arity-1 element returns a scalar.
    """
    f = h.field
    arr = x.dense()
    if which == "coproduct":
        out = f.tensordot(h.D, arr, ([2], [slot]))      # new axes 0,1 then the rest
        out = np.moveaxis(out, (0, 1), (slot, slot + 1))
        return SparseTensor.from_dense(f, out)
    if which == "counit":
        out = f.tensordot(arr, h.counit, ([slot], [0]))
        if x.arity == 1:
            return f(int(out)) if f.dtype is not object else f(out[()] if hasattr(out, "shape") else out)
        return SparseTensor.from_dense(f, out)
    if which == "antipode":
        return SparseTensor.from_dense(f, _apply_along(f, h.S, arr, slot))
    raise ValueError(f"unknown map {which!r}")


def apply_linear(f: Field, mat, x: SparseTensor, slots: Sequence[int] | None = None, dim: int | None = None) -> SparseTensor:
    """Apply the matrix ``mat`` (out, in) to the given slots (default: all)."""
    arr = x.dense()
    slots = range(x.arity) if slots is None else slots
    for s in slots:
        arr = _apply_along(f, mat, arr, s)
    return SparseTensor.from_dense(f, arr)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _enc_entries(f: Field, arr) -> list:
    return [[*(int(i) for i in idx), *f.encode(arr[tuple(idx)])] for idx in np.argwhere(arr != 0)]


def _dec_entries(f: Field, entries, shape, order: int) -> np.ndarray:
    arr = f.zeros(shape)
    for e in entries:
        idx = tuple(int(i) for i in e[:order])
        arr[idx] = f.reduce(np.array([arr[idx] + f.decode(e[order:])], dtype=object))[0]
    return arr


def to_json(obj) -> dict:
    """Serialise an algebra, coalgebra or Hopf presentation."""
    f = obj.field
    out = {**field_to_json(f), "dim": obj.dim, "basis": list(obj.basis)}
    if obj.name:
        out["name"] = obj.name
    if isinstance(obj, (AlgebraPresentation, HopfPresentation)):
        out["mult"] = _enc_entries(f, obj.M)
        out["unit"] = _enc_entries(f, obj.unit)
    if isinstance(obj, (CoalgebraPresentation, HopfPresentation)):
        out["comult"] = _enc_entries(f, obj.D)
        out["counit"] = _enc_entries(f, obj.counit)
    if isinstance(obj, HopfPresentation):
        out["antipode"] = _enc_entries(f, obj.S)
    out["kind"] = {AlgebraPresentation: "algebra", CoalgebraPresentation: "coalgebra",
                   HopfPresentation: "hopf"}[type(obj)]
    return out


def from_json(obj: dict, field: Field | None = None):
    """Inverse of :func:`to_json`; ``field`` is used when the object has none."""
    f = field_from_json(obj) if "field" in obj or field is None else field
    n = int(obj["dim"])
    basis = tuple(obj.get("basis") or [f"e{i}" for i in range(n)])
    if len(basis) != n:
        raise ValueError("basis length does not match dim")
    name = obj.get("name", "")
    has_alg = "mult" in obj
    has_coalg = "comult" in obj
    if has_alg:
        M = _dec_entries(f, obj["mult"], (n, n, n), 3)
        unit = _dec_entries(f, obj["unit"], (n,), 1)
    if has_coalg:
        D = _dec_entries(f, obj["comult"], (n, n, n), 3)
        counit = _dec_entries(f, obj["counit"], (n,), 1)
    if has_alg and has_coalg and "antipode" in obj:
        S = _dec_entries(f, obj["antipode"], (n, n), 2)
        return HopfPresentation.build(f, basis, M, unit, D, counit, S, name)
    if has_alg and not has_coalg:
        return AlgebraPresentation(f, basis, M, unit, name)
    if has_coalg and not has_alg:
        return CoalgebraPresentation(f, basis, D, counit, name)
    raise ValueError("presentation JSON needs mult/unit, comult/counit, or all of them plus antipode")


def element_to_json(h, x: SparseTensor) -> dict:
    f = h.field
    return {
        **field_to_json(f),
        "dim": h.dim,
        "arity": x.arity,
        "entries": [[*(h.basis[i] for i in idx), *f.encode(c)] for idx, c in x.items()],
    }


def element_from_json(h, obj: dict) -> SparseTensor:
    f = h.field
    k = int(obj["arity"])
    index = {b: i for i, b in enumerate(h.basis)}
    entries = {}
    for e in obj["entries"]:
        idx = tuple(index[str(lbl)] if not isinstance(lbl, int) else lbl for lbl in e[:k])
        entries[idx] = entries.get(idx, 0) + f.decode(e[k:])
    return SparseTensor(f, k, h.dim, entries)
