"""Exact scalar fields, elimination, and sparse tensors.

Two coefficient fields are supported: prime fields F_p (elements are Python
ints in ``[0, p)``, arrays are ``int64``) and the rationals (``Fraction``
elements, arrays of dtype ``object``).  All heavy lifting is done with numpy;
for F_p the products are evaluated in float64 whenever the accumulated sums
are guaranteed to stay below 2**53, which keeps them exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

import numpy as np

# Dense arrays are used for presentations up to this dimension; larger
# elements of tensor powers go through the sparse entry maps.
DENSE_DIM_LIMIT = 64

_FLOAT_EXACT = 2**53


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """Common interface of the two coefficient fields."""

    characteristic: int
    dtype: object

    def __call__(self, x):
        raise NotImplementedError

    def reduce(self, arr):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = [self(x) for x in arr.reshape(-1)]
        out = np.empty(arr.shape, dtype=object)
        out.reshape(-1)[:] = flat if flat else []
        if self.dtype is object:
            return out
        return out.astype(np.int64)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def tensordot(self, a, b, axes):
        return self.reduce(np.tensordot(a, b, axes=axes))

    def matmul(self, a, b):
        return self.reduce(np.matmul(a, b))

    # JSON scalar encoding: [num] or [num, den]
    def encode(self, x) -> list:
        raise NotImplementedError

    def decode(self, parts: Sequence[int]):
        if len(parts) == 1:
            return self(int(parts[0]))
        return self(Fraction(int(parts[0]), int(parts[1])))


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __str__(self):
        return f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __call__(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, arr):
        arr = np.asarray(arr)
        if arr.dtype == object:
            arr = np.array([self(v) for v in arr.reshape(-1)], dtype=np.int64).reshape(arr.shape)
            return arr
        if arr.dtype.kind == "f":
            arr = np.rint(arr).astype(np.int64)
        return np.mod(arr, self.p)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(x, -1, self.p)

    def _float_ok(self, inner: int) -> bool:
        return max(inner, 1) * (self.p - 1) ** 2 < _FLOAT_EXACT

    def tensordot(self, a, b, axes):
        a = np.asarray(a)
        b = np.asarray(b)
        if isinstance(axes, int):
            inner = int(np.prod(a.shape[a.ndim - axes:])) if axes else 1
        else:
            inner = int(np.prod([a.shape[i] for i in np.atleast_1d(axes[0])]))
        if self._float_ok(inner):
            out = np.tensordot(a.astype(np.float64), b.astype(np.float64), axes=axes)
            return np.mod(np.rint(out).astype(np.int64), self.p)
        out = np.tensordot(a.astype(object), b.astype(object), axes=axes)
        return self.reduce(out)

    def matmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self._float_ok(a.shape[-1]):
            out = np.matmul(a.astype(np.float64), b.astype(np.float64))
            return np.mod(np.rint(out).astype(np.int64), self.p)
        return self.reduce(np.matmul(a.astype(object), b.astype(object)))

    def encode(self, x):
        return [int(x)]


class RationalField(Field):
    characteristic = 0
    dtype = object

    def __repr__(self):
        return "RationalField()"

    def __str__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __call__(self, x):
        return Fraction(x)

    def reduce(self, arr):
        arr = np.asarray(arr)
        if arr.dtype != object:
            arr = arr.astype(object)
        out = np.empty(arr.shape, dtype=object)
        out.reshape(-1)[:] = [Fraction(v) for v in arr.reshape(-1)]
        return out

    def inv(self, x):
        x = Fraction(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / x

    def encode(self, x):
        x = Fraction(x)
        if x.denominator == 1:
            return [x.numerator]
        return [x.numerator, x.denominator]


QQ = RationalField()


def field_from_spec(spec: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:<p>"`` (``"F<p>"`` is accepted too)."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Fp:"):
        return PrimeField(int(s[3:]))
    if s.startswith("F") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise ValueError(f"unrecognised field spec {spec!r}")


def field_to_json(field: Field) -> dict:
    if isinstance(field, PrimeField):
        return {"field": "Fp", "p": field.p}
    return {"field": "Q"}


def field_from_json(obj: Mapping) -> Field:
    name = obj.get("field", "Q")
    if name == "Q":
        return QQ
    if name == "Fp":
        return PrimeField(int(obj["p"]))
    return field_from_spec(str(name))


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def rref(field: Field, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting, column order."""
    a = np.array(m, dtype=field.dtype, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(a[r, c])
        a[r] = field.reduce(a[r] * inv)
        others = np.flatnonzero(a[:, c] != 0)
        others = others[others != r]
        if others.size:
            a[others] = field.reduce(a[others] - np.outer(a[others, c], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(field: Field, m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(field, m)[1])


def row_basis(field: Field, vectors) -> np.ndarray:
    """Basis (rows, in reduced echelon form) of the span of ``vectors``."""
    v = np.asarray(vectors)
    if v.size == 0:
        return field.zeros((0, v.shape[-1] if v.ndim == 2 else 0))
    r, piv = rref(field, v)
    return r[: len(piv)]


def nullspace(field: Field, m) -> np.ndarray:
    """Basis of {v : m v = 0}, one vector per row."""
    m = np.asarray(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return field.eye(cols)
    r, piv = rref(field, m)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = field.zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = field.one
        for row, pc in enumerate(piv):
            basis[k, pc] = field.reduce(np.array([-r[row, f]], dtype=field.dtype))[0]
    return basis


def solve(field: Field, m, b):
    """One solution of m x = b, or None when inconsistent.

    Free variables are set to zero, so the choice is deterministic.
    """
    m = np.asarray(m)
    b = np.asarray(b)
    rows, cols = m.shape
    aug = field.zeros((rows, cols + 1))
    aug[:, :cols] = m
    aug[:, cols] = b
    r, piv = rref(field, aug)
    if piv and piv[-1] == cols:
        return None
    x = field.zeros(cols)
    for row, pc in enumerate(piv):
        x[pc] = r[row, cols]
    return x


def inverse(field: Field, m):
    m = np.asarray(m)
    n = m.shape[0]
    aug = field.zeros((n, 2 * n))
    aug[:, :n] = m
    aug[:, n:] = field.eye(n)
    r, piv = rref(field, aug)
    if piv[:n] != list(range(n)):
        return None
    return r[:, n:]


def in_span(field: Field, basis, v) -> bool:
    basis = np.asarray(basis)
    if basis.shape[0] == 0:
        return not np.any(np.asarray(v) != 0)
    return rank(field, np.vstack([basis, v])) == rank(field, basis)


# ---------------------------------------------------------------------------
# sparse tensors
# ---------------------------------------------------------------------------


class SparseTensor:
    """Immutable sparse element of the ``arity``-fold tensor power of k^dim.

    Entries are kept canonical (reduced, no zeros), so equality is equality
    of entry maps.
    """

    __slots__ = ("field", "arity", "dim", "_entries", "_dense")

    def __init__(self, field: Field, arity: int, dim: int, entries: Mapping | Iterable = ()):
        if arity < 1 or dim < 1:
            raise ValueError("arity and dim must be positive")
        self.field = field
        self.arity = int(arity)
        self.dim = int(dim)
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict = {}
        for idx, c in items:
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.arity:
                raise ValueError(f"index {idx} does not have arity {self.arity}")
            if any(i < 0 or i >= self.dim for i in idx):
                raise ValueError(f"index {idx} out of range for dim {self.dim}")
            acc[idx] = acc.get(idx, 0) + field(c)
        self._entries = {k: field(v) for k, v in sorted(acc.items()) if field(v) != 0}
        self._dense = None

    @classmethod
    def from_dense(cls, field: Field, arr) -> "SparseTensor":
        arr = np.asarray(arr)
        out = cls.__new__(cls)
        out.field = field
        out.arity = arr.ndim
        out.dim = arr.shape[0]
        if any(s != out.dim for s in arr.shape):
            raise ValueError("dense tensor must have equal slot dimensions")
        nz = np.argwhere(arr != 0)
        out._entries = {tuple(int(i) for i in idx): field(arr[tuple(idx)]) for idx in nz}
        out._dense = np.array(arr, dtype=field.dtype)
        out._dense.flags.writeable = False
        return out

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __len__(self):
        return len(self._entries)

    def __getitem__(self, idx):
        return self._entries.get(tuple(idx), self.field.zero)

    def dense(self) -> np.ndarray:
        if self._dense is None:
            arr = self.field.zeros((self.dim,) * self.arity)
            for idx, c in self._entries.items():
                arr[idx] = c
            arr.flags.writeable = False
            self._dense = arr
        return self._dense

    def _check_same(self, other):
        if (self.field, self.arity, self.dim) != (other.field, other.arity, other.dim):
            raise ValueError("tensor shape/field mismatch")

    def __add__(self, other):
        self._check_same(other)
        acc = dict(self._entries)
        for k, v in other.items():
            acc[k] = acc.get(k, 0) + v
        return SparseTensor(self.field, self.arity, self.dim, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        return SparseTensor(self.field, self.arity, self.dim, {k: v * c for k, v in self._entries.items()})

    def permute(self, order: Sequence[int]) -> "SparseTensor":
        """Slot permutation: new slot ``s`` is old slot ``order[s]``."""
        return SparseTensor(
            self.field, self.arity, self.dim,
            {tuple(k[o] for o in order): v for k, v in self._entries.items()},
        )

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (self.field, self.arity, self.dim) == (other.field, other.arity, other.dim) and \
            self._entries == other._entries

    def __hash__(self):
        return hash((self.arity, self.dim, tuple(self._entries.items())))

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in list(self._entries.items())[:6])
        more = "" if len(self._entries) <= 6 else ", ..."
        return f"SparseTensor(arity={self.arity}, dim={self.dim}, {{{terms}{more}}})"


def contract(a: SparseTensor, b: SparseTensor, slots: Sequence[tuple[int, int]]) -> SparseTensor:
    """Contract slot pairs ``(i, j)`` of ``a`` and ``b``.

    The result carries the free slots of ``a`` followed by those of ``b``.
    """
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.dim != b.dim:
        raise ValueError("paired slots must have equal dimension")
    slots = list(slots)
    if any(i >= a.arity or j >= b.arity for i, j in slots):
        raise ValueError("slot index out of range")
    left = {i for i, _ in slots}
    right = {j for _, j in slots}
    if len(left) != len(slots) or len(right) != len(slots):
        raise ValueError("a slot may only be paired once")
    out_arity = a.arity + b.arity - 2 * len(slots)
    axes = ([i for i, _ in slots], [j for _, j in slots])
    res = a.field.tensordot(a.dense(), b.dense(), axes)
    if out_arity == 0:
        return res
    return SparseTensor.from_dense(a.field, res)


def all_vectors(field: PrimeField, n: int):
    """Every vector of F_p^n, lexicographic."""
    for t in iproduct(range(field.p), repeat=n):
        yield np.array(t, dtype=np.int64)
