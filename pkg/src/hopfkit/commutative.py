"""Finite commutative group schemes and exhaustive twist enumeration.

Constant groups give Fun(G) and k[G]; mu_n is k[Z/n] read as a function
algebra; alpha_p is k[x]/(x^p) with x primitive.  A twist for k[A] is the
same thing as a 2-cocycle on the Cartier dual A^D, because k[A] = O(A^D) as
presentations, so no separate cocycle object is kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as iproduct
from math import comb, factorial
from typing import Sequence

import numpy as np

from .hopf import HopfPresentation, check_hopf_map, dual, tensor_hopf
from .linalg import Field, PrimeField, SparseTensor, nullspace, solve
from .twists import check_twist


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupTable:
    table: np.ndarray
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise ValueError("group table must be a nonempty square")
        if t.min() < 0 or t.max() >= n:
            raise ValueError("group table entries out of range")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(n)))
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        problem = self.validate()
        if problem:
            raise ValueError(problem)

    def validate(self) -> str | None:
        t, n = self.table, self.order
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if not ids:
            return "no identity element"
        e = ids[0]
        idx = np.arange(n)
        if not np.array_equal(t[t[:, :, None], idx[None, None, :]], t[idx[:, None, None], t[None, :, :]]):
            return "multiplication is not associative"
        for a in range(n):
            if not np.any(t[a] == e):
                return f"element {self.labels[a]} has no inverse"
        return None

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        n = self.order
        return next(e for e in range(n) if np.array_equal(self.table[e], np.arange(n)))

    @property
    def inverse(self) -> np.ndarray:
        e = self.identity
        return np.array([int(np.flatnonzero(self.table[a] == e)[0]) for a in range(self.order)])

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conj(self, g: int, a: int) -> int:
        """g a g^{-1}."""
        return self.mul(self.mul(g, a), int(self.inverse[g]))

    def to_json(self) -> dict:
        out = {"order": self.order, "table": [int(v) for v in self.table.reshape(-1)]}
        if self.name:
            out["name"] = self.name
        out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GroupTable":
        n = int(obj["order"])
        t = np.array(obj["table"], dtype=np.int64)
        return cls(t.reshape(n, n), tuple(obj.get("labels") or ()), obj.get("name", ""))


def group_from_elements(elements: Sequence, mul, labels=None, name: str = "") -> GroupTable:
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    t = np.array([[idx[mul(a, b)] for b in elements] for a in elements], dtype=np.int64)
    return GroupTable(t, tuple(labels) if labels else tuple(str(e) for e in elements), name)


def cyclic(n: int) -> GroupTable:
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    labels = ("e",) + tuple("g" if k == 1 else f"g^{k}" for k in range(1, n))
    return GroupTable(t, labels, f"Z{n}")


def direct_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    n1, n2 = g1.order, g2.order
    t = (g1.table[:, None, :, None] * n2 + g2.table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = tuple(f"({a},{b})" for a in g1.labels for b in g2.labels)
    return GroupTable(t, labels, f"{g1.name}x{g2.name}")


def klein4() -> GroupTable:
    g = direct_product(cyclic(2), cyclic(2))
    return GroupTable(g.table, ("e", "a", "b", "ab"), "V4")


def dihedral(m: int) -> GroupTable:
    """Symmetries of the m-gon (order 2m): elements r^k s^f."""
    elems = [(k, f) for f in (0, 1) for k in range(m)]

    def mul(x, y):
        k1, f1 = x
        k2, f2 = y
        return ((k1 + (-k2 if f1 else k2)) % m, f1 ^ f2)

    labels = [("e" if k == 0 else ("r" if k == 1 else f"r^{k}")) if not f else
              ("s" if k == 0 else ("rs" if k == 1 else f"r^{k}s")) for k, f in elems]
    return group_from_elements(elems, mul, labels, f"D{m}")


def quaternion8() -> GroupTable:
    # unit quaternions as (sign, axis) with axis in {1, i, j, k}
    base = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(s, a) for s in (1, -1) for a in ("1", "i", "j", "k")]

    def mul(x, y):
        s, a = base[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    labels = [("" if s > 0 else "-") + a for s, a in elems]
    return group_from_elements(elems, mul, labels, "Q8")


def symmetric(n: int) -> GroupTable:
    elems = list(permutations(range(n)))
    # (a b)(x) = a(b(x))
    return group_from_elements(elems, lambda a, b: tuple(a[b[x]] for x in range(n)),
                               ["".join(str(v + 1) for v in e) for e in elems], f"S{n}")


def order8_groups() -> dict[str, GroupTable]:
    return {
        "Z8": cyclic(8),
        "Z4xZ2": direct_product(cyclic(4), cyclic(2)),
        "Z2^3": direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        "D4": dihedral(4),
        "Q8": quaternion8(),
    }


# ---------------------------------------------------------------------------
# Hopf algebras of group schemes
# ---------------------------------------------------------------------------


def group_algebra(g: GroupTable, f: Field) -> HopfPresentation:
    n = g.order
    M = np.zeros((n, n, n), dtype=np.int64)
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    M[a, b, g.table] = 1
    D = np.zeros((n, n, n), dtype=np.int64)
    D[np.arange(n), np.arange(n), np.arange(n)] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[g.identity] = 1
    S = np.zeros((n, n), dtype=np.int64)
    S[g.inverse, np.arange(n)] = 1
    return HopfPresentation.build(f, g.labels, M, unit, D, np.ones(n, dtype=np.int64), S,
                                  f"k[{g.name}]" if g.name else "")


def constant_hopf(g: GroupTable, f: Field) -> tuple[HopfPresentation, HopfPresentation]:
    """(Fun(G), k[G]); the first is literally the dual of the second."""
    ka = group_algebra(g, f)
    fun = dual(ka).renamed(f"Fun({g.name})" if g.name else "")
    return fun, ka


def mu_n(n: int, f: Field) -> HopfPresentation:
    """O(mu_n) = k[Z/n]."""
    return group_algebra(cyclic(n), f).renamed(f"O(mu{n})")


def alpha_p(f: PrimeField) -> HopfPresentation:
    """O(alpha_p) = k[x]/(x^p) with x primitive."""
    if not isinstance(f, PrimeField):
        raise ValueError("alpha_p needs positive characteristic")
    p = f.p
    M = np.zeros((p, p, p), dtype=np.int64)
    D = np.zeros((p, p, p), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            if i + j < p:
                M[i, j, i + j] = 1
        for j in range(i + 1):
            D[j, i - j, i] = comb(i, j) % p
    unit = np.eye(p, dtype=np.int64)[0]
    S = np.diag([(-1) ** i for i in range(p)])
    labels = ("1",) + tuple("x" if i == 1 else f"x^{i}" for i in range(1, p))
    return HopfPresentation.build(f, labels, M, unit, D, unit.copy(), S, f"O(alpha{p})")


def alpha_p_self_duality(f: PrimeField) -> np.ndarray:
    """Matrix of x^k -> k! f_k from O(alpha_p) to its dual (columns = images)."""
    p = f.p
    return np.diag([factorial(k) % p for k in range(p)]).astype(np.int64)


def check_alpha_p_self_duality(f: PrimeField):
    h = alpha_p(f)
    return check_hopf_map(h, dual(h), alpha_p_self_duality(f))


@dataclass(frozen=True, eq=False)
class CommutativePair:
    """k[A] for a finite commutative A, with A^D realised by the dual."""

    h: HopfPresentation
    tag: str = ""

    def __post_init__(self):
        if not (self.h.is_commutative() and self.h.is_cocommutative()):
            raise ValueError("a commutative pair needs a commutative and cocommutative Hopf algebra")

    def swapped(self) -> "CommutativePair":
        return CommutativePair(dual(self.h), f"{self.tag}^D" if self.tag else "")


def heisenberg_twist(pair: CommutativePair | HopfPresentation) -> tuple[HopfPresentation, SparseTensor]:
    """psi = sum_i (e_i (x) 1) (x) (1 (x) e_i^*) on k[A] (x) k[A]^*."""
    h = pair.h if isinstance(pair, CommutativePair) else pair
    hd = dual(h)
    parent = tensor_hopf(h, hd)
    n = h.dim
    f = h.field
    arr = f.zeros((n, n, n, n))          # [(i, a), (b, j)]
    for i in range(n):
        arr[i, :, :, i] = f.reduce(np.outer(hd.unit, h.unit))
    arr = f.reduce(arr)
    return parent, SparseTensor.from_dense(f, arr.reshape(n * n, n * n))


# ---------------------------------------------------------------------------
# twist enumeration
# ---------------------------------------------------------------------------


class BudgetExceeded(ValueError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"exhaustive scan needs {required} candidates, budget is {budget}")
        self.required = required
        self.budget = budget


def _irreducible(p: int, d: int) -> list[int]:
    """Coefficients (low to high, monic) of the first irreducible of degree d."""
    if d == 1:
        return [0, 1]
    for tail in iproduct(range(p), repeat=d):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        if all(any(_poly_mod(poly, list(q) + [1], p))
               for k in range(1, d // 2 + 1) for q in iproduct(range(p), repeat=k)):
            return poly
    raise ValueError("no irreducible polynomial found")


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def extension_table(p: int, d: int) -> np.ndarray:
    """Multiplication table K[i, j, k] of F_{p^d} = F_p[t]/(m(t)) on 1, t, ..., t^{d-1}."""
    m = _irreducible(p, d)
    K = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = [0] * (i + j + 1)
            prod[i + j] = 1
            red = _poly_mod(prod, m, p) if i + j >= d else prod + [0] * (d - len(prod))
            K[i, j, :] = red[:d]
    return K


class _Extended:
    """Arithmetic in H (x) F_{p^d} and (H (x) H) (x) F_{p^d}, for tiny H."""

    def __init__(self, h: HopfPresentation, d: int):
        self.h, self.d, self.p = h, d, h.field.p
        self.K = extension_table(self.p, d)
        self.M = h.M.astype(np.int64)
        self.D = h.D.astype(np.int64)

    def mul1(self, x, y):
        return np.einsum("ai,bj,abc,ijk->ck", x, y, self.M, self.K) % self.p

    def mul2(self, x, y):
        return np.einsum("abi,cdj,ace,bdf,ijk->efk", x, y, self.M, self.M, self.K, optimize=True) % self.p

    def inverse1(self, u):
        n, d = self.h.dim, self.d
        # matrix of y -> u y on H (x) K, flattened (c, k)
        op = np.einsum("ai,abc,ijk->ckbj", u, self.M, self.K).reshape(n * d, n * d) % self.p
        one = np.zeros((n, d), dtype=np.int64)
        one[:, 0] = self.h.unit
        sol = solve(self.h.field, op, one.reshape(-1))
        if sol is None:
            return None
        inv = sol.reshape(n, d)
        return inv if np.array_equal(self.mul1(inv, u), one) else None

    def coproduct(self, u):
        return np.einsum("abc,ck->abk", self.D, u) % self.p

    def outer(self, u, v):
        return np.einsum("ai,bj,ijk->abk", u, v, self.K) % self.p

    def gauge_elements(self):
        """All invertible u in H (x) K with counit 1."""
        n, d, p = self.h.dim, self.d, self.p
        eps = self.h.counit.astype(np.int64)
        for flat in iproduct(range(p), repeat=n * d):
            u = np.array(flat, dtype=np.int64).reshape(n, d)
            c = (eps @ u) % p
            if c[0] != 1 or np.any(c[1:]):
                continue
            inv = self.inverse1(u)
            if inv is not None:
                yield u, inv

    def act(self, J: np.ndarray, u, u_inv) -> np.ndarray:
        """(u (x) u) J Delta(u)^{-1} with J given over F_p."""
        n, d = self.h.dim, self.d
        Jk = np.zeros((n, n, d), dtype=np.int64)
        Jk[:, :, 0] = J
        return self.mul2(self.mul2(self.outer(u, u), Jk), self.coproduct(u_inv))


@dataclass
class EnumerationResult:
    twists: list                     # SparseTensor, in scan order
    orbit: list                      # orbit id per twist
    candidates: int                  # size of the full scan space p^(dim^2)
    normalized: int                  # candidates left after counit normalisation
    gauge_elements: int
    gauge_degree: int

    @property
    def orbit_count(self) -> int:
        return len(set(self.orbit))

    def orbits(self) -> list[list]:
        groups: dict = {}
        for t, o in zip(self.twists, self.orbit):
            groups.setdefault(o, []).append(t)
        return [groups[k] for k in sorted(groups)]


DEFAULT_BUDGET = 2**16


def enumerate_twists(h: HopfPresentation, budget: int = DEFAULT_BUDGET, gauge_degree: int = 2) -> EnumerationResult:
    """All twists of h over F_p, grouped into gauge orbits.

    The scan covers every arity-2 tensor; counit normalisation is linear, so
    only its affine solution space is walked explicitly.  Gauge elements are
    taken with coefficients in F_{p^gauge_degree}; orbits only ever join
    twists that are defined over F_p.
    """
    f = h.field
    if not isinstance(f, PrimeField):
        raise ValueError("enumeration needs a prime field")
    p, n = f.p, h.dim
    required = p ** (n * n)
    if required > budget:
        raise BudgetExceeded(required, budget)

    # (eps (x) id)(J) = 1 and (id (x) eps)(J) = 1 as a linear system in vec(J)
    eps, unit = h.counit, h.unit
    rows, rhs = [], []
    for b in range(n):
        r = np.zeros((n, n), dtype=np.int64)
        r[:, b] = eps
        rows.append(r.reshape(-1))
        rhs.append(unit[b])
    for a in range(n):
        r = np.zeros((n, n), dtype=np.int64)
        r[a, :] = eps
        rows.append(r.reshape(-1))
        rhs.append(unit[a])
    A = np.array(rows)
    base = solve(f, A, np.array(rhs))
    kernel = nullspace(f, A)
    twists = []
    count = 0
    for coeffs in iproduct(range(p), repeat=kernel.shape[0]):
        count += 1
        vec = f.reduce(base + (np.array(coeffs, dtype=np.int64) @ kernel if kernel.shape[0] else 0))
        J = SparseTensor.from_dense(f, vec.reshape(n, n))
        if check_twist(h, J).passed:
            twists.append(J)

    index = {t: i for i, t in enumerate(twists)}
    parent = list(range(len(twists)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ext = _Extended(h, gauge_degree)
    gauges = list(ext.gauge_elements())
    for i, J in enumerate(twists):
        Jd = J.dense().astype(np.int64)
        for u, u_inv in gauges:
            img = ext.act(Jd, u, u_inv)
            if np.any(img[:, :, 1:]):
                continue
            j = index.get(SparseTensor.from_dense(f, img[:, :, 0]))
            if j is not None:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    roots = [find(i) for i in range(len(twists))]
    relabel = {r: k for k, r in enumerate(dict.fromkeys(roots))}
    return EnumerationResult(twists, [relabel[r] for r in roots], required, count, len(gauges), gauge_degree)


# ---------------------------------------------------------------------------
# abelian bases and group isomorphism
# ---------------------------------------------------------------------------


def abelian_basis(elements: Sequence[int], mul, identity: int) -> tuple[list[int], list[int]]:
    """Generators g_1..g_r with orders o_1..o_r such that prod Z/o_i -> A is bijective.

    Brute force over tuples of increasing length; meant for |A| <= 64.
    """
    elements = list(elements)
    n = len(elements)
    if n == 1:
        return [], []
    if any(mul(a, b) != mul(b, a) for a in elements for b in elements):
        raise ValueError("elements do not commute")

    def order(a):
        k, x = 1, a
        while x != identity:
            x = mul(x, a)
            k += 1
        return k

    orders = {a: order(a) for a in elements}
    cands = sorted((a for a in elements if a != identity), key=lambda a: (-orders[a], a))
    for r in range(1, n.bit_length() + 1):
        for gens in iproduct(cands, repeat=r):
            if list(gens) != sorted(gens, key=lambda a: (-orders[a], a)):
                continue
            if np.prod([orders[g] for g in gens]) != n:
                continue
            seen = {identity}
            for g in gens:
                powers = [identity]
                for _ in range(orders[g] - 1):
                    powers.append(mul(powers[-1], g))
                seen = {mul(s, x) for s in seen for x in powers}
            if len(seen) == n:
                return list(gens), [orders[g] for g in gens]
    raise ValueError("elements do not form an abelian group")


def _generators(g: GroupTable) -> list[int]:
    gens: list[int] = []
    sub = {g.identity}
    by_order = sorted(range(g.order), key=lambda a: (-g.element_order(a), a))
    while len(sub) < g.order:
        a = next(x for x in by_order if x not in sub)
        gens.append(a)
        frontier = list(sub)
        sub = set(sub)
        while frontier:
            x = frontier.pop()
            for y in gens:
                for z in (g.mul(x, y), g.mul(y, x)):
                    if z not in sub:
                        sub.add(z)
                        frontier.append(z)
    return gens


def find_isomorphism(g1: GroupTable, g2: GroupTable) -> list[int] | None:
    """A bijection phi with phi(ab) = phi(a) phi(b), or None."""
    if g1.order != g2.order:
        return None
    o1 = [g1.element_order(a) for a in range(g1.order)]
    o2 = [g2.element_order(a) for a in range(g2.order)]
    if sorted(o1) != sorted(o2):
        return None
    gens = _generators(g1)

    def extend(images):
        phi = {g1.identity: g2.identity}
        frontier = [g1.identity]
        while frontier:
            x = frontier.pop()
            for s, t in zip(gens, images):
                y, w = g1.mul(x, s), g2.mul(phi[x], t)
                if y in phi:
                    if phi[y] != w:
                        return None
                else:
                    phi[y] = w
                    frontier.append(y)
        out = [phi[a] for a in range(g1.order)]
        if len(set(out)) != g1.order:
            return None
        t1, t2 = g1.table, g2.table
        arr = np.array(out)
        if not np.array_equal(arr[t1], t2[arr[:, None], arr[None, :]]):
            return None
        return out

    def search(k, images):
        if k == len(gens):
            return extend(images)
        for c in range(g2.order):
            if o2[c] == o1[gens[k]] and c not in images:
                found = search(k + 1, images + [c])
                if found:
                    return found
        return None

    return search(0, [])


def identify_order8(g: GroupTable) -> str | None:
    if g.order != 8:
        return None
    for name, ref in order8_groups().items():
        if find_isomorphism(g, ref) is not None:
            return name
    return None
