"""Restricted (p-)Lie algebras and their restricted enveloping algebras.

Enveloping algebras are built on the PBW basis ``x_1^{a_1} ... x_n^{a_n}``
(``0 <= a_i < p``), indexed in mixed radix with the first variable most
significant.  Products are obtained by straightening: left multiplication by
each generator is computed once per monomial and memoised, and every other
product is a composition of those generator matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from math import comb
from typing import Sequence

import numpy as np

from .hopf import AlgebraPresentation, HopfPresentation, check_algebra
from .linalg import Field, PrimeField, rank
from .report import CheckReport, ConsistencyError


class StraighteningError(ConsistencyError):
    """Rewriting did not terminate; the p-Lie data is inconsistent."""


@dataclass(frozen=True, eq=False)
class PLiePresentation:
    field: PrimeField
    basis: tuple
    bracket: np.ndarray     # bracket[i, j, k]: coefficient of x_k in [x_i, x_j]
    pmap: np.ndarray        # pmap[i]: coordinates of x_i^[p]
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.field, PrimeField):
            raise ValueError("p-Lie algebras need a prime field")
        n = len(self.basis)
        object.__setattr__(self, "basis", tuple(str(b) for b in self.basis))
        br = self.field.reduce(np.asarray(self.bracket).reshape((n, n, n)) if n else np.zeros((0, 0, 0), int))
        pm = self.field.reduce(np.asarray(self.pmap).reshape((n, n)) if n else np.zeros((0, 0), int))
        br.flags.writeable = False
        pm.flags.writeable = False
        object.__setattr__(self, "bracket", br)
        object.__setattr__(self, "pmap", pm)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def ad(self) -> np.ndarray:
        """``ad[i]`` is the matrix of [x_i, -] (out, in)."""
        return np.transpose(self.bracket, (0, 2, 1))

    def ad_of(self, v) -> np.ndarray:
        return self.field.tensordot(np.asarray(v), self.ad, ([0], [0]))

    def bracket_of(self, u, v) -> np.ndarray:
        t = self.field.tensordot(np.asarray(u), self.bracket, ([0], [0]))
        return self.field.tensordot(np.asarray(v), t, ([0], [0]))

    def is_abelian(self) -> bool:
        return not np.any(self.bracket)


def _matpow(f: Field, m, e: int):
    out = f.eye(m.shape[0])
    for _ in range(e):
        out = f.matmul(out, m)
    return out


def check_plie(L: PLiePresentation, build_envelope: bool = True) -> CheckReport:
    f, C, n, p = L.field, L.bracket, L.dim, L.p
    rep = CheckReport(f"p-Lie {L.name}".strip())
    anti = np.argwhere(np.any(f.reduce(C + np.transpose(C, (1, 0, 2))) != 0, axis=2))
    rep.add("antisymmetry", anti.size == 0,
            None if anti.size == 0 else {"pair": [L.basis[int(i)] for i in anti[0]]})
    diag = [i for i in range(n) if np.any(C[i, i] != 0)]
    rep.add("alternating", not diag, {"element": L.basis[diag[0]]} if diag else None)

    # [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0
    inner = C                                            # [j,k,l]
    t1 = f.tensordot(inner, C, ([2], [1]))               # [j,k,i,m] = [x_i,[x_j,x_k]]
    t1 = np.transpose(t1, (2, 0, 1, 3))                  # [i,j,k,m]
    jac = f.reduce(t1 + np.transpose(t1, (1, 2, 0, 3)) + np.transpose(t1, (2, 0, 1, 3)))
    bad = np.argwhere(np.any(jac != 0, axis=3))
    rep.add("jacobi", bad.size == 0,
            None if bad.size == 0 else {"triple": [L.basis[int(i)] for i in bad[0]]})

    w = None
    for i in range(n):
        if not np.array_equal(L.ad_of(L.pmap[i]), _matpow(f, L.ad[i], p)):
            w = {"element": L.basis[i]}
            break
    rep.add("restricted_ad", w is None, w)

    if build_envelope and rep.passed:
        try:
            w = pbw_certificate(L)
        except StraighteningError as exc:
            rep.add("pbw_certificate", False, detail=str(exc))
            return rep
        rep.add("pbw_certificate", w is None, w, f"dim {p ** n}")
        if w is None and p ** n <= TABLE_LIMIT:
            sub = check_algebra(reduced_enveloping(L))
            rep.add("envelope_associative", sub.passed,
                    None if sub.passed else sub.first_failure().witness)
    return rep


# Dense multiplication tables are only materialised up to this dimension.
TABLE_LIMIT = 128
# Envelopes above this dimension are refused outright (dim^3 integers each).
DENSE_LIMIT = 256


def pbw_certificate(L: PLiePresentation, xi=None):
    """Check the generator action on the PBW space against the defining relations.

    If x_i x_j - x_j x_i = [x_i, x_j] and x_i^p = x_i^[p] + xi(x_i)^p hold as
    operators, the PBW space is a cyclic module generated by 1, so the
    enveloping algebra has dimension exactly p^n.  Returns None or a witness.
    """
    st = _Straightener(L, xi)
    n, p = L.dim, L.p

    def act(i, vec):
        out: dict = {}
        for m, c in vec.items():
            st._add(out, st.mul_gen(i, m), c)
        return {m: c for m, c in out.items() if c}

    for a in monomials(n, p):
        base = {a: 1}
        single = [act(i, base) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lhs: dict = {}
                st._add(lhs, act(i, single[j]), 1)
                st._add(lhs, act(j, single[i]), -1)
                rhs: dict = {}
                for k in range(n):
                    st._add(rhs, single[k], int(L.bracket[i, j, k]))
                if {m: c for m, c in lhs.items() if c} != {m: c for m, c in rhs.items() if c}:
                    return {"relation": "bracket", "pair": [L.basis[i], L.basis[j]],
                            "monomial": monomial_label(L.basis, a)}
            vec = base
            for _ in range(p):
                vec = act(i, vec)
            rhs = {}
            for k in range(n):
                st._add(rhs, single[k], int(L.pmap[i, k]))
            st._add(rhs, base, st.xi_p[i])
            if vec != {m: c for m, c in rhs.items() if c}:
                return {"relation": "p-power", "element": L.basis[i],
                        "monomial": monomial_label(L.basis, a)}
    return None


# ---------------------------------------------------------------------------
# straightening
# ---------------------------------------------------------------------------


class _Straightener:
    def __init__(self, L: PLiePresentation, xi=None):
        self.L = L
        self.f = L.field
        self.p = L.p
        self.n = L.dim
        xi = np.zeros(self.n, dtype=np.int64) if xi is None else self.f.reduce(np.asarray(xi))
        self.xi_p = [pow(int(v), self.p, self.p) for v in xi]
        self.memo: dict = {}
        self.active: set = set()

    def _add(self, acc: dict, terms: dict, c: int):
        if c % self.p == 0:
            return
        for m, v in terms.items():
            acc[m] = (acc.get(m, 0) + c * v) % self.p

    def mul_gen(self, i: int, a: tuple) -> dict:
        """x_i * x^a as a map monomial -> coefficient."""
        key = (i, a)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if key in self.active:
            raise StraighteningError(f"rewriting x{i} * {a} loops")
        self.active.add(key)
        p = self.p
        j = next((t for t, e in enumerate(a) if e), None)
        out: dict = {}
        if j is None or i < j:
            b = list(a)
            b[i] = 1
            out = {tuple(b): 1}
        elif i == j:
            if a[i] + 1 < p:
                b = list(a)
                b[i] += 1
                out = {tuple(b): 1}
            else:
                rest = list(a)
                rest[i] = 0
                rest = tuple(rest)
                for k in range(self.n):
                    self._add(out, self.mul_gen(k, rest), int(self.L.pmap[i, k]))
                self._add(out, {rest: 1}, self.xi_p[i])
        else:
            # x_i x_j r = x_j (x_i r) + [x_i, x_j] r
            rest = list(a)
            rest[j] -= 1
            rest = tuple(rest)
            for m, c in self.mul_gen(i, rest).items():
                self._add(out, self.mul_gen(j, m), c)
            for k in range(self.n):
                self._add(out, self.mul_gen(k, rest), int(self.L.bracket[i, j, k]))
        out = {m: c for m, c in out.items() if c}
        self.active.discard(key)
        self.memo[key] = out
        return out


def monomials(n: int, p: int) -> list[tuple]:
    """PBW exponent vectors in basis order (first variable most significant)."""
    return list(iproduct(range(p), repeat=n))


def monomial_index(a: Sequence[int], p: int) -> int:
    idx = 0
    for e in a:
        idx = idx * p + int(e)
    return idx


def monomial_label(names: Sequence[str], a: Sequence[int]) -> str:
    parts = [f"{nm}^{e}" for nm, e in zip(names, a) if e]
    return " ".join(parts) if parts else "1"


def _generator_matrices(L: PLiePresentation, xi=None) -> np.ndarray:
    st = _Straightener(L, xi)
    mons = monomials(L.dim, L.p)
    N = len(mons)
    gens = np.zeros((L.dim, N, N), dtype=np.int64)
    for i in range(L.dim):
        for col, a in enumerate(mons):
            for m, c in st.mul_gen(i, a).items():
                gens[i, monomial_index(m, L.p), col] = c
    return gens


def _left_operators(f: PrimeField, gens: np.ndarray, n: int, p: int) -> np.ndarray:
    """ops[idx] = matrix of left multiplication by the monomial with that index."""
    mons = monomials(n, p)
    N = len(mons)
    ops = np.zeros((N, N, N), dtype=np.int64)
    ops[0] = np.eye(N, dtype=np.int64)
    for idx, a in enumerate(mons[1:], start=1):
        first = next(t for t, e in enumerate(a) if e)
        prev = list(a)
        prev[first] -= 1
        ops[idx] = f.matmul(gens[first], ops[monomial_index(prev, p)])
    return ops


def reduced_enveloping(L: PLiePresentation, xi=None) -> AlgebraPresentation:
    """u_xi(L): relations x^p = x^[p] + xi(x)^p. ``xi=None`` gives u(L)."""
    f, n, p = L.field, L.dim, L.p
    if p ** n > DENSE_LIMIT:
        raise ValueError(f"dense tables of dimension {p ** n} exceed the limit {DENSE_LIMIT}")
    gens = _generator_matrices(L, xi)
    ops = _left_operators(f, gens, n, p)
    # M[a, b, c] = coefficient of x^c in x^a x^b = ops[a][c, b]
    M = np.transpose(ops, (0, 2, 1))
    N = p ** n
    unit = np.zeros(N, dtype=np.int64)
    unit[0] = 1
    labels = tuple(monomial_label(L.basis, a) for a in monomials(n, p))
    suffix = "" if xi is None or not np.any(np.asarray(xi) % p) else "_xi"
    return AlgebraPresentation(f, labels, M, unit, f"u{suffix}({L.name})")


def enveloping(L: PLiePresentation) -> HopfPresentation:
    """The restricted enveloping Hopf algebra u(L) with primitive generators."""
    f, n, p = L.field, L.dim, L.p
    alg = reduced_enveloping(L)
    mons = monomials(n, p)
    N = len(mons)
    D = np.zeros((N, N, N), dtype=np.int64)
    for k, a in enumerate(mons):
        for b in iproduct(*(range(e + 1) for e in a)):
            c = 1
            for ai, bi in zip(a, b):
                c *= comb(ai, bi)
            rest = tuple(ai - bi for ai, bi in zip(a, b))
            D[monomial_index(b, p), monomial_index(rest, p), k] = c % p
    counit = np.zeros(N, dtype=np.int64)
    counit[0] = 1
    # S(x^a) = (-1)^|a| x_n^{a_n} ... x_1^{a_1}
    gens = np.transpose(alg.M[monomial_index_list(n, p)], (0, 2, 1))
    S = np.zeros((N, N), dtype=np.int64)
    for k, a in enumerate(mons):
        v = alg.unit.copy()
        for i in range(n):
            for _ in range(a[i]):
                v = f.reduce(gens[i] @ v)
        S[:, k] = f.reduce(v * (-1) ** sum(a))
    name = f"u({L.name})" if L.name else ""
    return HopfPresentation.build(f, alg.basis, alg.M, alg.unit, D, counit, S, name)


def monomial_index_list(n: int, p: int) -> list[int]:
    """Indices of the generators x_1, ..., x_n in the PBW basis."""
    return [p ** (n - 1 - i) for i in range(n)]


def generator_element(L: PLiePresentation, v) -> np.ndarray:
    """Coordinates in u(L) of the degree-one element with L-coordinates ``v``."""
    out = np.zeros(L.p ** L.dim, dtype=np.int64)
    for i, idx in enumerate(monomial_index_list(L.dim, L.p)):
        out[idx] = int(v[i])
    return L.field.reduce(out)


def frobenius_form(L: PLiePresentation, xi) -> np.ndarray:
    """The matrix xi([x_i, x_j])."""
    return L.field.tensordot(L.bracket, L.field.reduce(np.asarray(xi)), ([2], [0]))


def frobenius_check(L: PLiePresentation, xi) -> bool:
    return rank(L.field, frobenius_form(L, xi)) == L.dim


# ---------------------------------------------------------------------------
# subalgebras and the PBW inclusion
# ---------------------------------------------------------------------------


def subalgebra(L: PLiePresentation, vectors, names: Sequence[str], name: str = "") -> PLiePresentation:
    """Restricted subalgebra spanned by the independent vectors (rows)."""
    f = L.field
    V = f.reduce(np.asarray(vectors))
    m = V.shape[0]
    if rank(f, V) != m:
        raise ValueError("spanning vectors are dependent")
    from .linalg import solve
    coords = lambda w: solve(f, V.T, w)
    C = np.zeros((m, m, m), dtype=np.int64)
    P = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            c = coords(L.bracket_of(V[i], V[j]))
            if c is None:
                raise ValueError("span is not closed under the bracket")
            C[i, j] = c
        # (c v)^[p] = c^p v^[p] is only needed on the spanning vectors
        img = _pmap_of_vector(L, V[i])
        c = coords(img)
        if c is None:
            raise ValueError("span is not closed under the p-map")
        P[i] = c
    return PLiePresentation(f, tuple(names), C, P, name)


def _pmap_of_vector(L: PLiePresentation, v) -> np.ndarray:
    """v^[p] computed as the p-th power in u(L) (always lands in degree one)."""
    U = _envelope_cache(L)
    x = generator_element(L, v)
    y = U.unit.copy()
    for _ in range(L.p):
        y = U.product(y, x)
    gens = monomial_index_list(L.dim, L.p)
    rest = np.delete(y, gens)
    if np.any(rest):
        raise ConsistencyError("p-th power of a Lie element left degree one")
    return L.field.reduce(y[gens])


_ENV_CACHE: dict = {}


def _envelope_cache(L: PLiePresentation) -> AlgebraPresentation:
    key = id(L)
    hit = _ENV_CACHE.get(key)
    if hit is None or hit[0] is not L:
        hit = (L, reduced_enveloping(L))
        _ENV_CACHE[key] = hit
    return hit[1]


def pbw_inclusion(L: PLiePresentation, vectors, sub: PLiePresentation | None = None) -> np.ndarray:
    """Matrix (dim u(L) x dim u(sub)) sending v^a to v_1^{a_1}...v_m^{a_m} in u(L)."""
    f = L.field
    V = f.reduce(np.asarray(vectors))
    m = V.shape[0]
    U = _envelope_cache(L)
    left = [U.regular(generator_element(L, V[i])) for i in range(m)]
    mons = monomials(m, L.p)
    out = np.zeros((U.dim, len(mons)), dtype=np.int64)
    for col, a in enumerate(mons):
        v = U.unit.copy()
        for i in reversed(range(m)):
            for _ in range(a[i]):
                v = f.matmul(left[i], v)
        out[:, col] = v
    return out


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


CATALOG_NAMES = ("abelian2", "nonabelian2", "witt", "gl3_parabolic", "torus")


def _from_tables(p: int, names, bracket_items, pmap_items, name) -> PLiePresentation:
    n = len(names)
    C = np.zeros((n, n, n), dtype=np.int64)
    for (i, j, k), c in bracket_items.items():
        C[i, j, k] += c
        C[j, i, k] -= c
    P = np.zeros((n, n), dtype=np.int64)
    for (i, k), c in pmap_items.items():
        P[i, k] += c
    return PLiePresentation(PrimeField(p), tuple(names), C, P, name)


def abelian2(p: int) -> PLiePresentation:
    return _from_tables(p, ("h", "x"), {}, {}, "abelian2")


def nonabelian2(p: int) -> PLiePresentation:
    return _from_tables(p, ("x", "y"), {(0, 1, 1): 1}, {(0, 0): 1}, "nonabelian2")


def witt(p: int) -> PLiePresentation:
    if p < 3:
        raise ValueError("the Witt algebra is only catalogued for p >= 3")
    br = {}
    for i in range(p):
        for j in range(i + 1, p):
            br[(i, j, (i + j) % p)] = (j - i) % p
    return _from_tables(p, tuple(f"x{i}" for i in range(p)), br, {(0, 0): 1}, "witt")


GL3_PARABOLIC_BASIS = ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2))


def gl3_parabolic(p: int) -> PLiePresentation:
    """3x3 matrices with zero last row; bracket = commutator, p-map = p-th power."""
    idx = {e: t for t, e in enumerate(GL3_PARABOLIC_BASIS)}

    def unit_matrix(e):
        m = np.zeros((3, 3), dtype=np.int64)
        m[e] = 1
        return m

    def coords(m):
        if np.any(m[2] % p):
            raise ConsistencyError("left the parabolic")
        return {idx[e]: int(m[e]) % p for e in GL3_PARABOLIC_BASIS if m[e] % p}

    n = len(GL3_PARABOLIC_BASIS)
    C = np.zeros((n, n, n), dtype=np.int64)
    P = np.zeros((n, n), dtype=np.int64)
    for a, ea in enumerate(GL3_PARABOLIC_BASIS):
        A = unit_matrix(ea)
        for b, eb in enumerate(GL3_PARABOLIC_BASIS):
            B = unit_matrix(eb)
            for k, c in coords(A @ B - B @ A).items():
                C[a, b, k] = c
        for k, c in coords(np.linalg.matrix_power(A, p)).items():
            P[a, k] = c
    names = tuple(f"E{r + 1}{c + 1}" for r, c in GL3_PARABOLIC_BASIS)
    return PLiePresentation(PrimeField(p), names, C, P, "gl3_parabolic")


def gl3_frobenius_functional(p: int) -> np.ndarray:
    """xi(E12) = xi(E23) = 1, zero on the other basis matrices."""
    return np.array([0, 1, 0, 0, 0, 1], dtype=np.int64) % p


def torus(n: int, p: int) -> PLiePresentation:
    names = tuple(f"h{i + 1}" for i in range(n)) if n > 1 else ("h",)
    return _from_tables(p, names, {}, {(i, i): 1 for i in range(n)}, f"torus{n}")


def catalog(name: str, p: int, n: int | None = None) -> PLiePresentation:
    """Look up a catalogued p-Lie algebra; ``torus(3)`` style names are accepted."""
    if name.startswith("torus"):
        if "(" in name:
            n = int(name[name.index("(") + 1: name.index(")")])
        return torus(1 if n is None else n, p)
    builders = {"abelian2": abelian2, "nonabelian2": nonabelian2, "witt": witt,
                "gl3_parabolic": gl3_parabolic}
    if name not in builders:
        raise KeyError(f"unknown p-Lie algebra {name!r}")
    return builders[name](p)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def plie_to_json(L: PLiePresentation, xi=None) -> dict:
    out = {
        "dim": L.dim,
        "p": L.p,
        "basis": list(L.basis),
        "bracket": [[int(i), int(j), int(k), int(L.bracket[i, j, k])]
                    for i, j, k in np.argwhere(L.bracket != 0)],
        "pmap": [[int(v) for v in row] for row in L.pmap],
    }
    if L.name:
        out["name"] = L.name
    if xi is not None:
        out["xi"] = [int(v) % L.p for v in xi]
    return out


def plie_from_json(obj: dict) -> tuple[PLiePresentation, np.ndarray | None]:
    n, p = int(obj["dim"]), int(obj["p"])
    C = np.zeros((n, n, n), dtype=np.int64)
    for i, j, k, c in obj.get("bracket", []):
        C[i, j, k] += c
    P = np.array(obj.get("pmap") or np.zeros((n, n)), dtype=np.int64).reshape((n, n))
    basis = tuple(obj.get("basis") or [f"x{i}" for i in range(n)])
    xi = np.array(obj["xi"], dtype=np.int64) if "xi" in obj else None
    return PLiePresentation(PrimeField(p), basis, C, P, obj.get("name", "")), xi
