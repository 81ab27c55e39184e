"""Isocategorical deformations of constant group schemes.

Input: a finite group G, a normal abelian subgroup A with p not dividing |A|,
and a G-invariant nondegenerate alternating bicharacter B on the character
group of A.  The pipeline builds a twist J on k[A] with J J_21^{-1} = R (the
form read as an element of k[A] (x) k[A]), solves dz(g) = J^g J^{-1} for a
cochain z on K = G/A, forms b(g, h) = z(gh) z(g)^{-1} (z(h)^g)^{-1} in A,
deforms the product of G by b and checks that gamma -> z(gamma A)^{-1} gamma
is a Hopf isomorphism k[G_b] -> k[G]^J.

Twisting uses Delta^J = J Delta J^{-1}; with that ordering dz(g) = J^g J^{-1}
is exactly the condition making the map above comultiplicative.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from math import gcd

import numpy as np

from .commutative import GroupTable, abelian_basis, find_isomorphism, group_algebra, identify_order8
from .hopf import HopfPresentation, NotInvertible, check_hopf_map, invert, multiply, swap
from .linalg import PrimeField, SparseTensor, rank
from .report import CheckReport, ConsistencyError
from .twists import apply_twist, check_twist, push_forward


@dataclass(frozen=True, eq=False)
class NormalAbelianEmbedding:
    G: GroupTable
    A: tuple
    section: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(sorted(int(a) for a in self.A)))
        G = self.G
        cosets, coset_of = [], {}
        for g in [G.identity] + [x for x in range(G.order) if x != G.identity]:
            if g in coset_of:
                continue
            cs = sorted(G.mul(g, a) for a in self.A)
            for x in cs:
                coset_of.setdefault(x, len(cosets))
            cosets.append(cs)
        object.__setattr__(self, "cosets", cosets)
        object.__setattr__(self, "coset_of", [coset_of.get(x, -1) for x in range(G.order)])
        if not self.section:
            sec = [G.identity if G.identity in c else c[0] for c in cosets]
            object.__setattr__(self, "section", tuple(sec))
        else:
            object.__setattr__(self, "section", tuple(int(s) for s in self.section))

    @property
    def index(self) -> int:
        return len(self.cosets)

    def coset_table(self) -> np.ndarray:
        s = self.section
        return np.array([[self.coset_of[self.G.mul(a, b)] for b in s] for a in s], dtype=np.int64)

    def subgroup_table(self) -> GroupTable:
        pos = {a: i for i, a in enumerate(self.A)}
        t = [[pos[self.G.mul(a, b)] for b in self.A] for a in self.A]
        return GroupTable(np.array(t), tuple(self.G.labels[a] for a in self.A), "A")

    def conj_perm(self, g: int) -> list[int]:
        """Positions: a_i -> g a_i g^{-1}."""
        pos = {a: i for i, a in enumerate(self.A)}
        return [pos[self.G.conj(g, a)] for a in self.A]


def check_embedding(e: NormalAbelianEmbedding) -> CheckReport:
    G, A = e.G, e.A
    rep = CheckReport("embedding")
    Aset = set(A)
    rep.add("contains_identity", G.identity in Aset)
    bad = [(a, b) for a in A for b in A if G.mul(a, b) not in Aset]
    rep.add("closed", not bad, {"pair": [G.labels[x] for x in bad[0]]} if bad else None)
    bad = [(a, b) for a in A for b in A if G.mul(a, b) != G.mul(b, a)]
    rep.add("abelian", not bad, {"pair": [G.labels[x] for x in bad[0]]} if bad else None)
    bad = [(g, a) for g in range(G.order) for a in A if G.conj(g, a) not in Aset]
    rep.add("normal", not bad, {"conjugator": G.labels[bad[0][0]], "element": G.labels[bad[0][1]]} if bad else None)
    ok = True
    if not bad:
        for x in range(G.order):
            for y in range(G.order):
                if e.coset_of[G.mul(x, y)] != e.coset_table()[e.coset_of[x], e.coset_of[y]]:
                    ok = False
                    break
            if not ok:
                break
    else:
        ok = False
    rep.add("coset_table", ok)
    sec_ok = len(e.section) == e.index and all(e.coset_of[s] == i for i, s in enumerate(e.section))
    rep.add("section", sec_ok and e.section[0] == G.identity)
    return rep


# ---------------------------------------------------------------------------
# characters and forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CharacterGroup:
    """Characters of A with values in F_q^*; row c of ``values`` is chi_c on A."""

    field: PrimeField
    values: np.ndarray
    table: GroupTable
    basis: list            # generator character indices
    orders: list
    coords: np.ndarray     # coords[c] = exponents of chi_c in the basis

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    def index_of(self, vals) -> int:
        hit = np.flatnonzero(np.all(self.values == np.asarray(vals), axis=1))
        return int(hit[0])

    def act(self, e: NormalAbelianEmbedding, g: int) -> list[int]:
        """c -> index of g.chi_c, where (g.chi)(a) = chi(g^{-1} a g)."""
        perm = e.conj_perm(int(e.G.inverse[g]))
        return [self.index_of(self.values[c][perm]) for c in range(self.size)]


def roots_of_unity(f: PrimeField, m: int) -> list[int]:
    return [x for x in range(1, f.p) if pow(x, m, f.p) == 1]


def characters(e: NormalAbelianEmbedding, f: PrimeField) -> CharacterGroup:
    A = e.A
    n = len(A)
    if gcd(n, f.p) != 1:
        raise ValueError(f"characteristic {f.p} divides |A| = {n}; the dual is not etale")
    G = e.G
    pos = {a: i for i, a in enumerate(A)}
    gens, orders = abelian_basis(A, G.mul, G.identity)
    missing = [o for o in orders if len(roots_of_unity(f, o)) < o]
    if missing:
        raise ValueError(f"F_{f.p} lacks primitive {max(missing)}-th roots of unity")
    # each a in A is prod gens^k; chi is fixed by its values on gens
    exps = {}
    for ks in iproduct(*[range(o) for o in orders]):
        x = G.identity
        for g, k in zip(gens, ks):
            x = G.mul(x, G.power(g, k))
        exps[x] = ks
    vals = []
    for choice in iproduct(*[roots_of_unity(f, o) for o in orders]):
        row = [1] * n
        for a in A:
            v = 1
            for r, k in zip(choice, exps[a]):
                v = v * pow(r, k, f.p) % f.p
            row[pos[a]] = v
        vals.append(row)
    values = np.array(vals, dtype=np.int64)
    m = len(vals)
    idx = {tuple(r): i for i, r in enumerate(vals)}
    t = np.array([[idx[tuple((values[i] * values[j]) % f.p)] for j in range(m)] for i in range(m)])
    table = GroupTable(t, tuple(f"chi{i}" for i in range(m)), "A^")
    cb, co = abelian_basis(range(m), table.mul, table.identity)
    coords = np.zeros((m, len(cb)), dtype=np.int64)
    for ks in iproduct(*[range(o) for o in co]):
        x = table.identity
        for g, k in zip(cb, ks):
            x = table.mul(x, table.power(g, k))
        coords[x] = ks
    return CharacterGroup(f, values, table, cb, co, coords)


@dataclass(frozen=True, eq=False)
class SkewForm:
    table: np.ndarray     # B[c, d] in F_q^*, indexed by character indices

    def to_json(self) -> dict:
        return {"table": [[int(v) for v in row] for row in self.table]}


def check_skew_form(e: NormalAbelianEmbedding, chars: CharacterGroup, form: SkewForm) -> CheckReport:
    B = np.asarray(form.table, dtype=np.int64)
    p, m, T = chars.field.p, chars.size, chars.table.table
    rep = CheckReport("skew form")
    shape_ok = B.shape == (m, m) and bool(np.all(B % p != 0))
    rep.add("nonzero_values", shape_ok)
    if not shape_ok:
        return rep
    bad = [(a, b, c) for a in range(m) for b in range(m) for c in range(m)
           if B[T[a, b], c] != B[a, c] * B[b, c] % p or B[c, T[a, b]] != B[c, a] * B[c, b] % p]
    rep.add("bimultiplicative", not bad, {"triple": list(bad[0])} if bad else None)
    bad = [a for a in range(m) if B[a, a] != 1]
    rep.add("alternating", not bad, {"character": int(bad[0])} if bad else None)
    bad = [a for a in range(m) if a != chars.table.identity and np.all(B[a] == 1)]
    rep.add("nondegenerate", not bad, {"character": int(bad[0])} if bad else None)
    bad = []
    for g in e.section:
        act = chars.act(e, g)
        if not np.array_equal(B[np.ix_(act, act)], B):
            bad.append(g)
    rep.add("equivariant", not bad, {"conjugator": e.G.labels[bad[0]]} if bad else None)
    return rep


def standard_symplectic(chars: CharacterGroup) -> SkewForm:
    """Pair consecutive basis characters with a primitive root of their order."""
    f, p = chars.field, chars.field.p
    r = len(chars.basis)
    if r % 2 or any(chars.orders[i] != chars.orders[i + 1] for i in range(0, r, 2)):
        raise ValueError("character group is not of symplectic type (Z/m)^2 x ...")
    base = np.ones((r, r), dtype=np.int64)
    for i in range(0, r, 2):
        m = chars.orders[i]
        zeta = next(x for x in roots_of_unity(f, m) if all(pow(x, d, p) != 1 for d in range(1, m)))
        base[i, i + 1] = zeta
        base[i + 1, i] = pow(zeta, -1, p)
    return SkewForm(_extend_bimultiplicative(chars, base))


def _extend_bimultiplicative(chars: CharacterGroup, base: np.ndarray) -> np.ndarray:
    p, m, C = chars.field.p, chars.size, chars.coords
    out = np.ones((m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            v = 1
            for i in range(C.shape[1]):
                for j in range(C.shape[1]):
                    v = v * pow(int(base[i, j]), int(C[a, i] * C[b, j]), p) % p
            out[a, b] = v
    return out


# ---------------------------------------------------------------------------
# twist, cochain, cocycle
# ---------------------------------------------------------------------------


def _idempotents(chars: CharacterGroup) -> np.ndarray:
    """E[c] = coordinates of e_chi_c = |A|^{-1} sum_a chi_c(a)^{-1} a."""
    p = chars.field.p
    n = chars.values.shape[1]
    inv_n = pow(n, -1, p)
    inv_vals = np.vectorize(lambda v: pow(int(v), -1, p))(chars.values)
    return (inv_vals * inv_n) % p


def from_character_values(chars: CharacterGroup, vals: np.ndarray) -> SparseTensor:
    """sum_{c,d} vals[c, d] e_c (x) e_d in k[A] (x) k[A]."""
    E = _idempotents(chars)
    f = chars.field
    return SparseTensor.from_dense(f, f.reduce(np.einsum("cd,ca,db->ab", vals, E, E)))


def character_values(chars: CharacterGroup, x: SparseTensor) -> np.ndarray:
    """(chi_c (x) chi_d)(x) for every pair; the inverse of from_character_values."""
    X = chars.values
    return chars.field.reduce(np.einsum("ca,ab,db->cd", X, x.dense().astype(np.int64), X))


def form_element(chars: CharacterGroup, form: SkewForm) -> SparseTensor:
    return from_character_values(chars, np.asarray(form.table))


def twist_candidates(chars: CharacterGroup, form: SkewForm):
    """Bicharacters beta with beta(c, d) / beta(d, c) = B(c, d), as element tensors.

    The first is the upper-triangular half of B on the character basis; the
    rest multiply it by symmetric bicharacters, in a fixed order.
    """
    p = chars.field.p
    B = np.asarray(form.table, dtype=np.int64)
    b, o = chars.basis, chars.orders
    r = len(b)
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    options = [roots_of_unity(chars.field, gcd(o[i], o[j])) for i, j in pairs]
    for choice in iproduct(*options):
        base = np.ones((r, r), dtype=np.int64)
        for i in range(r):
            for j in range(i + 1, r):
                base[i, j] = B[b[i], b[j]]
        for (i, j), t in zip(pairs, choice):
            base[i, j] = base[i, j] * t % p
            if i != j:
                base[j, i] = base[j, i] * t % p
        yield from_character_values(chars, _extend_bimultiplicative(chars, base))


def twist_from_form(e: NormalAbelianEmbedding, chars: CharacterGroup, form: SkewForm, which: int = 0) -> SparseTensor:
    """J = sum beta(c, d) e_c (x) e_d with J J_21^{-1} = R; ``which`` picks a candidate."""
    J = next(x for i, x in enumerate(twist_candidates(chars, form)) if i == which)
    hA = group_algebra(e.subgroup_table(), chars.field)
    if not check_twist(hA, J).passed:
        raise ConsistencyError("bicharacter did not give a twist")
    if multiply(hA, J, invert(hA, swap(J))) != form_element(chars, form):
        raise ConsistencyError("J J_21^{-1} differs from the form")
    return J


def _conj_tensor(e: NormalAbelianEmbedding, g: int, x: SparseTensor) -> SparseTensor:
    perm = e.conj_perm(g)
    return SparseTensor(x.field, x.arity, x.dim, {tuple(perm[i] for i in k): v for k, v in x.items()})


@dataclass
class Tau:
    z: list                  # z[k] as a k[A] element (arity 1), k indexes cosets
    btilde: np.ndarray       # btilde[i, j] = index in G of an element of A
    character_z: list = dc_field(default_factory=list)   # z[k] as values on characters


def _solve_cochain(chars: CharacterGroup, c: np.ndarray) -> np.ndarray | None:
    """w: characters -> F_q^* with w(x) w(y) / w(xy) = c[x, y] and w(1) = 1."""
    p, T = chars.field.p, chars.table.table
    one = chars.table.identity
    m = chars.size
    for start in iproduct(range(1, p), repeat=len(chars.basis)):
        w = {one: 1}
        frontier = [one]
        for g, v in zip(chars.basis, start):
            w.setdefault(g, v)
        ok = True
        frontier = list(w)
        while frontier and ok:
            x = frontier.pop()
            for g in chars.basis:
                y = int(T[x, g])
                val = w[x] * w[g] * pow(int(c[x, g]), -1, p) % p
                if y in w:
                    if w[y] != val:
                        ok = False
                        break
                else:
                    w[y] = val
                    frontier.append(y)
        if not ok or len(w) != m:
            continue
        arr = np.array([w[x] for x in range(m)], dtype=np.int64)
        dz = (arr[:, None] * arr[None, :] * np.vectorize(lambda v: pow(int(v), -1, p))(arr[T])) % p
        if np.array_equal(dz, c % p):
            return arr
    return None


def _element_from_values(chars: CharacterGroup, w: np.ndarray) -> SparseTensor:
    E = _idempotents(chars)
    f = chars.field
    return SparseTensor.from_dense(f, f.reduce(w @ E))


def compute_btilde(e: NormalAbelianEmbedding, z: list, hA: HopfPresentation) -> np.ndarray:
    K = e.coset_table()
    k = e.index
    out = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        zi_inv = invert(hA, z[i])
        for j in range(k):
            zj_g = _conj_tensor(e, e.section[i], z[j])
            val = multiply(hA, multiply(hA, z[int(K[i, j])], zi_inv), invert(hA, zj_g))
            items = list(val.items())
            if len(items) != 1 or items[0][1] != 1:
                raise ConsistencyError(f"b({i},{j}) is not a group element of A")
            out[i, j] = e.A[items[0][0][0]]
    return out


def check_cocycle(e: NormalAbelianEmbedding, btilde: np.ndarray) -> CheckReport:
    G, K = e.G, e.coset_table()
    k = e.index
    rep = CheckReport("cocycle")
    bad = []
    for g, h, l in iproduct(range(k), repeat=3):
        lhs = G.mul(int(btilde[g, h]), int(btilde[K[g, h], l]))
        rhs = G.mul(G.conj(e.section[g], int(btilde[h, l])), int(btilde[g, K[h, l]]))
        if lhs != rhs:
            bad.append((g, h, l))
    rep.add("cocycle_identity", not bad, {"triple": list(bad[0])} if bad else None)
    norm = all(btilde[0, j] == G.identity and btilde[j, 0] == G.identity for j in range(k))
    rep.add("normalized", bool(norm))
    in_a = all(int(x) in set(e.A) for x in btilde.reshape(-1))
    rep.add("values_in_A", in_a)
    return rep


def tau(e: NormalAbelianEmbedding, chars: CharacterGroup, J: SparseTensor) -> Tau:
    f = chars.field
    hA = group_algebra(e.subgroup_table(), f)
    try:
        J_inv = invert(hA, J)
    except NotInvertible as exc:
        raise ConsistencyError("J is not invertible") from exc
    zs, ws = [], []
    for i, g in enumerate(e.section):
        c = multiply(hA, _conj_tensor(e, g, J), J_inv)
        if swap(c) != c:
            raise ConsistencyError(f"J^g J^-1 is not symmetric for g = {e.G.labels[g]}")
        w = _solve_cochain(chars, character_values(chars, c))
        if w is None:
            raise ConsistencyError(f"dz = J^g J^-1 has no solution for g = {e.G.labels[g]}")
        ws.append(w)
        zs.append(_element_from_values(chars, w))
    bt = compute_btilde(e, zs, hA)
    cert = check_cocycle(e, bt)
    if not cert.passed:
        raise ConsistencyError(f"b fails {cert.first_failure().name}")
    return Tau(zs, bt, ws)


def perturb(e: NormalAbelianEmbedding, chars: CharacterGroup, t: Tau, shift: list[int]) -> Tau:
    """Replace z(k) by z(k) a_k for a_k = shift[k] in A; b moves by a coboundary."""
    if shift[0] != e.G.identity:
        raise ValueError("the shift must be trivial on the identity coset")
    hA = group_algebra(e.subgroup_table(), chars.field)
    pos = {a: i for i, a in enumerate(e.A)}
    zs = [multiply(hA, z, SparseTensor(chars.field, 1, len(e.A), {(pos[a],): 1})) for z, a in zip(t.z, shift)]
    bt = compute_btilde(e, zs, hA)
    return Tau(zs, bt)


def build_G_b(e: NormalAbelianEmbedding, btilde: np.ndarray) -> GroupTable:
    G = e.G
    c = e.coset_of
    t = np.array([[G.mul(int(btilde[c[x], c[y]]), G.mul(x, y)) for y in range(G.order)]
                  for x in range(G.order)], dtype=np.int64)
    try:
        return GroupTable(t, G.labels, f"{G.name}_b" if G.name else "G_b")
    except ValueError as exc:
        raise ConsistencyError(f"deformed product is not a group: {exc}") from exc


def _embed_A(e: NormalAbelianEmbedding, f: PrimeField) -> np.ndarray:
    inc = np.zeros((e.G.order, len(e.A)), dtype=np.int64)
    for i, a in enumerate(e.A):
        inc[a, i] = 1
    return inc


def phi_matrix(e: NormalAbelianEmbedding, t: Tau, f: PrimeField, use_z: bool = True) -> np.ndarray:
    """Column gamma = z(gamma A)^{-1} gamma in k[G] coordinates."""
    G = e.G
    hA = group_algebra(e.subgroup_table(), f)
    inc = _embed_A(e, f)
    kG = group_algebra(G, f)
    cols = []
    for gamma in range(G.order):
        if use_z:
            zinv = invert(hA, t.z[e.coset_of[gamma]]).dense()
            zg = f.reduce(inc @ zinv.astype(np.int64))
        else:
            zg = kG.unit
        cols.append(kG.algebra.product(zg, f.reduce(np.eye(G.order, dtype=np.int64)[gamma])))
    return f.reduce(np.array(cols).T)


def twisted_group_algebra(e: NormalAbelianEmbedding, J: SparseTensor, f: PrimeField) -> HopfPresentation:
    kG = group_algebra(e.G, f)
    JG = push_forward(_embed_A(e, f), J, f)
    return apply_twist(kG, JG)


def verify_isocategorical(e: NormalAbelianEmbedding, J: SparseTensor, t: Tau, gb: GroupTable,
                          f: PrimeField, use_z: bool = True) -> CheckReport:
    kGJ = twisted_group_algebra(e, J, f)
    kGb = group_algebra(gb, f)
    phi = phi_matrix(e, t, f, use_z)
    rep = CheckReport("isocategorical")
    rep.add("bijective", rank(f, phi) == e.G.order)
    rep.extend(check_hopf_map(kGb, kGJ, phi), "phi_")
    rep.add("same_order", gb.order == e.G.order)
    rep.add("same_carrier", tuple(gb.labels) == tuple(e.G.labels))
    return rep


# ---------------------------------------------------------------------------
# staged pipeline
# ---------------------------------------------------------------------------

STAGES = ("embedding", "skew_form", "twist", "tau", "G_b", "isocategorical")


@dataclass
class PipelineResult:
    stages: dict
    failed_stage: int | None = None
    artifacts: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failed_stage is None


def run_pipeline(G: GroupTable, subgroup, f: PrimeField, form=None, section=None) -> PipelineResult:
    """Run every stage in order, stopping at the first failure.

    ``form`` is a character-indexed table, a SkewForm, or None for the
    standard symplectic form.
    """
    res = PipelineResult({})
    e = NormalAbelianEmbedding(G, tuple(subgroup), tuple(section or ()))

    def fail(i, info):
        res.stages[STAGES[i]] = info
        res.failed_stage = i
        return res

    rep = check_embedding(e)
    res.stages["embedding"] = rep.to_dict()
    if not rep.passed:
        res.failed_stage = 0
        return res
    try:
        chars = characters(e, f)
        sf = form if isinstance(form, SkewForm) else (
            standard_symplectic(chars) if form is None else SkewForm(np.asarray(form, dtype=np.int64)))
    except ValueError as exc:
        return fail(1, {"passed": False, "error": str(exc)})
    rep = check_skew_form(e, chars, sf)
    res.stages["skew_form"] = rep.to_dict()
    res.artifacts["characters"] = chars.values.tolist()
    res.artifacts["form"] = np.asarray(sf.table).tolist()
    if not rep.passed:
        res.failed_stage = 1
        return res
    J, t, err = None, None, None
    for which in range(sum(1 for _ in twist_candidates(chars, sf))):
        try:
            cand = twist_from_form(e, chars, sf, which)
        except ConsistencyError as exc:
            return fail(2, {"passed": False, "error": str(exc)})
        if J is None:
            res.stages["twist"] = {"passed": True}
        try:
            t = tau(e, chars, cand)
        except ConsistencyError as exc:
            err = err or str(exc)
            J = J or cand
            continue
        J = cand
        res.stages["twist"] = {"passed": True, "candidate": which}
        break
    res.artifacts["J"] = [[list(k), int(v)] for k, v in sorted(J.items())]
    if t is None:
        return fail(3, {"passed": False, "error": f"{err} (for every candidate twist; the field may lack roots of unity)"})
    res.stages["tau"] = {"passed": True}
    res.artifacts["z"] = [w.tolist() for w in t.character_z]
    res.artifacts["btilde"] = [[G.labels[int(x)] for x in row] for row in t.btilde]
    try:
        gb = build_G_b(e, t.btilde)
    except ConsistencyError as exc:
        return fail(4, {"passed": False, "error": str(exc)})
    res.stages["G_b"] = {"passed": True, "isomorphism_type": identify_order8(gb),
                         "isomorphic_to_G": find_isomorphism(gb, G) is not None}
    res.artifacts["G_b"] = gb.to_json()
    rep = verify_isocategorical(e, J, t, gb, f)
    res.stages["isocategorical"] = rep.to_dict()
    res.artifacts["phi"] = phi_matrix(e, t, f).tolist()
    if not rep.passed:
        res.failed_stage = 5
    res.artifacts["objects"] = {"embedding": e, "characters": chars, "form": sf, "J": J, "tau": t, "G_b": gb}
    return res
