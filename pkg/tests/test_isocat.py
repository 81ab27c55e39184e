from itertools import product

import numpy as np
import pytest

from hopfkit.commutative import dihedral, find_isomorphism, group_algebra, klein4, quaternion8, symmetric
from hopfkit.isocat import (STAGES, NormalAbelianEmbedding, SkewForm, _extend_bimultiplicative, build_G_b,
                            character_values, characters, check_cocycle, check_embedding, check_skew_form,
                            from_character_values, perturb, run_pipeline, standard_symplectic, tau,
                            twist_candidates, twist_from_form, verify_isocategorical)
from hopfkit.linalg import PrimeField
from hopfkit.report import ConsistencyError
from hopfkit.twists import check_twist

F3 = PrimeField(3)
D4 = dihedral(4)
KLEIN = [0, 2, 4, 6]          # {e, r^2, s, r^2 s}


def d4_setup(field=F3, section=()):
    e = NormalAbelianEmbedding(D4, KLEIN, section)
    chars = characters(e, field)
    form = standard_symplectic(chars)
    return e, chars, form


def test_d4_labels_and_klein_subgroups():
    assert D4.labels == ("e", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s")
    for sub in (KLEIN, [0, 2, 5, 7]):
        assert check_embedding(NormalAbelianEmbedding(D4, sub)).passed


def test_center_is_normal_but_not_symplectic():
    e = NormalAbelianEmbedding(D4, [0, 2])
    assert check_embedding(e).passed
    res = run_pipeline(D4, [0, 2], F3)
    assert res.failed_stage == STAGES.index("skew_form")


def test_non_normal_subgroup():
    s3 = symmetric(3)
    t = s3.labels.index("213")
    rep = check_embedding(NormalAbelianEmbedding(s3, [s3.identity, t]))
    assert not rep.passed and rep.first_failure().name == "normal"
    assert run_pipeline(s3, [s3.identity, t], F3).failed_stage == 0


def test_non_subgroup_and_non_abelian():
    assert not check_embedding(NormalAbelianEmbedding(D4, [0, 1])).passed
    assert check_embedding(NormalAbelianEmbedding(D4, list(range(8)))).first_failure().name == "abelian"


def test_characters_need_coprime_field():
    e = NormalAbelianEmbedding(D4, KLEIN)
    with pytest.raises(ValueError):
        characters(e, PrimeField(2))
    q = quaternion8()
    cyc = NormalAbelianEmbedding(q, [0, 1, 4, 5])          # <i>, cyclic of order 4
    assert check_embedding(cyc).passed
    with pytest.raises(ValueError):
        characters(cyc, F3)                                # F_3 has no primitive 4th root


def test_character_table_is_a_group_of_homomorphisms():
    e, chars, _ = d4_setup()
    A = e.subgroup_table()
    p = 3
    for row in chars.values:
        for i in range(4):
            for j in range(4):
                assert row[A.table[i, j]] == row[i] * row[j] % p
    assert len({tuple(r) for r in chars.values}) == 4


def test_standard_form_passes_checks():
    e, chars, form = d4_setup()
    assert check_skew_form(e, chars, form).passed


def test_trivial_form_is_degenerate():
    e, chars, _ = d4_setup()
    rep = check_skew_form(e, chars, SkewForm(np.ones((4, 4), dtype=np.int64)))
    assert not rep["nondegenerate"].passed
    assert rep["alternating"].passed and rep["bimultiplicative"].passed


def test_non_alternating_form():
    e, chars, _ = d4_setup()
    base = np.array([[2, 1], [1, 1]])                      # B(chi_1, chi_1) = -1
    rep = check_skew_form(e, chars, SkewForm(_extend_bimultiplicative(chars, base)))
    assert not rep["alternating"].passed


def test_zero_values_rejected():
    e, chars, _ = d4_setup()
    rep = check_skew_form(e, chars, SkewForm(np.zeros((4, 4), dtype=np.int64)))
    assert not rep.passed and rep.first_failure().name == "nonzero_values"


def test_z2_has_no_nondegenerate_form():
    e = NormalAbelianEmbedding(D4, [0, 2])
    chars = characters(e, F3)
    passing = []
    for vals in product([1, 2], repeat=4):
        form = SkewForm(np.array(vals).reshape(2, 2))
        if check_skew_form(e, chars, form).passed:
            passing.append(vals)
    assert passing == []
    with pytest.raises(ValueError):
        standard_symplectic(chars)


def test_twist_candidates():
    e, chars, form = d4_setup()
    hA = group_algebra(e.subgroup_table(), F3)
    cands = list(twist_candidates(chars, form))
    assert len(cands) == 8
    assert all(check_twist(hA, J).passed for J in cands)
    J = twist_from_form(e, chars, form)
    assert J == cands[0]
    vals = np.arange(16).reshape(4, 4) % 3
    assert np.array_equal(character_values(chars, from_character_values(chars, vals)), vals)


def test_upper_triangular_twist_needs_sqrt_minus_one():
    e, chars, form = d4_setup()
    with pytest.raises(ConsistencyError):
        tau(e, chars, twist_from_form(e, chars, form, 0))
    e5, chars5, form5 = d4_setup(PrimeField(5))
    for which in range(8):
        t = tau(e5, chars5, twist_from_form(e5, chars5, form5, which))
        assert check_cocycle(e5, t.btilde).passed


def test_d4_pipeline():
    res = run_pipeline(D4, KLEIN, F3)
    assert res.passed, res.stages
    assert res.stages["G_b"]["isomorphism_type"] == "D4"
    assert res.artifacts["btilde"] == [["e", "e"], ["e", "r^2"]]
    assert res.stages["twist"]["candidate"] == 4
    obj = res.artifacts["objects"]
    assert check_cocycle(obj["embedding"], obj["tau"].btilde).passed


def test_pipeline_over_f5():
    res = run_pipeline(D4, KLEIN, PrimeField(5))
    assert res.passed
    assert res.stages["twist"]["candidate"] == 0


def test_other_klein_subgroup():
    res = run_pipeline(D4, [0, 2, 5, 7], F3)
    assert res.passed and res.stages["G_b"]["isomorphic_to_G"]


def test_trivial_quotient():
    V = klein4()
    res = run_pipeline(V, [0, 1, 2, 3], F3)
    assert res.passed
    assert res.artifacts["btilde"] == [["e"]]
    assert find_isomorphism(build_G_b(res.artifacts["objects"]["embedding"],
                                      res.artifacts["objects"]["tau"].btilde), V) is not None


def test_phi_without_cochain_fails():
    res = run_pipeline(D4, KLEIN, F3)
    o = res.artifacts["objects"]
    rep = verify_isocategorical(o["embedding"], o["J"], o["tau"], o["G_b"], F3, use_z=False)
    failed = {r.name for r in rep.results if not r.passed}
    assert {"phi_multiplicative", "phi_comultiplicative", "phi_antipode"} <= failed


def test_corrupted_twist_is_rejected():
    res = run_pipeline(D4, KLEIN, F3)
    o = res.artifacts["objects"]
    vals = character_values(o["characters"], o["J"])
    vals[2, 2] = (-vals[2, 2]) % 3
    with pytest.raises(ConsistencyError, match="no solution"):
        tau(o["embedding"], o["characters"], from_character_values(o["characters"], vals))


@pytest.mark.parametrize("a", [2, 4, 6])
def test_coboundary_shift(a):
    res = run_pipeline(D4, KLEIN, F3)
    o = res.artifacts["objects"]
    e = o["embedding"]
    t2 = perturb(e, o["characters"], o["tau"], [0, a])
    assert check_cocycle(e, t2.btilde).passed
    g2 = build_G_b(e, t2.btilde)
    assert find_isomorphism(g2, o["G_b"]) is not None
    assert verify_isocategorical(e, o["J"], t2, g2, F3).passed
    with pytest.raises(ValueError):
        perturb(e, o["characters"], o["tau"], [a, 0])


def test_section_independence():
    res = run_pipeline(D4, KLEIN, F3, section=[0, 3])
    assert res.passed
    assert res.stages["G_b"]["isomorphism_type"] == "D4"


def test_bad_section():
    res = run_pipeline(D4, KLEIN, F3, section=[2, 1])
    assert res.failed_stage == 0
