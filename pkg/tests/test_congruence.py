from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclok.congruence import (
    NonInvertibleRank,
    NotOrthonormalBasis,
    NotProportional,
    central_orthogonality_check,
    coefficients,
    coprime_to,
    decompose_central,
    hook_content_rank,
    line_bundle_table,
    m_deg_consistent,
    match_line_bundle,
    rank_law,
    reduce_coefficients,
    reduced_gram,
    signed_unit,
    slope_residue_check,
)
from cyclok.cyclotomic import Cyclotomic
from cyclok.exceptional import (
    beilinson_collection,
    box_partitions,
    gl_residue,
    kapranov_collection,
    line_bundle_class,
    quadric_collection,
    schur_class,
)
from cyclok.localization import euler_pairing

Z = Cyclotomic.zeta


def test_coefficients_examples():
    s, t0, basis = kapranov_collection(2, 4)
    cv = coefficients(s, t0, basis, basis[3])
    assert cv.coeffs == [1 if i == 3 else 0 for i in range(6)]
    cv = coefficients(s, t0, basis, basis[0].scaled(Z(4)))
    assert cv.coeffs[0] == Z(4) and all(c == 0 for c in cv.coeffs[1:])
    p, pt, lines = beilinson_collection(4)
    cv = coefficients(p, pt, lines, line_bundle_class(p, pt, 4))
    assert cv.coeffs == [1, 0, 0, 0]


def test_coefficients_reject_non_basis():
    s, t0, basis = beilinson_collection(3)
    with pytest.raises(NotOrthonormalBasis):
        coefficients(s, t0, [basis[0], basis[0], basis[1]], basis[2])


def test_reduction_examples():
    s, t0, basis = beilinson_collection(4)
    o2 = line_bundle_class(s, t0, 2)
    assert reduce_coefficients(coefficients(s, t0, basis, o2 + o2), 2) == [0, 0, 0, 0]
    for e in basis:
        red = reduce_coefficients(coefficients(s, t0, basis, e), 2)
        assert sum(red) % 2 == 1


@pytest.mark.parametrize("desc,p", [(("projective", 4), 2), (("projective", 9), 3), (("grassmannian", 2, 4), 2),
                                    (("quadric", 4), 2)])
def test_members_reduce_to_signed_units(desc, p):
    if desc[0] == "projective":
        s, t0, basis = beilinson_collection(desc[1])
    elif desc[0] == "grassmannian":
        s, t0, basis = kapranov_collection(desc[1], desc[2])
    else:
        s, t0, basis = quadric_collection(desc[1])
    ranks = [b.rank for b in basis]
    for e in basis:
        red = reduce_coefficients(coefficients(s, t0, basis, e), p)
        assert signed_unit(red, p) is not None
        assert rank_law(red, ranks, e.rank, p)
        assert sum(red) % p in (1, p - 1)


def test_match_examples():
    s, t0, basis = beilinson_collection(4)
    table = line_bundle_table(s, t0, basis, 2)
    red = reduce_coefficients(coefficients(s, t0, basis, line_bundle_class(s, t0, 2)), 2)
    assert match_line_bundle(red, table) == ("O(2)", 1)
    assert match_line_bundle([0, 0, 0, 0], table) is None
    q, qt, qb = quadric_collection(4)
    qtable = line_bundle_table(q, qt, qb, 2)
    red = reduce_coefficients(coefficients(q, qt, qb, qb[1]), 2)
    assert match_line_bundle(red, qtable) is None


def test_slope_examples():
    _, _, p3 = beilinson_collection(4)
    rep = slope_residue_check(p3, 2, 2)
    assert rep.complete and sorted(rep.slopes) == [0, 1, 2, 3]
    _, _, p8 = beilinson_collection(9)
    assert slope_residue_check(p8, 3, 2).complete
    dup = slope_residue_check([p3[0], p3[1], p3[1], p3[3]], 2, 2)
    assert not dup.complete and dup.collisions[0][:2] == ("O(1)", "O(1)")


def test_slope_needs_invertible_rank():
    s, t0, basis = kapranov_collection(2, 4)
    with pytest.raises(NonInvertibleRank):
        slope_residue_check(basis, 2, 2)


def test_hook_content_examples():
    assert hook_content_rank((), 2) == 1
    assert hook_content_rank((1,), 2) == 2
    assert hook_content_rank((2, 1), 2) == 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_hook_content_ranks_coprime(p):
    for k in range(1, p):
        box = box_partitions(k, p - k)
        assert all(coprime_to(hook_content_rank(lam, k), p) for lam in box)


def test_central_blocks():
    s, t0, basis = kapranov_collection(2, 5)
    rep = central_orthogonality_check(s, t0, basis)
    assert rep.passed and rep.sizes == [2, 2, 2, 2, 2]
    q, qt, qb = quadric_collection(6)
    rep = central_orthogonality_check(q, qt, qb)
    assert rep.passed and rep.sizes == [3, 3, 1, 1]


def test_mixed_pairings_vanish_mod_2_on_g24():
    s, t0, basis = kapranov_collection(2, 4)
    for a in basis:
        for b in basis:
            if gl_residue(s, a) != gl_residue(s, b):
                assert euler_pairing(s, t0, a, b).reduce_mod_p(2) == 0


def test_g24_rank_parity():
    s, t0, basis = kapranov_collection(2, 4)
    for e in basis:
        m = gl_residue(s, e)
        assert (e.rank - m - 1) % 2 == 0
        assert m_deg_consistent(m, e.rank, e.degree, 2, 4)
        if m % 2:
            assert e.rank % 2 == 0


def test_decompose_central():
    s, t0, basis = beilinson_collection(5)
    o2 = line_bundle_class(s, t0, 2)
    assert decompose_central(s, t0, o2, o2) == 1
    assert decompose_central(s, t0, o2 + line_bundle_class(s, t0, 7), o2) == 2
    with pytest.raises(NotProportional):
        decompose_central(s, t0, o2 + line_bundle_class(s, t0, 3), o2)


@given(st.sampled_from([(2, 4), (3, 9), (2, 8)]), st.integers(-10, 10))
def test_coordinatewise_rho_law(pn, m):
    p, n = pn
    s, t0, _ = beilinson_collection(n)
    v = line_bundle_class(s, t0, m) + line_bundle_class(s, t0, 2 * m + 1)
    assert all(x.reduce_mod_p(p) == v.rank % p for x in v.values)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=4))
def test_reduced_gram_symmetric_mod_p(parts):
    s, t0, _ = kapranov_collection(2, 4)
    classes = [schur_class(s, t0, tuple(sorted(x, reverse=True))) for x in parts]
    g = reduced_gram(s, t0, classes, 2)
    n = len(classes)
    assert all(g[i][j] == g[j][i] for i in range(n) for j in range(n))
