import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclok.cyclotomic import Cyclotomic
from cyclok.exceptional import (
    beilinson_collection,
    box_partitions,
    bundle_class,
    central_character,
    gl_residue,
    hirzebruch_collection,
    hook_content,
    kapranov_collection,
    line_bundle_class,
    quadric_collection,
    schur_class,
    schur_evaluate,
    spin_character_name,
    spinor_class,
    standard_collection,
    straightens_to_zero,
)
from cyclok.localization import gram_matrix, realness_check, realness_involution, space_and_t0
from cyclok.rootdata import TorusElement

Z = Cyclotomic.zeta


def ssyt(shape, k):
    """All semistandard tableaux of ``shape`` with entries 1..k, as flat lists by rows."""
    cells = [(r, c) for r, n in enumerate(shape) for c in range(n)]
    out = []

    def fill(i, t):
        if i == len(cells):
            out.append(dict(t))
            return
        r, c = cells[i]
        lo = 1
        if c > 0:
            lo = max(lo, t[(r, c - 1)])
        if r > 0:
            lo = max(lo, t[(r - 1, c)] + 1)
        for x in range(lo, k + 1):
            t[(r, c)] = x
            fill(i + 1, t)
        t.pop((r, c), None)

    fill(0, {})
    return out


def schur_by_tableaux(shape, values):
    total = Cyclotomic.rational(0)
    for t in ssyt([x for x in shape if x], len(values)):
        term = Cyclotomic.rational(1)
        for x in t.values():
            term = term * values[x - 1]
        total = total + term
    return total


def test_o1_on_projective_space():
    s, t0, classes = beilinson_collection(4)
    o1 = line_bundle_class(s, t0, 1)
    for p, v in zip(s.fixed_points, o1.values):
        i = p.key.index(1)
        assert v == Cyclotomic.root_of_unity(t0.exponents[i])
    assert all(v == 1 for v in classes[0].values)
    assert line_bundle_class(s, t0, 4).values == classes[0].values


def test_beilinson_small():
    s, t0, classes = beilinson_collection(2)
    assert [list(c.values) for c in classes] == [[1, 1], [1, -1]]
    s, t0, classes = beilinson_collection(3)
    table = [[Z(3, i * j) for j in range(3)] for i in range(3)]
    assert [list(c.values) for c in classes] == table


@pytest.mark.parametrize("n", range(2, 9))
def test_beilinson_gram(n):
    s, t0, classes = beilinson_collection(n)
    assert gram_matrix(s, t0, classes).is_identity


def test_schur_examples():
    a, b = Z(5), Z(5, 3)
    assert schur_evaluate((1,), [a, b]) == a + b
    assert schur_evaluate((1, 1), [a, b]) == a * b
    x, y = Cyclotomic.rational(1, 4), Z(4)
    h1, h2, h3 = x + y, x * x + x * y + y * y, x**3 + x * x * y + x * y * y + y**3
    assert schur_evaluate((2, 1), [x, y]) == h2 * h1 - h3


partitions = st.lists(st.integers(0, 3), min_size=1, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True)))


@given(partitions, st.integers(1, 12), st.data())
def test_schur_matches_tableau_sum(lam, m, data):
    k = data.draw(st.integers(1, 3))
    vals = [Z(m, data.draw(st.integers(0, m - 1))) for _ in range(k)]
    if len([x for x in lam if x]) > k:
        assert schur_evaluate(lam, vals) == 0
        return
    assert schur_evaluate(lam, vals) == schur_by_tableaux(lam, vals)


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 8) for k in range(1, min(n, 4))])
def test_hook_content_counts_tableaux(k, n):
    for lam in box_partitions(k, n - k):
        assert hook_content(lam, k) == len(ssyt([x for x in lam if x], k))


def test_hook_content_examples():
    assert hook_content((), 3) == 1
    assert hook_content((1,), 2) == 2
    assert hook_content((2, 1), 2) == 2


def test_kapranov_reduces_to_beilinson():
    s, t0, classes = kapranov_collection(1, 4)
    _, _, lines = beilinson_collection(4)
    assert [c.values for c in classes] == [c.values for c in lines]


def test_kapranov_g24():
    s, t0, classes = kapranov_collection(2, 4)
    assert [c.rank for c in classes] == [1, 2, 1, 3, 2, 1]
    assert gram_matrix(s, t0, classes).is_identity


@pytest.mark.parametrize("k,n", [(2, 5), (3, 6)])
def test_kapranov_gram(k, n):
    s, t0, classes = kapranov_collection(k, n)
    assert gram_matrix(s, t0, classes).is_identity


@pytest.mark.parametrize("lam", [(3,), (3, 0), (4, 0), (5, 1)])
def test_straightening(lam):
    s, t0 = space_and_t0("grassmannian:2:4")
    if straightens_to_zero(lam, 4):
        assert all(v.is_zero() for v in schur_class(s, t0, lam).values)


def test_straightening_criterion():
    # lambda_i - i == lambda_j - j mod n
    assert straightens_to_zero((3, 0), 4)
    assert not straightens_to_zero((2, 1), 4)


def test_quadric_collections():
    s, t0, c4 = quadric_collection(4)
    assert [c.label for c in c4] == ["O(0)", "spinor+", "spinor-", "O(1)", "O(2)", "O(3)"]
    assert [c.rank for c in c4 if c.label.startswith("spinor")] == [2, 2]
    s3, t3, c3 = quadric_collection(3)
    assert [c.label for c in c3] == ["O(0)", "spinor", "O(1)", "O(2)"]
    assert c3[1].rank == 2


@pytest.mark.parametrize("d", [3, 4, 5, 6, 7, 8])
def test_quadric_gram_and_spinor_rank(d):
    s, t0, classes = quadric_collection(d)
    assert gram_matrix(s, t0, classes).is_identity
    k = (d + 2) // 2 if d % 2 == 0 else (d + 1) // 2
    expected = 2 ** (k - 2) if d % 2 == 0 else 2 ** (k - 1)
    assert all(c.rank == expected for c in classes if c.label.startswith("spinor"))


def test_q4_and_g24_agree():
    s, t0, q = quadric_collection(4)
    g, gt, k = kapranov_collection(2, 4)
    assert gram_matrix(s, t0, q).is_identity and gram_matrix(g, gt, k).is_identity


@pytest.mark.parametrize("n", [0, 2, 4, 6])
def test_hirzebruch(n):
    s, t0, classes = hirzebruch_collection(n)
    assert len(classes) == 4 and gram_matrix(s, t0, classes).is_identity


def test_f0_matches_product():
    # at (eps1, eps2, eps_u) -> (0, 1/2, 1/2) both rulings of F_0 carry the P^1 element (1, -1)
    s, _, _ = hirzebruch_collection(0)
    t = TorusElement((F(0), F(1, 2), F(1, 2)))
    mine = [line_bundle_class(s, t, tw) for tw in ((0, 0), (1, 0), (0, 1), (1, 1))]
    assert gram_matrix(s, t, mine).is_identity
    p, pt = space_and_t0("prod(projective:2;projective:2)")
    theirs = standard_collection(p, pt)
    assert gram_matrix(p, pt, theirs).is_identity
    profile = lambda cs: sorted(tuple(sorted(x.to_rational() for x in c.values)) for c in cs)  # noqa: E731
    assert profile(mine) == profile(theirs)


def test_central_characters():
    s, t0, classes = beilinson_collection(5)
    assert gl_residue(s, line_bundle_class(s, t0, 1)) == 1
    g, gt = space_and_t0("grassmannian:2:4")
    assert gl_residue(g, schur_class(g, gt, (2, 1))) == 3
    q, qt, qc = quadric_collection(4)
    assert spin_character_name(q, qc[1]) == "chi+"
    assert spin_character_name(q, qc[2]) == "chi-"


def test_central_multiplicativity():
    g, gt = space_and_t0("grassmannian:2:5")
    a, b = line_bundle_class(g, gt, 1), line_bundle_class(g, gt, 2)
    ab = line_bundle_class(g, gt, 3)
    assert central_character(g, a) * central_character(g, b) == central_character(g, ab)
    p, pt = space_and_t0("prod(projective:2;projective:3)")
    x = bundle_class(p, pt, "prod(O(1);O(2))")
    assert x.central == (F(1, 2), F(2, 3))


def test_spinor_twist_is_surfaced():
    s, t0 = space_and_t0("quadric-even:6")
    assert spinor_class(s, t0, 1).twist == 0


@pytest.mark.parametrize("desc", ["projective:5", "grassmannian:2:5", "quadric-even:4", "quadric-odd:5", "hirzebruch:2",
                                  "prod(projective:2;projective:4)"])
def test_realness_of_standard_collections(desc):
    s, t0 = space_and_t0(desc)
    inv = realness_involution(s, t0)
    for c in standard_collection(s, t0):
        assert realness_check(inv, c)
        assert not realness_check(inv, c.scaled(Z(4) if t0.order <= 2 else Z(t0.order)))


def test_bundle_descriptor_parsing():
    s, t0 = space_and_t0("grassmannian:2:4")
    assert bundle_class(s, t0, "schur[2,1]").rank == 2
    assert bundle_class(s, t0, "O(1)").rank == 1
    q, qt = space_and_t0("quadric-even:4")
    assert bundle_class(q, qt, "spinor-").rank == 2
