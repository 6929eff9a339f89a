from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclok.cyclotomic import Cyclotomic
from cyclok.localization import build_space, verify_star_direct
from cyclok.rootdata import (
    E6_SOLUTION,
    E7_SOLUTIONS,
    MalformedSolution,
    OddHirzebruchIndex,
    SpinWeightWithoutSpinCoordinate,
    TorusElement,
    UnsupportedFamily,
    UnsupportedType,
    bounded_star_search,
    build_root_system,
    check_star_conditions,
    construct_t0,
    dot,
    e_series_t0,
    evaluate_character,
    n_index,
    parity_obstruction,
    quadric_w1,
    symplectic_w1,
    verify_e_series_solution,
    w0_relation,
    weyl_relation_check,
)


@pytest.mark.parametrize(
    "kind,rank,count",
    [("A", 2, 6), ("D", 4, 24), ("E6", 6, 72), ("E7", 7, 126), ("E8", 8, 240), ("F4", 4, 48), ("G2", 2, 12),
     ("B", 3, 18), ("C", 4, 32), ("A", 5, 30)],
)
def test_root_counts(kind, rank, count):
    rs = build_root_system(kind, rank)
    assert len(rs.roots) == count
    assert len(rs.positive_roots) == count // 2


def test_unsupported_type():
    with pytest.raises(UnsupportedType):
        build_root_system("H3", 3)
    with pytest.raises(UnsupportedType):
        build_root_system("E6", 5)


def test_evaluate_character_examples():
    t = TorusElement((F(0), F(1, 2)))
    assert evaluate_character(t, (F(0), F(1))) == -1
    assert evaluate_character(t, (F(0), F(0))) == 1
    b2 = TorusElement.from_exponents([F(1, 4), F(2, 4)], F(3, 8))
    assert evaluate_character(b2, (F(1, 2), F(1, 2))) == Cyclotomic.zeta(8, 3)


def test_spin_weight_needs_spin_coordinate():
    with pytest.raises(SpinWeightWithoutSpinCoordinate):
        TorusElement((F(0), F(1, 2))).evaluate((F(1, 2), F(1, 2)))


def closed_form_n(kind, n, i):
    if kind == "A":
        return n + 1
    if kind == "B":
        return 2 * n - i if i < n else 2 * n
    if kind == "C":
        return 2 * n - i + 1
    if kind == "D":
        return 2 * n - i - 1 if i < n - 1 else 2 * n - 2


@pytest.mark.parametrize(
    "kind,n",
    [("A", n) for n in range(1, 8)] + [("B", n) for n in range(2, 7)] + [("C", n) for n in range(2, 7)]
    + [("D", n) for n in range(4, 8)],
)
def test_n_index_closed_forms(kind, n):
    rs = build_root_system(kind, n)
    for i in range(1, n + 1):
        assert n_index(rs, i) == closed_form_n(kind, n, i)


def test_n_index_quoted_values():
    assert n_index(build_root_system("A", 4), 2) == 5
    assert n_index(build_root_system("E6"), 1) == 12
    assert n_index(build_root_system("E7"), 7) == 18
    f4 = build_root_system("F4")
    assert n_index(f4, 2) == 5 and n_index(f4, 3) == 7


@pytest.mark.parametrize("kind,rank", [("A", 4), ("B", 4), ("C", 4), ("D", 5), ("G2", 2), ("F4", 4), ("E6", 6), ("E7", 7)])
def test_tangent_weight_sum_at_base_point(kind, rank):
    rs = build_root_system(kind, rank)
    for i in range(1, rs.rank + 1):
        om = rs.fundamental_weights[i - 1]
        tangent = [tuple(-x for x in b) for b in rs.roots if dot(b, om) > 0]
        total = tuple(sum(c) for c in zip(*tangent))
        assert total == tuple(-n_index(rs, i) * x for x in om)
        assert len(tangent) == rs.flag_dimension(i)


def test_star_examples():
    a1 = build_root_system("A", 1)
    assert check_star_conditions(a1, 1, TorusElement((F(0), F(1, 2)))).passed
    b2 = build_root_system("B", 2)
    assert check_star_conditions(b2, 2, construct_t0("B:2:2")).passed


def test_star_fails_at_identity():
    rep = check_star_conditions(build_root_system("A", 1), 1, TorusElement((F(0), F(0))))
    assert not rep.passed and rep.failed_roots


def test_g2_bounded_search_is_empty():
    rep = bounded_star_search(build_root_system("G2"), 1, 24)
    assert rep.complete and rep.found == []


def test_bounded_search_finds_projective_elements():
    rep = bounded_star_search(build_root_system("A", 2), 1, 6)
    assert rep.found


def test_construct_t0_examples():
    assert construct_t0("projective:4").exponents == (0, F(1, 4), F(1, 2), F(3, 4))
    b2 = construct_t0("B:2:2")
    assert b2.exponents == (F(1, 4), F(1, 2)) and b2.spin_blocks
    assert construct_t0("hirzebruch:2").exponents == (F(1, 4), F(3, 4), 0)
    d5 = construct_t0("D:5:1")
    assert d5.exponents == tuple(F(5 - k, 8) % 1 for k in range(1, 6))


def test_construct_t0_errors():
    with pytest.raises(UnsupportedFamily):
        construct_t0("B:4:2")
    with pytest.raises(OddHirzebruchIndex):
        construct_t0("hirzebruch:3")


def test_parity_examples():
    assert parity_obstruction(build_root_system("G2"), 1) is not None
    assert parity_obstruction(build_root_system("F4"), 1) is not None
    assert parity_obstruction(build_root_system("A", 3), 1) is None


@pytest.mark.parametrize("kind,node", [("G2", 2), ("F4", 1), ("F4", 4)])
def test_parity_implies_empty_search(kind, node):
    rs = build_root_system(kind)
    assert parity_obstruction(rs, node) is not None
    rep = bounded_star_search(rs, node, 24)
    assert rep.found == []


def test_e_series_examples():
    assert verify_e_series_solution("E6", E6_SOLUTION).passed
    for sol in E7_SOLUTIONS:
        assert verify_e_series_solution("E7", sol).passed
    bad = verify_e_series_solution("E6", (0, 1, 2, 3, 4, 0))
    assert not bad.passed and bad.violated
    with pytest.raises(MalformedSolution):
        verify_e_series_solution("E6", (0, 1, 2))


@given(st.lists(st.integers(0, 11), min_size=5, max_size=5), st.integers(0, 11))
def test_e6_clauses_agree_with_star(a, c):
    sol = tuple(a) + (c,)
    rep = verify_e_series_solution("E6", sol, w0_relations=False)
    if "root pairings integral" in rep.violated:
        return
    t0 = e_series_t0("E6", sol)
    assert rep.passed == check_star_conditions(build_root_system("E6"), 1, t0).passed


@given(st.lists(st.integers(0, 17), min_size=6, max_size=6), st.integers(0, 17))
def test_e7_clauses_agree_with_star(a, c):
    sol = tuple(a) + (c,)
    rep = verify_e_series_solution("E7", sol, w0_relations=False)
    if "root pairings integral" in rep.violated:
        return
    t0 = e_series_t0("E7", sol)
    assert rep.passed == check_star_conditions(build_root_system("E7"), 7, t0).passed


def _perturbations():
    out = []
    for kind, sols in (("E6", [E6_SOLUTION]), ("E7", E7_SOLUTIONS)):
        for sol in sols:
            out.append((kind, tuple(sol)))
            for i in range(len(sol)):
                for d in (1, -1, 6):
                    p = list(sol)
                    p[i] += d
                    out.append((kind, tuple(p)))
    return out


@pytest.mark.parametrize("kind,sol", _perturbations())
def test_e_series_clauses_agree_with_star_near_solutions(kind, sol):
    rep = verify_e_series_solution(kind, sol, w0_relations=False)
    node = 1 if kind == "E6" else 7
    assert rep.passed == check_star_conditions(build_root_system(kind), node, e_series_t0(kind, sol)).passed


def test_weyl_relation_examples():
    assert weyl_relation_check(quadric_w1(3), construct_t0("quadric-even:4"))
    assert weyl_relation_check(symplectic_w1(3), construct_t0("sg:3"))
    assert weyl_relation_check(w0_relation("D", 4), construct_t0("D:4:1"))


SPACES = [("A", 2, 1), ("A", 3, 2), ("C", 2, 1), ("C", 3, 3), ("G2", 2, 1), ("B", 2, 1), ("B", 3, 3), ("D", 4, 1)]


@given(st.sampled_from(SPACES), st.integers(2, 12), st.data())
def test_two_star_formulations_agree(case, order, data):
    kind, rank, node = case
    rs = build_root_system(kind, rank)
    exps = data.draw(st.lists(st.integers(0, order - 1), min_size=rs.ambient, max_size=rs.ambient))
    exps = [F(e, order) for e in exps]
    t0 = TorusElement.with_square_root(exps) if kind in ("B", "D") else TorusElement(tuple(exps))
    space = build_space(f"{kind}:{rank}:{node}")
    assert check_star_conditions(rs, node, t0).passed == verify_star_direct(space, t0).passed
