from itertools import combinations

import pytest

from freelat.construct import make_ab, make_ab_variant, make_m, make_p, make_primed, make_s, p_levels
from freelat.engine import Engine
from freelat.terms import Permutation, TermStore, apply_perm, dual, format_term, tno


def leaves_p(n, j):
    """Leaf count of p(i, j) straight from the recurrence."""
    if j == 0:
        return 1
    return 1 + len(list(combinations(range(n - 1), 2))) * 2 * leaves_p(n, j - 1)


def leaves_m(n, j):
    return len(list(combinations(range(n), 2))) * 2 * leaves_p(n, j)


@pytest.fixture(scope="module")
def st3():
    return TermStore(3)


@pytest.fixture(scope="module")
def e3(st3):
    return Engine(st3)


@pytest.fixture(scope="module")
def st4():
    return TermStore(4)


@pytest.fixture(scope="module")
def e4(st4):
    return Engine(st4)


def test_p_examples(st3):
    assert make_p(st3, 0, 0) is st3.gens[0]
    p01 = make_p(st3, 0, 1)
    assert format_term(p01) == "x0 | (x1 & x2)"
    assert tno(p01) == 3


@pytest.mark.parametrize("j", range(10))
def test_p_leaf_counts_at_n3(st3, j):
    assert leaves_p(3, j) == 2 ** (j + 1) - 1
    for i in range(3):
        assert tno(make_p(st3, i, j)) == 2 ** (j + 1) - 1


def test_p_at_n4_shape(st4):
    p = make_p(st4, 1, 1)
    assert format_term(p) == "x1 | (x0 & x2) | (x0 & x3) | (x2 & x3)"
    assert tno(make_p(st4, 2, 3)) == leaves_p(4, 3)


def test_m_examples(st3, e3):
    m0 = make_m(st3, 0)
    assert format_term(m0) == "(x0 & x1) | (x0 & x2) | (x1 & x2)"
    assert tno(m0) == 6
    assert tno(make_m(st3, 1)) == 18
    assert e3.semantic_eq(m0, make_s(st3))
    for j in range(10):
        assert tno(make_m(st3, j)) == leaves_m(3, j) == 6 * (2 ** (j + 1) - 1)


def test_s_shape(st3):
    assert format_term(make_s(st3)) == "(x1 & x2) | (x0 & x2) | (x0 & x1)"


def test_s_below_m(st3, e3, st4, e4):
    for store, e in ((st3, e3), (st4, e4)):
        s = make_s(store)
        for j in range(5):
            assert e.leq(s, make_m(store, j))


def test_m0_not_below_its_dual_at_n4(st4, e4):
    m0 = make_m(st4, 0)
    assert not e4.leq(m0, dual(m0))


def test_ab_leaf_counts(st3):
    a, b = make_ab(st3)
    assert tno(a) == 108
    assert tno(b) == 228
    assert tno(a) + tno(dual(a)) + tno(b) + tno(dual(b)) == 672


def test_ab_structure(st3):
    a, b = make_ab(st3)
    assert a is st3.join(make_m(st3, 1), dual(make_m(st3, 3)))
    assert b is st3.join(make_m(st3, 2), dual(make_m(st3, 4)))


def test_variant(st3):
    av, bv = make_ab_variant(st3)
    assert tno(av) == leaves_m(3, 5) + leaves_m(3, 8) == 3444
    assert av is st3.join(make_m(st3, 5), dual(make_m(st3, 8)))
    assert bv is st3.join(make_m(st3, 7), dual(make_m(st3, 9)))


def test_primed_leaf_counts(st3):
    a0, ap, bp = make_primed(st3)
    assert tno(a0) == 6 * 8 == 48
    assert tno(ap) == 612
    assert tno(bp) == 4008
    assert 2 * tno(ap) + 2 * tno(bp) == 9240


def test_dag_sharing_keeps_store_small():
    store = TermStore(3)
    p9 = make_p(store, 0, 9)
    assert tno(p9) == 1023
    assert len(store.reachable(p9)) < 60


@pytest.mark.parametrize(
    "call",
    [
        lambda: make_p(TermStore(2), 0, 1),
        lambda: make_p(TermStore(3), 3, 1),
        lambda: make_p(TermStore(3), 0, -1),
        lambda: make_s(TermStore(2)),
        lambda: make_ab(TermStore(2)),
        lambda: make_ab_variant(TermStore(4)),
        lambda: make_primed(TermStore(4)),
    ],
)
def test_invalid_params(call):
    with pytest.raises(ValueError):
        call()


@pytest.mark.parametrize("n", [3, 4])
def test_strict_chains(n):
    store = TermStore(n)
    e = Engine(store)
    ms = [make_m(store, j) for j in range(7)]
    for j in range(6):
        assert e.lt(ms[j], ms[j + 1])
        assert e.lt(dual(ms[j + 1]), dual(ms[j]))
    levels = p_levels(store, 6)
    for j in range(6):
        for i in range(n):
            assert e.lt(levels[j][i], levels[j + 1][i])


@pytest.mark.parametrize("n", [3, 4])
def test_incomparabilities(n):
    store = TermStore(n)
    e = Engine(store)
    ms = {j: make_m(store, j) for j in range(1, 5)}
    for i in range(1, 5):
        for j in range(1, 5):
            assert not e.leq(ms[i], dual(ms[j]))
            assert not e.leq(dual(ms[j]), ms[i])


def test_n3_special_cases(st3, e3):
    m1 = make_m(st3, 1)
    assert e3.semantic_eq(make_m(st3, 0), make_s(st3))
    assert not e3.leq(m1, dual(m1))


@pytest.mark.parametrize("n", [3, 4])
def test_p_terms_with_different_index_are_incomparable(n):
    store = TermStore(n)
    e = Engine(store)
    levels = p_levels(store, 3)
    for i in range(n):
        for i2 in range(n):
            if i == i2:
                continue
            for j in range(4):
                for j2 in range(4):
                    assert not e.comparable(levels[j][i], levels[j2][i2])


def test_permutation_moves_p_index(st3, e3):
    sigma = Permutation((2, 0, 1))
    for j in range(5):
        for i in range(3):
            moved = apply_perm(sigma, make_p(st3, i, j))
            assert e3.semantic_eq(moved, make_p(st3, sigma(i), j))
