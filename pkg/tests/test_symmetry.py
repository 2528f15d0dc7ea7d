import itertools
import math

import pytest
from hypothesis import given, settings

from freelat.construct import make_ab, make_m, make_primed, make_s
from freelat.engine import Engine
from freelat.oracle import eval_in_lattice, make_Mn
from freelat.symmetry import is_nu, is_symmetric, selfdual_closed, sym_generators, sym_join, sym_meet
from freelat.terms import Permutation, TermStore, dual, tno
from helpers import build, shapes


def orbit_group_size(gens, n):
    """Size of the group generated by ``gens``, by closure."""
    seen = {tuple(range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g.images[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generators_generate_sym_n(n):
    assert orbit_group_size(sym_generators(n), n) == math.factorial(n)


def test_sym_join_of_generator_lists_images_in_order():
    store = TermStore(3)
    x0, x1, x2 = store.gens
    # x0 -> x_sigma(0) for sigma = 012, 021, 102, 120, 201, 210
    expected = [x0, x0, x1, x1, x2, x2]
    t = sym_join(x0)
    assert list(t.children) == expected
    assert tno(t) == 6
    assert list(sym_meet(x0).children) == expected


def test_sym_join_refuses_large_n():
    with pytest.raises(ValueError):
        sym_join(TermStore(7).gens[0])


@settings(max_examples=40, deadline=None)
@given(shapes(3, max_leaves=6))
def test_symmetrizers(shape):
    store = TermStore(3)
    t = build(store, shape)
    e = Engine(store)
    j, m = sym_join(t), sym_meet(t)
    assert tno(j) == 6 * tno(t) == tno(m)
    assert is_symmetric(e, j) and is_symmetric(e, m)
    assert e.leq(t, j) and e.leq(m, t)
    assert e.semantic_eq(dual(j), sym_meet(dual(t)))


@settings(max_examples=20, deadline=None)
@given(shapes(3, max_leaves=6))
def test_generator_test_matches_exhaustive(shape):
    store = TermStore(3)
    t = build(store, shape)
    e = Engine(store)
    assert is_symmetric(e, t) == is_symmetric(e, t, exhaustive=True)


@pytest.mark.parametrize("n", [3, 4])
def test_constructed_terms_are_symmetric(n):
    store = TermStore(n)
    e = Engine(store)
    for j in range(5):
        assert is_symmetric(e, make_m(store, j))
    a, b = make_ab(store)
    for t in (a, b, dual(a), dual(b)):
        assert is_symmetric(e, t)
    assert not is_symmetric(e, store.gens[0])


def test_symmetry_closed_under_join_and_meet():
    store = TermStore(3)
    e = Engine(store)
    syms = [make_s(store), dual(make_s(store)), make_m(store, 1), dual(make_m(store, 2))]
    for u, v in itertools.product(syms, repeat=2):
        assert is_symmetric(e, u | v) and is_symmetric(e, u & v)


def test_nu_examples():
    store = TermStore(3)
    assert is_nu(make_s(store))
    assert not is_nu(store.gens[0])
    for j in range(1, 5):
        assert is_nu(make_m(store, j))
    a, b = make_ab(store)
    assert is_nu(a) and is_nu(b)


def test_extremes_are_symmetric_but_not_nu():
    store = TermStore(3)
    e = Engine(store)
    top = store.join(*store.gens)
    assert is_symmetric(e, top) and not is_nu(top)


def test_symmetric_above_a_generator_is_top():
    store = TermStore(3)
    e = Engine(store)
    top = store.join(*store.gens)
    cands = [make_m(store, j) for j in range(4)] + [dual(make_m(store, j)) for j in range(4)]
    cands += [make_s(store), dual(make_s(store)), top, sym_join(store.gens[0] & store.gens[1])]
    cands += list(make_ab(store))
    hits = 0
    for u in cands:
        assert is_symmetric(e, u)
        if any(e.leq(x, u) for x in store.gens):
            hits += 1
            assert e.semantic_eq(u, top)
    assert hits >= 1


def test_selfdual_closed():
    store = TermStore(3)
    e = Engine(store)
    a, b = make_ab(store)
    assert selfdual_closed(e, [a, dual(a), b, dual(b)])
    assert selfdual_closed(e, [store.gens[0]])
    m1 = make_m(store, 1)
    assert not selfdual_closed(e, [m1])
    M3 = make_Mn(3)
    atoms = M3.atoms()
    assert (eval_in_lattice(M3, m1, atoms), eval_in_lattice(M3, dual(m1), atoms)) == (M3.bottom, M3.top)


def test_primed_terms_are_symmetric():
    store = TermStore(3)
    e = Engine(store)
    for t in make_primed(store):
        assert is_symmetric(e, t)
        assert is_symmetric(e, dual(t))


def test_permutation_all_order_is_lexicographic():
    perms = [p.images for p in Permutation.all(3)]
    assert perms == sorted(perms) and len(set(perms)) == 6
