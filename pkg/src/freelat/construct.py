"""Literal builders for the named symmetric terms.

All joins and meets are built exactly as written, with index pairs
``i1 < i2`` in lexicographic order and no simplification, so leaf counts
are reproducible.  Shared subterms come for free from hash-consing.

    p(i, 0) = x_i
    p(i, j) = x_i | OR_{i1<i2, both != i} (p(i1, j-1) & p(i2, j-1))
    m(j)    = OR_{i1<i2} (p(i1, j) & p(i2, j))
    s       = OR_i AND_{i' != i} x_i'
    a = m(1) | dual(m(3)),   b = m(2) | dual(m(4))
"""
from __future__ import annotations

from itertools import combinations

from .symmetry import sym_join, sym_meet
from .terms import Term, TermStore, dual


def _check_store(store: TermStore) -> None:
    if store.n < 3:
        raise ValueError(f"constructions need n >= 3, got n={store.n}")


def p_levels(store: TermStore, j: int) -> list[list[Term]]:
    """``levels[k][i]`` is p(i, k) for every k <= j."""
    _check_store(store)
    if j < 0:
        raise ValueError(f"depth index must be >= 0, got {j}")
    n = store.n
    levels = [list(store.gens)]
    for _ in range(j):
        prev = levels[-1]
        row = []
        for i in range(n):
            others = [k for k in range(n) if k != i]
            meets = [store.meet(prev[i1], prev[i2]) for i1, i2 in combinations(others, 2)]
            row.append(store.join(store.gens[i], *meets))
        levels.append(row)
    return levels


def make_p(store: TermStore, i: int, j: int) -> Term:
    if not 0 <= i < store.n:
        raise ValueError(f"generator index {i} out of range for n={store.n}")
    return p_levels(store, j)[j][i]


def make_m(store: TermStore, j: int) -> Term:
    ps = p_levels(store, j)[j]
    return store.join(*(store.meet(ps[i1], ps[i2]) for i1, i2 in combinations(range(store.n), 2)))


def make_s(store: TermStore) -> Term:
    _check_store(store)
    n = store.n
    return store.join(*(store.meet(*(store.gens[k] for k in range(n) if k != i)) for i in range(n)))


def _ab_from(store: TermStore, j1: int, j2: int, j3: int, j4: int) -> tuple[Term, Term]:
    m = {j: make_m(store, j) for j in (j1, j2, j3, j4)}
    a = store.join(m[j1], dual(m[j3]))
    b = store.join(m[j2], dual(m[j4]))
    return a, b


def make_ab(store: TermStore) -> tuple[Term, Term]:
    """The pair (a, b); with their duals and x0 they generate freely."""
    _check_store(store)
    return _ab_from(store, 1, 2, 3, 4)


def make_ab_variant(store: TermStore) -> tuple[Term, Term]:
    """(a, b) rebuilt from m5, m7, m8, m9 in place of m1, m2, m3, m4.  Only for n = 3."""
    if store.n != 3:
        raise ValueError(f"the m5/m7/m8/m9 variant is defined for n=3 only, got n={store.n}")
    return _ab_from(store, 5, 7, 8, 9)


def make_primed(store: TermStore) -> tuple[Term, Term, Term]:
    """The triple (a0, a', b') over x, y, z = x0, x1, x2."""
    if store.n != 3:
        raise ValueError(f"the primed family is defined for n=3 only, got n={store.n}")
    x, y, z = store.gens
    a0 = sym_join(((((x | y) & z) | y)) & (((y | x) & z) | x))
    aprime = sym_meet((((a0 & x) | y) & z) | (((z & x) | y) & a0))
    bprime = sym_meet(((((x | y) & (x | z)) | aprime) & x) | (((x & a0) | y) & z))
    return a0, aprime, bprime
