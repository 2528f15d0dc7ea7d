"""Shared test machinery: random terms, a naive decision procedure, closure lattices."""
import random

from hypothesis import strategies as st

from freelat.oracle import from_tables
from freelat.terms import Kind


def build(store, shape):
    """Materialize a nested-tuple shape: an int is a variable, ("|"|"&", kids...) a node."""
    if isinstance(shape, int):
        return store.gens[shape % store.n]
    op, *kids = shape
    return store.make(Kind.JOIN if op == "|" else Kind.MEET, [build(store, k) for k in kids])


def shapes(n=3, max_leaves=12):
    leaf = st.integers(0, n - 1)
    return st.recursive(
        leaf,
        lambda kids: st.tuples(st.sampled_from("|&"), kids, kids)
        | st.tuples(st.sampled_from("|&"), kids, kids, kids),
        max_leaves=max_leaves,
    )


def random_shape(rng: random.Random, n: int, depth: int, p_leaf=0.25):
    if depth == 0 or rng.random() < p_leaf:
        return rng.randrange(n)
    k = 2 if rng.random() < 0.75 else 3
    return (rng.choice("|&"),) + tuple(random_shape(rng, n, depth - 1, p_leaf) for _ in range(k))


def random_term(store, rng, depth):
    return build(store, random_shape(rng, store.n, depth))


def naive_leq(u, v):
    """Whitman's rules by plain recursion: no memo, no shortcuts."""
    if u.kind is Kind.VAR and v.kind is Kind.VAR:
        return u.var == v.var
    if u.kind is Kind.JOIN:
        return all(naive_leq(c, v) for c in u.children)
    if v.kind is Kind.MEET:
        return all(naive_leq(u, c) for c in v.children)
    if u.kind is Kind.VAR:
        return any(naive_leq(u, c) for c in v.children)
    if v.kind is Kind.VAR:
        return any(naive_leq(c, v) for c in u.children)
    return any(naive_leq(c, v) for c in u.children) or any(naive_leq(u, c) for c in v.children)


def all_binary_terms(store, depth):
    """Every binary term over the store's generators with nesting depth <= depth."""
    level = list(store.gens)
    for _ in range(depth):
        new = list(level)
        for a in level:
            for b in level:
                new.append(store.join(a, b))
                new.append(store.meet(a, b))
        level = list(dict.fromkeys(new))
    return level


def closure_lattice(family):
    """Lattice of a Moore family of bitmask sets: meet is intersection, join the closure of union."""
    fam = sorted(set(family))
    full = max(fam)
    index = {A: i for i, A in enumerate(fam)}

    def closure(s):
        r = full
        for A in fam:
            if A & s == s:
                r &= A
        return r

    join = [[index[closure(A | B)] for B in fam] for A in fam]
    meet = [[index[A & B] for B in fam] for A in fam]
    return from_tables(join, meet), index
