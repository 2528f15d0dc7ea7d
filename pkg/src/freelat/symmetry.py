"""Automorphism actions on terms and symmetry predicates."""
from __future__ import annotations

from typing import Iterable

from .engine import Engine
from .terms import Permutation, Term, TermStore, apply_perm, dual, substitute

MAX_SYM_N = 6


def sym_generators(n: int) -> tuple[Permutation, Permutation]:
    """The transposition (0 1) and the n-cycle (0 1 ... n-1); together they generate Sym(n)."""
    return Permutation.from_cycles([(0, 1)], n), Permutation.from_cycles([tuple(range(n))], n)


def _images(t: Term) -> list[Term]:
    n = t.store.n
    if n > MAX_SYM_N:
        raise ValueError(f"symmetrizing over Sym({n}) is refused (n > {MAX_SYM_N})")
    return [apply_perm(sigma, t) for sigma in Permutation.all(n)]


def sym_join(t: Term) -> Term:
    """Join of every automorphic image of ``t``, permutations in lexicographic order.

    Repeated images are kept, so the leaf count is exactly n! * tno(t).
    """
    return t.store.join(*_images(t))


def sym_meet(t: Term) -> Term:
    return t.store.meet(*_images(t))


def is_symmetric(engine: Engine, t: Term, exhaustive: bool = False) -> bool:
    """Whether every automorphism fixes ``t`` as a free-lattice element.

    By default only the two generators of Sym(n) are tried, which suffices.
    ``exhaustive=True`` tries all n! permutations instead.
    """
    n = t.store.n
    perms = Permutation.all(n) if exhaustive else sym_generators(n)
    return all(engine.semantic_eq(t, apply_perm(g, t)) for g in perms)


def is_nu(t: Term, backend: str | None = None) -> bool:
    """Near-unanimity test: t(x,..,y,..,x) = x for y in every single position."""
    two = TermStore(2)
    x, y = two.gens
    e = Engine(two, backend)
    n = t.store.n
    for k in range(n):
        mapping = {i: (y if i == k else x) for i in range(n)}
        if not e.semantic_eq(substitute(t, mapping, two), x):
            return False
    return True


def selfdual_closed(engine: Engine, ts: Iterable[Term]) -> bool:
    """Whether the dual of each member equals some member."""
    ts = list(ts)
    return all(any(engine.semantic_eq(dual(t), u) for u in ts) for t in ts)
