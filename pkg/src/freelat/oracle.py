"""Finite lattices as a refutation oracle.

Evaluating two terms in a finite lattice can only ever refute ``u <= v``
in the free lattice, never confirm it.  The tables here are checked
exhaustively when a lattice is built, so keep them small.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .terms import Kind, Term


class LatticeTableError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteLattice:
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    bottom: int
    top: int

    def __len__(self) -> int:
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return self.join[a][b] == b

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def atoms(self) -> list[int]:
        return [
            a for a in range(len(self))
            if a != self.bottom
            and not any(c not in (self.bottom, a) and self.leq(c, a) for c in range(len(self)))
        ]

    def join_all(self, xs: Sequence[int]) -> int:
        r = self.bottom
        for x in xs:
            r = self.join[r][x]
        return r

    def meet_all(self, xs: Sequence[int]) -> int:
        r = self.top
        for x in xs:
            r = self.meet[r][x]
        return r


def from_tables(join, meet, labels: Sequence[str] | None = None) -> FiniteLattice:
    """Validate join/meet tables and wrap them; raises LatticeTableError."""
    k = len(join)
    if k == 0:
        raise LatticeTableError("empty lattice")
    join = tuple(tuple(int(c) for c in row) for row in join)
    meet = tuple(tuple(int(c) for c in row) for row in meet)
    if len(meet) != k or any(len(r) != k for r in join + meet):
        raise LatticeTableError(f"tables must both be {k}x{k}")
    if any(not 0 <= c < k for r in join + meet for c in r):
        raise LatticeTableError("table entry out of range")
    R = range(k)
    for a, b in product(R, R):
        if join[a][b] != join[b][a] or meet[a][b] != meet[b][a]:
            raise LatticeTableError(f"not commutative at ({a}, {b})")
        if join[a][meet[a][b]] != a or meet[a][join[a][b]] != a:
            raise LatticeTableError(f"absorption fails at ({a}, {b})")
        if (join[a][b] == b) != (meet[a][b] == a):
            raise LatticeTableError(f"join order and meet order disagree at ({a}, {b})")
    for a in R:
        if join[a][a] != a or meet[a][a] != a:
            raise LatticeTableError(f"not idempotent at {a}")
    for a, b, c in product(R, R, R):
        if join[join[a][b]][c] != join[a][join[b][c]]:
            raise LatticeTableError(f"join not associative at ({a}, {b}, {c})")
        if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
            raise LatticeTableError(f"meet not associative at ({a}, {b}, {c})")
    bottoms = [a for a in R if all(join[a][b] == b for b in R)]
    tops = [a for a in R if all(join[a][b] == a for b in R)]
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in R)
    if len(labels) != k:
        raise LatticeTableError("wrong number of labels")
    return FiniteLattice(join, meet, labels, bottoms[0], tops[0])


def from_order(k: int, leq, labels: Sequence[str] | None = None) -> FiniteLattice:
    """Build tables from an order predicate ``leq(a, b)`` on range(k)."""
    R = range(k)

    def lub(a, b):
        ups = [c for c in R if leq(a, c) and leq(b, c)]
        best = [c for c in ups if all(leq(c, d) for d in ups)]
        if len(best) != 1:
            raise LatticeTableError(f"no least upper bound for ({a}, {b})")
        return best[0]

    def glb(a, b):
        downs = [c for c in R if leq(c, a) and leq(c, b)]
        best = [c for c in downs if all(leq(d, c) for d in downs)]
        if len(best) != 1:
            raise LatticeTableError(f"no greatest lower bound for ({a}, {b})")
        return best[0]

    join = [[lub(a, b) for b in R] for a in R]
    meet = [[glb(a, b) for b in R] for a in R]
    return from_tables(join, meet, labels)


def make_Mn(n: int) -> FiniteLattice:
    """Bottom 0, atoms a0..a(n-1) at indices 1..n, top 1 at index n+1."""
    if n < 1:
        raise ValueError(f"M_n needs n >= 1, got {n}")
    top = n + 1

    def leq(a, b):
        return a == b or a == 0 or b == top

    return from_order(n + 2, leq, ["0"] + [f"a{i}" for i in range(n)] + ["1"])


def make_two() -> FiniteLattice:
    return from_tables([[0, 1], [1, 1]], [[0, 0], [0, 1]], ["0", "1"])


def make_N5() -> FiniteLattice:
    """The pentagon 0 < a < b < 1 with c incomparable to a and b."""
    below = {(1, 2)}  # a < b

    def leq(x, y):
        return x == y or x == 0 or y == 4 or (x, y) in below

    return from_order(5, leq, ["0", "a", "b", "c", "1"])


def loads(text: str) -> FiniteLattice:
    """Parse ``k``, then k join rows, then k meet rows of integers."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 1:
        raise LatticeTableError("first line must hold the element count")
    try:
        k = int(rows[0][0])
        nums = [[int(c) for c in r] for r in rows[1:]]
    except ValueError as exc:
        raise LatticeTableError(str(exc)) from None
    if len(nums) != 2 * k:
        raise LatticeTableError(f"expected {2 * k} table rows, found {len(nums)}")
    return from_tables(nums[:k], nums[k:])


def dumps(L: FiniteLattice) -> str:
    lines = [str(len(L))]
    lines += [" ".join(map(str, r)) for r in L.join]
    lines += [" ".join(map(str, r)) for r in L.meet]
    return "\n".join(lines) + "\n"


def load(path) -> FiniteLattice:
    with open(path) as fh:
        return loads(fh.read())


def eval_in_lattice(L: FiniteLattice, t: Term, f: Sequence[int]) -> int:
    """Value of ``t`` in ``L`` when x_i is sent to ``f[i]``."""
    store = t.store
    if len(f) != store.n:
        raise ValueError(f"assignment has {len(f)} entries, store has n={store.n}")
    val: dict[int, int] = {}
    for i in store.reachable(t):
        node = store._nodes[i]
        if node.kind is Kind.VAR:
            val[i] = f[node.var]
        elif node.kind is Kind.JOIN:
            val[i] = L.join_all([val[k] for k in store._kids[i]])
        else:
            val[i] = L.meet_all([val[k] for k in store._kids[i]])
    return val[t.id]


def refutes(L: FiniteLattice, f: Sequence[int], u: Term, v: Term) -> bool:
    """True when the evaluation in ``L`` under ``f`` violates ``u <= v``."""
    return not L.leq(eval_in_lattice(L, u, f), eval_in_lattice(L, v, f))
