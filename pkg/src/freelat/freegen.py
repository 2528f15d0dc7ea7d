"""Decide whether a finite list of free-lattice elements generates freely.

A nonempty Y generates freely iff no h in Y lies below a join of other
members and no meet of other members lies below h.  Joins grow with the
joinand set, so testing the single largest Z = Y minus {h} on each side
covers every finite Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .engine import Engine
from .terms import Term


@dataclass(frozen=True)
class Witness:
    """Why a candidate set fails.

    ``side`` is ``"join"`` for ``h <= bound`` with bound a join of the
    others, ``"meet"`` for ``bound <= h`` with bound a meet of the others,
    and ``"collision"`` when ``h`` equals the member ``bound``.
    """

    index: int
    h: Term
    side: Literal["join", "meet", "collision"]
    bound: Term


@dataclass
class FreegenReport:
    verdict: bool
    witness: Witness | None = None
    collisions: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict

    def describe(self) -> str:
        if self.verdict:
            return "generates freely"
        w = self.witness
        if w.side == "collision":
            return f"member {w.index} equals another member"
        if w.side == "join":
            return f"member {w.index} lies below the join of the others"
        return f"the meet of the others lies below member {w.index}"


def freely_generates(engine: Engine, ys: Sequence[Term]) -> FreegenReport:
    ys = list(ys)
    if not ys:
        raise ValueError("freely_generates needs at least one element")
    if len(ys) == 1:
        return FreegenReport(True)
    store = engine.store

    collisions = [
        (i, j)
        for i in range(len(ys))
        for j in range(i + 1, len(ys))
        if engine.semantic_eq(ys[i], ys[j])
    ]
    if collisions:
        i, j = collisions[0]
        return FreegenReport(False, Witness(j, ys[j], "collision", ys[i]), collisions)

    for k, h in enumerate(ys):
        rest = ys[:k] + ys[k + 1:]
        upper = store.join_or_single(rest)
        if engine.leq(h, upper):
            return FreegenReport(False, Witness(k, h, "join", upper))
        lower = store.meet_or_single(rest)
        if engine.leq(lower, h):
            return FreegenReport(False, Witness(k, h, "meet", lower))
    return FreegenReport(True)
