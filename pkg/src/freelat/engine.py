"""Decide ``u <= v`` and ``u = v`` in the free lattice FL(n).

The rules are Whitman's: a join is below v when all its joinands are, u is
below a meet when it is below all meetands, generators are join and meet
prime, and a meet is below a join only if some meetand is below the join
or the meet is below some joinand.  Verdicts are memoized on id pairs, so
the cost is bounded by the product of the two DAG sizes.

The kernel is compiled (``freelat._whitman``) when available.  Set
``FREELAT_PURE_PYTHON=1`` to force the pure-Python twin.
"""
from __future__ import annotations

import os

from . import _whitman_py
from ._whitman_py import KernelInvariantError
from .terms import StoreMismatchError, Term, TermStore

_KERNELS = {"python": _whitman_py.WhitmanKernel}
try:
    from ._whitman import WhitmanKernel as _CompiledKernel
except ImportError:  # pragma: no cover - depends on the build
    _CompiledKernel = None
else:
    _KERNELS["cython"] = _CompiledKernel

if _CompiledKernel is not None and not os.environ.get("FREELAT_PURE_PYTHON"):
    DEFAULT_BACKEND = "cython"
else:
    DEFAULT_BACKEND = "python"

__all__ = [
    "DEFAULT_BACKEND",
    "Engine",
    "KernelInvariantError",
    "available_backends",
]


def available_backends() -> list[str]:
    return sorted(_KERNELS)


class Engine:
    """A ``<=`` oracle for one term store.

    Queries mutate the memo, so one instance must not be queried from two
    threads at once.  Separate engines over the same store are independent.
    """

    def __init__(self, store: TermStore, backend: str | None = None):
        backend = backend or DEFAULT_BACKEND
        if backend not in _KERNELS:
            raise ValueError(f"unknown backend {backend!r}; available: {available_backends()}")
        self.store = store
        self.n = store.n
        self.backend = backend
        self._kernel = _KERNELS[backend](store)

    def __repr__(self) -> str:
        return f"Engine(n={self.n}, backend={self.backend!r}, memo={len(self._kernel)})"

    def _check(self, t: Term) -> int:
        if t.store is not self.store:
            raise StoreMismatchError("term belongs to a different store than the engine")
        return t.id

    def leq(self, u: Term, v: Term) -> bool:
        return self._kernel.leq(self._check(u), self._check(v))

    def semantic_eq(self, u: Term, v: Term) -> bool:
        return self.leq(u, v) and self.leq(v, u)

    def lt(self, u: Term, v: Term) -> bool:
        return self.leq(u, v) and not self.leq(v, u)

    def comparable(self, u: Term, v: Term) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    @property
    def memo_size(self) -> int:
        return len(self._kernel)

    def clear(self) -> None:
        self._kernel.clear()
