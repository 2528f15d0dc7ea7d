"""Hash-consed lattice terms over generators x0, ..., x(n-1).

Every term lives in a :class:`TermStore`.  Building the same shape twice
returns the very same :class:`Term` object, so structural equality is
identity and ``t.id`` is a stable handle.  Children always receive smaller
ids than their parents, which lets whole-DAG passes run bottom-up in id
order without recursion.

Nothing here simplifies: ``x0 | x0`` is a genuine two-leaf join.  Leaf
counts (:func:`tno`) are a property of the term as written.
"""
from __future__ import annotations

import itertools
import re
import threading
from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterable, Mapping, Sequence


class Kind(IntEnum):
    VAR = 0
    JOIN = 1
    MEET = 2


_SYMBOL = {Kind.JOIN: "|", Kind.MEET: "&"}
_DUAL_KIND = {Kind.VAR: Kind.VAR, Kind.JOIN: Kind.MEET, Kind.MEET: Kind.JOIN}
_ALIASES = {"x": 0, "y": 1, "z": 2}


class TermSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class StoreMismatchError(ValueError):
    pass


class Term:
    """A node of the shared term DAG.  Never construct directly."""

    __slots__ = ("store", "id", "kind", "var", "children", "__weakref__")

    def __init__(self, store: "TermStore", id: int, kind: Kind, var: int, children: tuple):
        self.store = store
        self.id = id
        self.kind = kind
        self.var = var
        self.children = children

    def __or__(self, other: "Term") -> "Term":
        return self.store.join(self, other)

    def __and__(self, other: "Term") -> "Term":
        return self.store.meet(self, other)

    @property
    def is_var(self) -> bool:
        return self.kind is Kind.VAR

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        if self.store.tno_of(self.id) <= 40:
            return f"Term({format_term(self)!r})"
        return f"<Term #{self.id} {self.kind.name} tno={self.store.tno_of(self.id)}>"

    def __reduce__(self):
        raise TypeError("terms are bound to their store and cannot be pickled")


class TermStore:
    """Append-only interning arena for terms over ``n`` generators.

    The parallel lists ``_kind``, ``_var``, ``_kids`` and ``_tno`` are
    indexed by term id and are read directly by the decision kernels.
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"a term store needs at least 2 generators, got {n}")
        self.n = n
        self._nodes: list[Term] = []
        self._kind: list[int] = []
        self._var: list[int] = []
        self._kids: list[tuple[int, ...]] = []
        self._tno: list[int] = []
        self._index: dict[tuple, Term] = {}
        self._dual: dict[int, int] = {}
        self._lock = threading.Lock()
        self.gens = tuple(self._intern(Kind.VAR, i, ()) for i in range(n))

    def __len__(self) -> int:
        return len(self._nodes)

    def __repr__(self) -> str:
        return f"TermStore(n={self.n}, nodes={len(self)})"

    def _intern(self, kind: Kind, var: int, kids: tuple[int, ...]) -> Term:
        key = (kind, var, kids)
        t = self._index.get(key)
        if t is not None:
            return t
        with self._lock:
            t = self._index.get(key)
            if t is not None:
                return t
            nodes = self._nodes
            t = Term(self, len(nodes), kind, var, tuple(nodes[k] for k in kids))
            nodes.append(t)
            self._kind.append(int(kind))
            self._var.append(var)
            self._kids.append(kids)
            self._tno.append(1 if kind is Kind.VAR else sum(self._tno[k] for k in kids))
            self._index[key] = t
            return t

    def node(self, id: int) -> Term:
        return self._nodes[id]

    def var(self, i: int) -> Term:
        if not 0 <= i < self.n:
            raise ValueError(f"variable index {i} out of range for n={self.n}")
        return self.gens[i]

    def make(self, kind: Kind, children: Sequence[Term]) -> Term:
        if kind is Kind.VAR:
            raise ValueError("use var() for generators")
        if len(children) < 2:
            raise ValueError(f"{kind.name.lower()} needs at least 2 children, got {len(children)}")
        for c in children:
            if c.store is not self:
                raise StoreMismatchError("child term belongs to a different store")
        return self._intern(Kind(kind), -1, tuple(c.id for c in children))

    def join(self, *children: Term) -> Term:
        return self.make(Kind.JOIN, children)

    def meet(self, *children: Term) -> Term:
        return self.make(Kind.MEET, children)

    def join_or_single(self, children: Sequence[Term]) -> Term:
        """Join of ``children``, or the sole member when there is just one."""
        return children[0] if len(children) == 1 else self.make(Kind.JOIN, children)

    def meet_or_single(self, children: Sequence[Term]) -> Term:
        return children[0] if len(children) == 1 else self.make(Kind.MEET, children)

    def tno_of(self, id: int) -> int:
        return self._tno[id]

    def reachable(self, root: Term) -> list[int]:
        """Ids of all nodes under ``root`` (inclusive), ascending."""
        seen = {root.id}
        stack = [root.id]
        kids = self._kids
        while stack:
            for k in kids[stack.pop()]:
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return sorted(seen)


def rebuild(t: Term, target: TermStore, leaf: Callable[[int], Term]) -> Term:
    """Rebuild ``t`` bottom-up into ``target``, mapping each variable through ``leaf``.

    Operator kinds are kept; use :func:`dual` to swap them.
    """
    src = t.store
    done: dict[int, Term] = {}
    for i in src.reachable(t):
        node = src._nodes[i]
        if node.kind is Kind.VAR:
            done[i] = leaf(node.var)
        else:
            done[i] = target.make(node.kind, [done[k] for k in src._kids[i]])
    return done[t.id]


def tno(t: Term) -> int:
    """Number of variable occurrences in ``t`` as written."""
    return t.store.tno_of(t.id)


def tno_set(ts: Iterable[Term]) -> int:
    return sum(tno(t) for t in ts)


def dual(t: Term) -> Term:
    """Swap joins and meets throughout; generators stay put."""
    store = t.store
    cache = store._dual
    hit = cache.get(t.id)
    if hit is not None:
        return store._nodes[hit]
    for i in store.reachable(t):
        if i in cache:
            continue
        node = store._nodes[i]
        if node.kind is Kind.VAR:
            cache[i] = i
        else:
            kids = tuple(cache[k] for k in store._kids[i])
            d = store._intern(_DUAL_KIND[node.kind], -1, kids)
            cache[i] = d.id
            cache.setdefault(d.id, i)
    return store._nodes[cache[t.id]]


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``range(len(images))`` in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < n:
                    raise ValueError(f"cycle entry {a} out of range for n={n}")
                if a in seen:
                    raise ValueError(f"{a} appears in more than one cycle position")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def all(cls, n: int) -> list["Permutation"]:
        """Every permutation of ``range(n)``, lexicographic in one-line notation."""
        return [cls(p) for p in itertools.permutations(range(n))]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


def apply_perm(sigma: Permutation, t: Term) -> Term:
    """Relabel generators: x_i becomes x_sigma(i)."""
    store = t.store
    if len(sigma) != store.n:
        raise ValueError(f"permutation of length {len(sigma)} applied in a store with n={store.n}")
    if sigma.is_identity():
        return t
    return rebuild(t, store, lambda i: store.gens[sigma(i)])


def substitute(t: Term, mapping: Mapping[int, Term], target: TermStore | None = None) -> Term:
    """Simultaneously replace each x_i by ``mapping[i]``.  No simplification."""
    if target is None:
        stores = {id(v.store): v.store for v in mapping.values()}
        if len(stores) != 1:
            raise StoreMismatchError("mapping images must all live in one store")
        (target,) = stores.values()
    for v in mapping.values():
        if v.store is not target:
            raise StoreMismatchError("mapping image lives outside the target store")

    def leaf(i: int) -> Term:
        try:
            return mapping[i]
        except KeyError:
            raise ValueError(f"variable x{i} is not mapped") from None

    return rebuild(t, target, leaf)


# -- concrete syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[|&(),=]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


def var_index(name: str) -> int | None:
    """Index named by a variable token (``x7``, ``x``, ``y``, ``z``), else None."""
    if name in _ALIASES:
        return _ALIASES[name]
    if len(name) > 1 and name[0] == "x" and name[1:].isdigit():
        return int(name[1:])
    return None


class TermParser:
    """Recursive-descent parser; ``&`` binds tighter than ``|``.

    Each maximal run of one operator becomes a single k-ary node.
    Subclasses extend :meth:`parse_atom` to add names and function calls.
    """

    def __init__(self, store: TermStore, text: str):
        self.store = store
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise TermSyntaxError(message, tok.pos)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def parse(self) -> Term:
        t = self.parse_expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return t

    def parse_expr(self) -> Term:
        parts = [self.parse_meet()]
        while self.at("|"):
            self.advance()
            parts.append(self.parse_meet())
        return self.store.join_or_single(parts)

    def parse_meet(self) -> Term:
        parts = [self.parse_atom()]
        while self.at("&"):
            self.advance()
            parts.append(self.parse_atom())
        return self.store.meet_or_single(parts)

    def parse_atom(self) -> Term:
        tok = self.tok
        if self.at("("):
            self.advance()
            t = self.parse_expr()
            self.expect(")")
            return t
        if tok.kind == "ident":
            idx = var_index(tok.text)
            if idx is not None:
                if idx >= self.store.n:
                    self.error(f"variable {tok.text} out of range for n={self.store.n}")
                self.advance()
                return self.store.gens[idx]
            self.error(f"unknown name {tok.text!r}")
        self.error(f"expected a term, found {tok.text or 'end of input'!r}")


def parse_term(text: str, store: TermStore) -> Term:
    try:
        return TermParser(store, text).parse()
    except RecursionError:
        raise TermSyntaxError("term nested too deeply", 0) from None


def format_term(t: Term) -> str:
    """Canonical text: single spaces around operators, compound children parenthesized."""
    store = t.store
    out: dict[int, str] = {}
    for i in store.reachable(t):
        node = store._nodes[i]
        if node.kind is Kind.VAR:
            out[i] = f"x{node.var}"
            continue
        parts = []
        for k in store._kids[i]:
            s = out[k]
            parts.append(s if store._kind[k] == Kind.VAR else f"({s})")
        out[i] = f" {_SYMBOL[node.kind]} ".join(parts)
    return out[t.id]
