"""Batch verification scripts: ``freelat run <script>``.

A script is one command per line; ``#`` starts a comment.

    set n 3
    let u = m(1)
    let v = dual(u) | x0
    assert leq u v
    assert not eq u v
    assert freegen a, dual(a), b, dual(b), x0
    assert symmetric sym_join(x0 & (x1 | x2))
    assert nu s
    assert selfdual_closed a, dual(a), b, dual(b)
    assert tno a, dual(a), b, dual(b) = 672
    print tno a
    print term p(0, 2)

Expressions extend the term grammar with user names, the built-in terms
``s a b a0 aprime bprime a_variant b_variant``, and the functions
``p(i, j)``, ``m(j)``, ``dual(e)``, ``perm((0 1 2), e)``, ``sym_join(e)``
and ``sym_meet(e)`` (aliases ``jhom``/``mhom``).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import construct
from .engine import Engine
from .freegen import freely_generates
from .symmetry import MAX_SYM_N, is_nu, is_symmetric, selfdual_closed, sym_join, sym_meet
from .terms import (
    Permutation,
    Term,
    TermParser,
    TermStore,
    TermSyntaxError,
    apply_perm,
    dual,
    format_term,
    tno,
    var_index,
)

OK, FAIL, ERROR = "OK", "FAIL", "ERROR"


class ScriptError(Exception):
    """A command that cannot be executed (bad syntax, unknown name, wrong n)."""


@dataclass
class CommandResult:
    line: int
    kind: str
    status: str
    message: str = ""
    micros: int = 0
    source: str = ""


@dataclass
class RunResult:
    script: str
    n: int | None
    commands: list[CommandResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == OK for c in self.commands)

    def to_json(self) -> dict:
        return {
            "script": self.script,
            "n": self.n,
            "commands": [
                {k: v for k, v in asdict(c).items() if k != "source"} for c in self.commands
            ],
            "ok": self.ok,
        }

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for c in self.commands:
            s = f"{c.status:<5} line {c.line}: {c.source}"
            if c.message:
                s += f" -> {c.message}"
            if timing:
                s += f" [{c.micros} us]"
            lines.append(s)
        summary = sum(c.status == OK for c in self.commands)
        lines.append(f"{'PASS' if self.ok else 'FAIL'}: {summary}/{len(self.commands)} commands OK")
        return "\n".join(lines)


_CONSTANTS: dict[str, Callable[[TermStore], Term]] = {
    "s": construct.make_s,
    "a": lambda st: construct.make_ab(st)[0],
    "b": lambda st: construct.make_ab(st)[1],
    "a0": lambda st: construct.make_primed(st)[0],
    "aprime": lambda st: construct.make_primed(st)[1],
    "bprime": lambda st: construct.make_primed(st)[2],
    "a_variant": lambda st: construct.make_ab_variant(st)[0],
    "b_variant": lambda st: construct.make_ab_variant(st)[1],
}

_UNARY = {
    "dual": dual,
    "sym_join": sym_join,
    "jhom": sym_join,
    "sym_meet": sym_meet,
    "mhom": sym_meet,
}

RESERVED = set(_CONSTANTS) | set(_UNARY) | {"p", "m", "perm"}


class ExprParser(TermParser):
    def __init__(self, script: "Script", text: str):
        super().__init__(script.store, text)
        self.script = script

    def parse_int(self) -> int:
        tok = self.tok
        if tok.kind != "int":
            self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.advance()
        return int(tok.text)

    def parse_cycles(self) -> Permutation:
        cycles = []
        while self.at("("):
            self.advance()
            cyc = []
            while self.tok.kind == "int":
                cyc.append(self.parse_int())
            self.expect(")")
            if cyc:
                cycles.append(cyc)
        try:
            return Permutation.from_cycles(cycles, self.store.n)
        except ValueError as exc:
            raise ScriptError(str(exc)) from None

    def parse_atom(self) -> Term:
        tok = self.tok
        if tok.kind != "ident" or var_index(tok.text) is not None:
            return super().parse_atom()
        name = tok.text
        self.advance()
        if name in self.script.symbols:
            return self.script.symbols[name]
        if name in _CONSTANTS:
            return self.script.constant(name)
        if name in _UNARY:
            self.expect("(")
            arg = self.parse_expr()
            self.expect(")")
            return _UNARY[name](arg)
        if name == "p":
            self.expect("(")
            i = self.parse_int()
            self.expect(",")
            j = self.parse_int()
            self.expect(")")
            return construct.make_p(self.store, i, j)
        if name == "m":
            self.expect("(")
            j = self.parse_int()
            self.expect(")")
            return construct.make_m(self.store, j)
        if name == "perm":
            self.expect("(")
            sigma = self.parse_cycles()
            self.expect(",")
            arg = self.parse_expr()
            self.expect(")")
            return apply_perm(sigma, arg)
        raise ScriptError(f"undefined name {name!r}")

    def parse_list(self) -> list[Term]:
        items = [self.parse_expr()]
        while self.at(","):
            self.advance()
            items.append(self.parse_expr())
        return items

    def finish(self) -> None:
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")


class Script:
    """Interpreter state for one script: ambient store, engine and names."""

    def __init__(self, max_n: int = MAX_SYM_N, backend: str | None = None):
        self.max_n = max_n
        self.backend = backend
        self.store: TermStore | None = None
        self.engine: Engine | None = None
        self.symbols: dict[str, Term] = {}
        self._constants: dict[str, Term] = {}

    @property
    def n(self) -> int | None:
        return self.store.n if self.store else None

    def constant(self, name: str) -> Term:
        if name not in self._constants:
            try:
                self._constants[name] = _CONSTANTS[name](self.store)
            except ValueError as exc:
                raise ScriptError(f"{name}: {exc}") from None
        return self._constants[name]

    def execute(self, text: str) -> tuple[str, str, str]:
        """Run one command line; returns (kind, status, message)."""
        head, _, rest = text.partition(" ")
        rest = rest.strip()
        if head == "set":
            return "set", *self._set(rest)
        if self.store is None:
            raise ScriptError("'set n <int>' must come before any term command")
        if head == "let":
            return "let", *self._let(rest)
        if head == "assert":
            return self._assert(rest)
        if head == "print":
            return self._print(rest)
        raise ScriptError(f"unknown command {head!r}")

    def _set(self, rest: str):
        parts = rest.split()
        if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
            raise ScriptError("expected 'set n <int>'")
        if self.store is not None:
            raise ScriptError("n is already set")
        n = int(parts[1])
        if not 2 <= n <= self.max_n:
            raise ScriptError(f"n must lie in [2, {self.max_n}], got {n}")
        self.store = TermStore(n)
        self.engine = Engine(self.store, self.backend)
        return OK, f"n = {n}"

    def _let(self, rest: str):
        name, eq, expr = rest.partition("=")
        name = name.strip()
        if not eq or not name.isidentifier():
            raise ScriptError("expected 'let NAME = <expr>'")
        if var_index(name) is not None or name in RESERVED:
            raise ScriptError(f"{name!r} is a variable or built-in name")
        if name in self.symbols:
            raise ScriptError(f"{name!r} is already defined")
        p = ExprParser(self, expr)
        t = p.parse_expr()
        p.finish()
        self.symbols[name] = t
        return OK, ""

    def _assert(self, rest: str):
        words = rest.split(None, 1)
        negate = bool(words) and words[0] == "not"
        if negate:
            words = words[1].split(None, 1) if len(words) > 1 else []
        if not words:
            raise ScriptError("empty assertion")
        pred = words[0]
        body = words[1] if len(words) > 1 else ""
        e = self.engine
        message = ""
        if pred in ("leq", "eq"):
            p = ExprParser(self, body)
            u = p.parse_expr()
            if p.at(","):
                p.advance()
            v = p.parse_expr()
            p.finish()
            value = e.leq(u, v) if pred == "leq" else e.semantic_eq(u, v)
        elif pred in ("freegen", "selfdual_closed"):
            p = ExprParser(self, body)
            items = p.parse_list()
            p.finish()
            if pred == "freegen":
                report = freely_generates(e, items)
                value = report.verdict
                message = report.describe()
            else:
                value = selfdual_closed(e, items)
        elif pred in ("symmetric", "nu"):
            p = ExprParser(self, body)
            t = p.parse_expr()
            p.finish()
            value = is_symmetric(e, t) if pred == "symmetric" else is_nu(t, self.backend)
        elif pred == "tno":
            lhs, eq, rhs = body.rpartition("=")
            if not eq or not rhs.strip().isdigit():
                raise ScriptError("expected 'assert tno e1, ..., ek = <int>'")
            p = ExprParser(self, lhs)
            items = p.parse_list()
            p.finish()
            got = sum(tno(t) for t in items)
            value = got == int(rhs)
            message = f"tno = {got}"
        else:
            raise ScriptError(f"unknown assertion {pred!r}")
        status = OK if value != negate else FAIL
        return f"assert {'not ' if negate else ''}{pred}", status, message or str(value).lower()

    def _print(self, rest: str):
        what, _, body = rest.partition(" ")
        p = ExprParser(self, body)
        if what == "tno":
            items = p.parse_list()
            p.finish()
            return "print tno", OK, str(sum(tno(t) for t in items))
        if what == "term":
            t = p.parse_expr()
            p.finish()
            return "print term", OK, format_term(t)
        raise ScriptError(f"unknown print directive {what!r}")


def run_text(text: str, name: str = "<script>", max_n: int = MAX_SYM_N,
             backend: str | None = None) -> RunResult:
    script = Script(max_n=max_n, backend=backend)
    result = RunResult(script=name, n=None)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        t0 = time.perf_counter()
        try:
            kind, status, message = script.execute(line)
        except (ScriptError, TermSyntaxError, ValueError) as exc:
            kind, status, message = line.split(" ", 1)[0], ERROR, str(exc)
        micros = int((time.perf_counter() - t0) * 1e6)
        result.commands.append(CommandResult(lineno, kind, status, message, micros, line))
    result.n = script.n
    return result


def run_script(path: str, max_n: int = MAX_SYM_N, backend: str | None = None) -> RunResult:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return run_text(text, name=str(path), max_n=max_n, backend=backend)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="freelat", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute a verification script")
    run.add_argument("script")
    run.add_argument("--json", action="store_true", help="emit a JSON report")
    run.add_argument("--time", action="store_true", help="show per-command timings")
    run.add_argument("--max-n", type=int, default=MAX_SYM_N, help="largest allowed n")
    run.add_argument("--backend", choices=["python", "cython"], default=None)
    args = ap.parse_args(argv)

    try:
        result = run_script(args.script, max_n=args.max_n, backend=args.backend)
    except OSError as exc:
        print(f"freelat: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(result.to_json(), indent=2))
    else:
        print(result.to_text(timing=args.time))
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
