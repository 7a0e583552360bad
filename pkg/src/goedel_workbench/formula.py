"""Abstract syntax, text syntax and structural operations for first-order
Goedel formulas with the absoluteness operator D (Delta).

Concrete syntax::

    formula := impl
    impl    := disj ("->" impl)?
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary | "D" unary | "A" var "." unary | "E" var "." unary | atom
    atom    := "bot" | "top" | ident ("(" term ("," term)* ")")?
             | "(" formula ")" | "(" formula ("<" | "<->") formula ")"
    term    := ident ("(" term ("," term)* ")")?

Sugar is expanded while parsing: ``~A`` is ``A -> bot``, ``(A <-> B)`` is
``(A -> B) & (B -> A)`` and ``(A < B)`` is ``(A -> B) -> A``.  ``top`` stays
a primitive node.
"""
from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass
from typing import Iterator, Union


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.fn}({', '.join(str(a) for a in self.args)})"


Term = Union[Var, Const, App]


# ------------------------------------------------------------- formulas


class Formula:
    """Base class of formula nodes; all nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    # convenience constructors used heavily in tests and fixtures
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __invert__(self) -> "Formula":
        return Implies(self, BOT)


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self) -> str:
        return "Bottom()"


@dataclass(frozen=True, repr=False)
class TopF(Formula):
    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Delta(Formula):
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


BOT = Bottom()
TOP = TopF()
Top = TopF

BINARY = (And, Or, Implies)
QUANTIFIERS = (Forall, Exists)


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def less(a: Formula, b: Formula) -> Formula:
    """``a < b`` abbreviates ``(a -> b) -> a``; it takes value 1 exactly when
    a is strictly above b or a is 1."""
    return Implies(Implies(a, b), a)


def prop(name: str) -> Atom:
    return Atom(name, ())


def disjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return BOT
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def conjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return TOP
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# ------------------------------------------------------------ traversal


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over all subformula occurrences."""
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Delta):
        yield from subformulas(f.body)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        out: set[str] = set()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Delta):
        return free_vars(f.body)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    return set()


def bound_vars(f: Formula) -> list[str]:
    return [g.var for g in subformulas(f) if isinstance(g, QUANTIFIERS)]


def all_names(f: Formula) -> set[str]:
    names = set(bound_vars(f)) | free_vars(f)
    for g in subformulas(f):
        if isinstance(g, Atom):
            names.add(g.pred)
            for t in g.args:
                names |= _term_symbols(t)
    return names


def _term_symbols(t: Term) -> set[str]:
    if isinstance(t, App):
        out = {t.fn}
        for a in t.args:
            out |= _term_symbols(a)
        return out
    return {t.name}


def has_delta(f: Formula) -> bool:
    return any(isinstance(g, Delta) for g in subformulas(f))


def has_quantifier(f: Formula) -> bool:
    return any(isinstance(g, QUANTIFIERS) for g in subformulas(f))


def is_quantifier_free(f: Formula) -> bool:
    return not has_quantifier(f)


def prop_atoms(f: Formula) -> list[str]:
    """Names of 0-ary atoms in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Atom) and not g.args:
            seen.setdefault(g.pred)
    return list(seen)


def signature(f: Formula) -> tuple[dict[str, int], dict[str, int]]:
    """Return ``(predicates, functions)`` mapping symbol name to arity.

    Constants appear as 0-ary functions.  Raises ``ArityError`` when a symbol
    is used with two different arities.
    """
    preds: dict[str, int] = {}
    funcs: dict[str, int] = {}

    def note(table: dict[str, int], name: str, n: int) -> None:
        if table.setdefault(name, n) != n:
            raise ArityError(f"symbol {name!r} used with arities {table[name]} and {n}")

    def walk_term(t: Term) -> None:
        if isinstance(t, Const):
            note(funcs, t.name, 0)
        elif isinstance(t, App):
            note(funcs, t.fn, len(t.args))
            for a in t.args:
                walk_term(a)

    for g in subformulas(f):
        if isinstance(g, Atom):
            note(preds, g.pred, len(g.args))
            for a in g.args:
                walk_term(a)
    return preds, funcs


def depth(f: Formula) -> int:
    if isinstance(f, BINARY):
        return 1 + max(depth(f.left), depth(f.right))
    if isinstance(f, (Delta, Forall, Exists)):
        return 1 + depth(f.body)
    return 0


# --------------------------------------------------------- substitution


def subst_term(t: Term, var: str, repl: Term) -> Term:
    if isinstance(t, Var):
        return repl if t.name == var else t
    if isinstance(t, App):
        return App(t.fn, tuple(subst_term(a, var, repl) for a in t.args))
    return t


def substitute(f: Formula, var: str, repl: Term) -> Formula:
    """Replace free occurrences of ``var`` by ``repl``.

    Assumes no capture: callers rectify first or substitute closed terms.
    """
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(a, var, repl) for a in f.args))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, var, repl), substitute(f.right, var, repl))
    if isinstance(f, Delta):
        return Delta(substitute(f.body, var, repl))
    if isinstance(f, QUANTIFIERS):
        if f.var == var:
            return f
        return type(f)(f.var, substitute(f.body, var, repl))
    return f


def rename_bound(f: Formula, old: str, new: str) -> Formula:
    return substitute(f, old, Var(new))


def fresh_name(base: str, taken: set[str]) -> str:
    stem = base.rstrip("0123456789") or base
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in taken:
            return cand
    raise AssertionError  # pragma: no cover


def rectify(f: Formula) -> Formula:
    """Rename bound variables so that every binder is distinct and no bound
    variable coincides with a free one."""
    taken = all_names(f)
    used = set(free_vars(f))

    def go(g: Formula) -> Formula:
        if isinstance(g, BINARY):
            left = go(g.left)
            return type(g)(left, go(g.right))
        if isinstance(g, Delta):
            return Delta(go(g.body))
        if isinstance(g, QUANTIFIERS):
            v = g.var
            body = g.body
            if v in used:
                nv = fresh_name(v, taken)
                taken.add(nv)
                body = rename_bound(body, v, nv)
                v = nv
            used.add(v)
            return type(g)(v, go(body))
        return g

    return go(f)


def is_prenex(f: Formula) -> bool:
    while isinstance(f, QUANTIFIERS):
        f = f.body
    return is_quantifier_free(f)


def split_prenex(f: Formula) -> tuple[list[tuple[type, str]], Formula]:
    prefix = []
    while isinstance(f, QUANTIFIERS):
        prefix.append((type(f), f.var))
        f = f.body
    return prefix, f


def build_prenex(prefix: list[tuple[type, str]], matrix: Formula) -> Formula:
    for q, v in reversed(prefix):
        matrix = q(v, matrix)
    return matrix


def universal_closure(f: Formula) -> Formula:
    for v in sorted(free_vars(f), reverse=True):
        f = Forall(v, f)
    return f


def existential_closure(f: Formula) -> Formula:
    for v in sorted(free_vars(f), reverse=True):
        f = Exists(v, f)
    return f


def alpha_equal(a: Formula, b: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _alpha(a, b, {}, {})


def _alpha(a: Formula, b: Formula, ea: dict[str, int], eb: dict[str, int]) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Atom):
        if a.pred != b.pred or len(a.args) != len(b.args):
            return False
        return all(_alpha_term(s, t, ea, eb) for s, t in zip(a.args, b.args))
    if isinstance(a, BINARY):
        return _alpha(a.left, b.left, ea, eb) and _alpha(a.right, b.right, ea, eb)
    if isinstance(a, Delta):
        return _alpha(a.body, b.body, ea, eb)
    if isinstance(a, QUANTIFIERS):
        key = len(ea) + len(eb) + 1, id(a)
        na = dict(ea)
        nb = dict(eb)
        na[a.var] = key
        nb[b.var] = key
        return _alpha(a.body, b.body, na, nb)
    return True


def _alpha_term(s: Term, t: Term, ea: dict, eb: dict) -> bool:
    if type(s) is not type(t):
        return False
    if isinstance(s, Var):
        if s.name in ea or t.name in eb:
            return ea.get(s.name) == eb.get(t.name) and s.name in ea and t.name in eb
        return s.name == t.name
    if isinstance(s, Const):
        return s.name == t.name
    return (
        s.fn == t.fn
        and len(s.args) == len(t.args)
        and all(_alpha_term(x, y, ea, eb) for x, y in zip(s.args, t.args))
    )


# -------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class ArityError(ValueError):
    pass


class FreeVariableWarning(UserWarning):
    pass


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<op><->|->|[<|&~(),.])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)
KEYWORDS = frozenset({"A", "E", "D", "bot", "top"})


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
        else:
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


_UNARY_START = {"~", "("}


class _Parser:
    def __init__(self, text: str, constants: frozenset[str]):
        self.toks = tokenize(text)
        self.i = 0
        self.constants = constants
        self.bound: list[str] = []
        self.free: dict[str, None] = {}

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text or t.kind == "eof":
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def fail(self, msg: str):
        t = self.peek()
        raise ParseError(msg, t.line, t.col)

    # keywords are contextual: "A" and "E" only open a quantifier when followed
    # by "<var> .", and "D" only when followed by something that starts a unary.
    def _starts_unary(self, t: _Tok) -> bool:
        return t.kind == "ident" or t.text in _UNARY_START

    def _is_quantifier(self) -> bool:
        t = self.peek()
        return (
            t.kind == "ident"
            and t.text in ("A", "E")
            and self.peek(1).kind == "ident"
            and self.peek(2).text == "."
        )

    def formula(self) -> Formula:
        return self.impl()

    def impl(self) -> Formula:
        left = self.disj()
        if self.peek().text == "->":
            self.next()
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.peek().text == "|":
            self.next()
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.peek().text == "&":
            self.next()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        t = self.peek()
        if t.text == "~":
            self.next()
            return neg(self.unary())
        if t.kind == "ident" and t.text == "D" and self._starts_unary(self.peek(1)):
            self.next()
            return Delta(self.unary())
        if self._is_quantifier():
            q = Forall if self.next().text == "A" else Exists
            v = self.next()
            if v.text in KEYWORDS - {"A", "E", "D"}:
                raise ParseError(f"reserved word {v.text!r} used as variable", v.line, v.col)
            self.expect(".")
            self.bound.append(v.text)
            body = self.unary()
            self.bound.pop()
            return q(v.text, body)
        return self.atom()

    def atom(self) -> Formula:
        t = self.peek()
        if t.text == "(":
            self.next()
            inner = self.formula()
            op = self.peek().text
            if op in ("<", "<->"):
                self.next()
                other = self.formula()
                self.expect(")")
                return less(inner, other) if op == "<" else iff(inner, other)
            self.expect(")")
            return inner
        if t.kind != "ident":
            self.fail(f"expected a formula, found {t.text or 'end of input'!r}")
        self.next()
        if t.text == "bot":
            return BOT
        if t.text == "top":
            return TOP
        if self.peek().text == "(":
            return Atom(t.text, self.term_args())
        return Atom(t.text, ())

    def term_args(self) -> tuple:
        self.expect("(")
        args = [self.term()]
        while self.peek().text == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        t = self.next()
        if t.kind != "ident" or t.text in ("bot", "top"):
            raise ParseError(f"expected a term, found {t.text or 'end of input'!r}", t.line, t.col)
        if self.peek().text == "(":
            return App(t.text, self.term_args())
        if t.text in self.bound:
            return Var(t.text)
        if t.text in self.constants:
            return Const(t.text)
        self.free.setdefault(t.text)
        return Var(t.text)


def parse(text: str, constants: frozenset[str] | set[str] = frozenset(), warn: bool = True) -> Formula:
    """Parse formula text into an AST.

    Unbound bare identifiers in term position become free variables (a
    ``FreeVariableWarning`` is emitted) unless listed in ``constants``.
    """
    p = _Parser(text, frozenset(constants))
    f = p.formula()
    # a single comparison is also accepted unparenthesized at top level
    if p.peek().text in ("<", "<->"):
        op = p.next().text
        other = p.formula()
        f = less(f, other) if op == "<" else iff(f, other)
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r}")
    signature(f)
    if warn and p.free:
        warnings.warn(
            f"free variables {', '.join(p.free)}", FreeVariableWarning, stacklevel=2
        )
    return f


# ------------------------------------------------------------- printing

_PREC = {Implies: 1, Or: 2, And: 3}


def _sugar(f: Formula) -> tuple[str, tuple] | None:
    if isinstance(f, Implies):
        if f.right == BOT:
            return "~", (f.left,)
        if isinstance(f.left, Implies) and f.left.left == f.right:
            return "<", (f.right, f.left.right)
    if isinstance(f, And) and isinstance(f.left, Implies) and isinstance(f.right, Implies):
        if f.left.left == f.right.right and f.left.right == f.right.left:
            return "<->", (f.left.left, f.left.right)
    return None


def to_text(f: Formula, sugar: bool = True) -> str:
    """Render ``f``; ``parse(to_text(f))`` is structurally equal to ``f``."""

    def go(g: Formula, ctx: int) -> str:
        if sugar:
            s = _sugar(g)
            if s is not None:
                op, parts = s
                if op == "~":
                    return "~" + go(parts[0], 4)
                return f"({go(parts[0], 0)} {op} {go(parts[1], 0)})"
        if isinstance(g, Bottom):
            return "bot"
        if isinstance(g, TopF):
            return "top"
        if isinstance(g, Atom):
            if not g.args:
                return g.pred
            return f"{g.pred}({', '.join(str(a) for a in g.args)})"
        if isinstance(g, Delta):
            return "D " + go(g.body, 4)
        if isinstance(g, QUANTIFIERS):
            q = "A" if isinstance(g, Forall) else "E"
            return f"{q} {g.var}. {go(g.body, 4)}"
        prec = _PREC[type(g)]
        if isinstance(g, Implies):
            text = f"{go(g.left, 2)} -> {go(g.right, 1)}"
        else:
            op = "|" if isinstance(g, Or) else "&"
            text = f"{go(g.left, prec)} {op} {go(g.right, prec + 1)}"
        return f"({text})" if prec < ctx else text

    return go(f, 0)
