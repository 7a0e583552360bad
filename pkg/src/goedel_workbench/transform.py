"""Prenexation by quantifier shifts gated by the classification of the truth
set, the Kuroda double-negation translation, the double-negated-atom prenex
form used for validity equivalence, and standard skolemization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .formula import (
    BOT,
    And,
    App,
    Atom,
    Bottom,
    Const,
    Delta,
    Exists,
    Forall,
    Formula,
    Implies,
    Or,
    TopF,
    Var,
    all_names,
    build_prenex,
    existential_closure,
    has_delta,
    is_prenex,
    neg,
    rectify,
    split_prenex,
    substitute,
    universal_closure,
)
from .truthset import (
    DELTA_EXISTS,
    DELTA_FORALL,
    NO,
    ROW_GUP,
    S1,
    S2,
    S3,
    YES,
    Classification,
)


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class ShiftRule:
    name: str
    # classification rule that must be available, or None for rules valid in
    # every Goedel logic
    requires: Optional[str]
    lhs: str
    rhs: str


# extraction direction: lhs rewrites to rhs; x is not free in B
SHIFT_RULES = {
    r.name: r
    for r in (
        ShiftRule("forall-and", None, "A x. P(x) & B", "A x. (P(x) & B)"),
        ShiftRule("exists-and", None, "E x. P(x) & B", "E x. (P(x) & B)"),
        ShiftRule("forall-or-in", None, "A x. P(x) | B", "A x. (P(x) | B)"),
        ShiftRule("S1", S1, "A x. P(x) | B", "A x. (P(x) | B)"),
        ShiftRule("exists-or", None, "E x. P(x) | B", "E x. (P(x) | B)"),
        ShiftRule("S3", S3, "A x. P(x) -> B", "E x. (P(x) -> B)"),
        ShiftRule("exists-ante", None, "E x. P(x) -> B", "A x. (P(x) -> B)"),
        ShiftRule("forall-cons", None, "B -> A x. P(x)", "A x. (B -> P(x))"),
        ShiftRule("S2", S2, "B -> E x. P(x)", "E x. (B -> P(x))"),
        ShiftRule("Delta-forall", DELTA_FORALL, "D A x. P(x)", "A x. D P(x)"),
        ShiftRule("Delta-exists", DELTA_EXISTS, "D E x. P(x)", "E x. D P(x)"),
    )
}

# connective -> {quantifier of the pulled subformula: (rule, resulting quantifier)}
_AND = {Forall: ("forall-and", Forall), Exists: ("exists-and", Exists)}
_OR = {Forall: ("S1", Forall), Exists: ("exists-or", Exists)}
_ANTE = {Forall: ("S3", Exists), Exists: ("exists-ante", Forall)}
_CONS = {Forall: ("forall-cons", Forall), Exists: ("S2", Exists)}
_DELTA = {Forall: ("Delta-forall", Forall), Exists: ("Delta-exists", Exists)}


@dataclass(frozen=True)
class PrenexResult:
    prenex: Formula
    trace: tuple = ()
    guarantee: str = ""


@dataclass(frozen=True)
class Unsupported:
    code: str
    row: str
    column: str
    reason: str
    rule: str = ""

    def __str__(self) -> str:
        text = f"unsupported: {self.code} row={self.row!r} column={self.column!r} reason={self.reason}"
        if self.rule:
            text += f" rule={self.rule}"
        return text


class _Blocked(Exception):
    def __init__(self, rule: str):
        self.rule = rule


def _extract(f: Formula, allowed: Optional[frozenset], trace: list, pos: str = "0"):
    """Return (prefix, matrix); innermost and leftmost quantifiers first."""
    if isinstance(f, (Atom, Bottom, TopF)):
        return [], f
    if isinstance(f, (Forall, Exists)):
        prefix, m = _extract(f.body, allowed, trace, pos + ".0")
        return [(type(f), f.var)] + prefix, m
    if isinstance(f, Delta):
        prefix, m = _extract(f.body, allowed, trace, pos + ".0")
        return _pull(prefix, _DELTA, allowed, trace, pos), Delta(m)
    pa, ma = _extract(f.left, allowed, trace, pos + ".0")
    pb, mb = _extract(f.right, allowed, trace, pos + ".1")
    if isinstance(f, And):
        left, right = _AND, _AND
    elif isinstance(f, Or):
        left, right = _OR, _OR
    else:
        left, right = _ANTE, _CONS
    prefix = _pull(pa, left, allowed, trace, pos) + _pull(pb, right, allowed, trace, pos)
    return prefix, type(f)(ma, mb)


def _pull(prefix, table, allowed, trace, pos):
    out = []
    for q, v in prefix:
        rule, newq = table[q]
        need = SHIFT_RULES[rule].requires
        if allowed is not None and need is not None and need not in allowed:
            raise _Blocked(rule)
        trace.append((rule, pos, v))
        out.append((newq, v))
    return out


def classical_prenex(f: Formula) -> tuple[Formula, list]:
    """Prenex form using every classical shift, ungated."""
    trace: list = []
    prefix, m = _extract(rectify(f), None, trace)
    return build_prenex(prefix, m), trace


def _obstruction(c: Classification, with_delta: bool) -> str:
    if with_delta and c.table1_row == ROW_GUP:
        return "delta-exists-shift-invalid"
    return c.prenex_obstruction or "no-prenex-normal-form"


def prenexify(f: Formula, c: Classification, mode: str = "logical") -> Union[PrenexResult, Unsupported]:
    """Prenex form of ``f`` valid in the class described by ``c``.

    ``mode`` is ``logical`` (logical equivalence), ``pos-valid`` (the
    biconditional is >0-valid) or ``validity-re`` (validity equivalence).
    """
    with_delta = has_delta(f)
    if mode == "logical":
        f = rectify(f)
        if is_prenex(f):
            return PrenexResult(f, (), "identity")
        column, verdict = c.prenex_cell(with_delta)
        trace: list = []
        try:
            prefix, m = _extract(f, c.shift_rules_available, trace)
        except _Blocked as exc:
            return Unsupported("no-logical-prenex", c.table1_row, column, _obstruction(c, with_delta), exc.rule)
        guarantee = "exhaustive on finite truth sets" if c.table1_row == "finite" else "tested, not proven"
        if verdict != YES:
            guarantee = "shifts valid in every Goedel logic"
        return PrenexResult(build_prenex(prefix, m), tuple(trace), guarantee)
    if mode == "pos-valid":
        verdict = c.pos_valid_prenex_with_delta if with_delta else c.pos_valid_prenex
        column = "validity >0 with Delta" if with_delta else "validity >0"
        if verdict != YES:
            return Unsupported("no-pos-valid-prenex", c.table1_row, column, _obstruction(c, with_delta))
        p, trace = classical_prenex(f)
        return PrenexResult(p, tuple(trace), ">0-valid biconditional")
    if mode == "validity-re":
        if c.validity_equiv_prenex != YES:
            reason = "open" if c.validity_equiv_prenex not in (YES, NO) else "not-recursively-enumerable"
            return Unsupported("no-validity-prenex", c.table2_row, "validity equivalent", reason)
        if with_delta:
            raise TransformError("the double-negated-atom prenex form needs a Delta-free formula")
        p, trace = _validity_prenex(f)
        return PrenexResult(p, tuple(trace), "validity equivalent")
    raise TransformError(f"unknown prenex mode {mode!r}")


# ------------------------------------------------------------- kuroda


def kuroda(f: Formula) -> Formula:
    """Insert double negation after every universal quantifier and in front
    of the whole formula."""
    if has_delta(f):
        raise TransformError("the Kuroda translation is defined on Delta-free formulas")

    def go(g: Formula) -> Formula:
        if isinstance(g, Forall):
            return Forall(g.var, neg(neg(go(g.body))))
        if isinstance(g, Exists):
            return Exists(g.var, go(g.body))
        if isinstance(g, (And, Or, Implies)):
            return type(g)(go(g.left), go(g.right))
        return g

    return neg(neg(go(f)))


# ---------------------------------------------- double-negated atom form


def double_negate_atoms(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return neg(neg(f))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(double_negate_atoms(f.left), double_negate_atoms(f.right))
    if isinstance(f, Delta):
        return Delta(double_negate_atoms(f.body))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, double_negate_atoms(f.body))
    return f


def _is_neg(f: Formula) -> bool:
    return isinstance(f, Implies) and f.right == BOT


def simplify_triple_negation(f: Formula) -> Formula:
    """Rewrite ~~~A to ~A everywhere (an intuitionistic equivalence)."""
    if isinstance(f, (And, Or, Implies)):
        f = type(f)(simplify_triple_negation(f.left), simplify_triple_negation(f.right))
    elif isinstance(f, Delta):
        f = Delta(simplify_triple_negation(f.body))
    elif isinstance(f, (Forall, Exists)):
        f = type(f)(f.var, simplify_triple_negation(f.body))
    while _is_neg(f) and _is_neg(f.left) and _is_neg(f.left.left):
        f = f.left.left
    return f


def _validity_prenex(f: Formula):
    p, trace = classical_prenex(double_negate_atoms(f))
    return simplify_triple_negation(p), trace


def validity_prenex_re(f: Formula) -> Formula:
    """Double-negate every atom, shift quantifiers classically, then reduce
    triple negations."""
    if has_delta(f):
        raise TransformError("needs a Delta-free formula")
    return _validity_prenex(f)[0]


# ------------------------------------------------------- skolemization


def skolemize(f: Formula, mode: str = "validity") -> Formula:
    """Standard skolemization of a prenex formula.

    ``validity`` replaces universal variables by fresh functions of the
    preceding existential ones; ``sat`` replaces existential variables by
    functions of the preceding universal ones.  Free variables are closed
    (universally for validity, existentially for satisfiability) first.
    """
    if not is_prenex(f):
        raise TransformError("skolemization needs a prenex formula")
    if mode not in ("validity", "sat"):
        raise TransformError(f"unknown skolemization mode {mode!r}")
    f = rectify(universal_closure(f) if mode == "validity" else existential_closure(f))
    prefix, matrix = split_prenex(f)
    taken = all_names(f)
    replace_q = Forall if mode == "validity" else Exists
    counters = {"f": 0, "c": 0}
    kept: list = []
    deps: list[str] = []

    def fresh(kind: str) -> str:
        while True:
            counters[kind] += 1
            name = f"{kind}{counters[kind]}"
            if name not in taken:
                taken.add(name)
                return name

    for q, v in prefix:
        if q is replace_q:
            term = App(fresh("f"), tuple(Var(d) for d in deps)) if deps else Const(fresh("c"))
            matrix = substitute(matrix, v, term)
        else:
            kept.append((q, v))
            deps.append(v)
    return build_prenex(kept, matrix)
