"""Exact evaluation of formulas under interpretations.

Finite domains are evaluated by direct recursion.  Over the natural numbers
a subformula with one free variable evaluates to a ``SeqValue`` (the family
of its instances), and quantifiers take exact infima and suprema of those
families.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .formula import (
    And,
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
    free_vars,
    to_text,
)
from .interp import Interpretation
from .seqvalue import ONE, ZERO, SeqValue, seq_delta, seq_imp, seq_max, seq_min


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class TraceEntry:
    formula: Formula
    env: tuple
    value: Union[Fraction, SeqValue]
    family: Optional[SeqValue] = None
    attained: Optional[bool] = None

    def families(self) -> list[SeqValue]:
        out = [s for s in (self.value, self.family) if isinstance(s, SeqValue)]
        return out

    def render(self) -> str:
        env = ",".join(f"{k}={v}" for k, v in self.env)
        text = f"{to_text(self.formula)}\t[{env}]\t{self.value}"
        if self.family is not None:
            text += f"\tinstances={self.family}"
        if self.attained is not None:
            text += "\tattained" if self.attained else "\tproper"
        return text


def _imp(a: Fraction, b: Fraction) -> Fraction:
    return ONE if a <= b else b


def evaluate(f: Formula, i: Interpretation, trace: bool = False):
    """Value of ``f`` under ``i``; with ``trace=True`` returns ``(value, entries)``."""
    entries: Optional[list] = [] if trace else None
    if i.is_nat:
        s = _nat(f, i, dict(i.assign), None, entries)
        if not s.is_constant:
            raise EvalError("formula is not closed under the assignment")
        value = s.alpha
    else:
        value = _fin(f, i, dict(i.assign), entries)
    return (value, entries) if trace else value


def eval_formula(f: Formula, i: Interpretation) -> Fraction:
    return evaluate(f, i)


# ------------------------------------------------------- finite domains


def _term(t, i: Interpretation, env: dict):
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvalError(f"unassigned free variable {t.name}") from None
    if isinstance(t, Const):
        try:
            return i.funcs[t.name][()]
        except KeyError:
            raise EvalError(f"no interpretation for constant {t.name}") from None
    args = tuple(_term(a, i, env) for a in t.args)
    try:
        return i.funcs[t.fn][args]
    except KeyError:
        raise EvalError(f"no interpretation for {t.fn}{args}") from None


def _fin(f: Formula, i: Interpretation, env: dict, tr) -> Fraction:
    if isinstance(f, Atom):
        args = tuple(_term(a, i, env) for a in f.args)
        try:
            v = i.preds[f.pred][args]
        except KeyError:
            raise EvalError(f"no value for {f.pred}{args}") from None
    elif isinstance(f, Bottom):
        v = ZERO
    elif isinstance(f, TopF):
        v = ONE
    elif isinstance(f, And):
        v = min(_fin(f.left, i, env, tr), _fin(f.right, i, env, tr))
    elif isinstance(f, Or):
        v = max(_fin(f.left, i, env, tr), _fin(f.right, i, env, tr))
    elif isinstance(f, Implies):
        v = _imp(_fin(f.left, i, env, tr), _fin(f.right, i, env, tr))
    elif isinstance(f, Delta):
        v = ONE if _fin(f.body, i, env, tr) == ONE else ZERO
    elif isinstance(f, (Forall, Exists)):
        vals = []
        inner = dict(env)
        for e in i.domain:
            inner[f.var] = e
            vals.append(_fin(f.body, i, inner, tr))
        v = min(vals) if isinstance(f, Forall) else max(vals)
    else:
        raise EvalError(f"unknown node {f!r}")
    if tr is not None:
        tr.append(TraceEntry(f, tuple(sorted(env.items())), v))
    return v


# ------------------------------------------------------ natural numbers


def _nat(f: Formula, i: Interpretation, env: dict, sym: Optional[str], tr) -> SeqValue:
    if isinstance(f, Atom):
        val = i.preds.get(f.pred)
        if val is None:
            raise EvalError(f"no value for predicate {f.pred}")
        if not f.args:
            if isinstance(val, SeqValue):
                raise EvalError(f"predicate {f.pred} is unary")
            out = SeqValue.const(val)
        else:
            if len(f.args) != 1 or not isinstance(val, SeqValue):
                raise EvalError("over NAT only unary and 0-ary predicates are supported")
            (t,) = f.args
            if not isinstance(t, Var):
                raise EvalError("function symbols are not allowed over NAT")
            if t.name in env:
                out = SeqValue.const(val.value(env[t.name]))
            elif t.name == sym:
                out = val
            else:
                raise EvalError(f"unassigned free variable {t.name}")
    elif isinstance(f, Bottom):
        out = SeqValue.const(0)
    elif isinstance(f, TopF):
        out = SeqValue.const(1)
    elif isinstance(f, And):
        out = seq_min(_nat(f.left, i, env, sym, tr), _nat(f.right, i, env, sym, tr))
    elif isinstance(f, Or):
        out = seq_max(_nat(f.left, i, env, sym, tr), _nat(f.right, i, env, sym, tr))
    elif isinstance(f, Implies):
        out = seq_imp(_nat(f.left, i, env, sym, tr), _nat(f.right, i, env, sym, tr))
    elif isinstance(f, Delta):
        out = seq_delta(_nat(f.body, i, env, sym, tr))
    elif isinstance(f, (Forall, Exists)):
        inner_env = {k: v for k, v in env.items() if k != f.var}
        open_vars = free_vars(f.body) - set(inner_env) - {f.var}
        if open_vars:
            raise EvalError(
                "over NAT every quantified subformula may have at most one free variable"
            )
        family = _nat(f.body, i, inner_env, f.var, tr)
        v, attained = family.inf() if isinstance(f, Forall) else family.sup()
        out = SeqValue.const(v)
        if tr is not None:
            tr.append(TraceEntry(f, tuple(sorted(env.items())), v, family, attained))
        return out
    else:
        raise EvalError(f"unknown node {f!r}")
    if tr is not None:
        tr.append(TraceEntry(f, tuple(sorted(env.items())), out if not out.is_constant else out.alpha))
    return out


# ---------------------------------------------------------- classical


def classical_eval(f: Formula, i: Interpretation) -> bool:
    """Two-valued evaluation; every atomic value must be 0 or 1."""
    if i.is_nat:
        raise EvalError("classical evaluation needs a finite domain")
    for v in i.atomic_values():
        if v not in (0, 1):
            raise EvalError(f"non-Boolean atomic value {v}")
    return _cl(f, i, dict(i.assign))


def _cl(f: Formula, i: Interpretation, env: dict) -> bool:
    if isinstance(f, Atom):
        return i.preds[f.pred][tuple(_term(a, i, env) for a in f.args)] == 1
    if isinstance(f, Bottom):
        return False
    if isinstance(f, TopF):
        return True
    if isinstance(f, And):
        return _cl(f.left, i, env) and _cl(f.right, i, env)
    if isinstance(f, Or):
        return _cl(f.left, i, env) or _cl(f.right, i, env)
    if isinstance(f, Implies):
        return (not _cl(f.left, i, env)) or _cl(f.right, i, env)
    if isinstance(f, Delta):
        return _cl(f.body, i, env)
    inner = dict(env)
    results = []
    for e in i.domain:
        inner[f.var] = e
        results.append(_cl(f.body, i, inner))
    return all(results) if isinstance(f, Forall) else any(results)


# ------------------------------------------------------- propositional


def eval_prop(f: Formula, values: dict) -> Fraction:
    """Evaluate a quantifier-free formula of 0-ary atoms under ``values``."""
    if isinstance(f, Atom):
        return values[f.pred]
    if isinstance(f, Bottom):
        return ZERO
    if isinstance(f, TopF):
        return ONE
    if isinstance(f, And):
        return min(eval_prop(f.left, values), eval_prop(f.right, values))
    if isinstance(f, Or):
        return max(eval_prop(f.left, values), eval_prop(f.right, values))
    if isinstance(f, Implies):
        return _imp(eval_prop(f.left, values), eval_prop(f.right, values))
    if isinstance(f, Delta):
        return ONE if eval_prop(f.body, values) == ONE else ZERO
    raise EvalError("eval_prop needs a quantifier-free formula")
