"""Interpretations over finite domains or the natural numbers, the gluing
transformation, and membership checks against Goedel sets."""
from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .rationals import RationalError, fmt, parse_unit
from .seqvalue import SeqError, SeqValue, format_seq, glue_value, parse_seq, seq_glue
from .truthset import FINITE, UNIT, VDOWN, VUP, GoedelSetDescriptor, builtin

Element = Union[str, int]


class InterpretationError(ValueError):
    pass


class Nat:
    """Marker for the domain of natural numbers."""

    def __repr__(self) -> str:
        return "NAT"

    def __eq__(self, other) -> bool:
        return isinstance(other, Nat)

    def __hash__(self) -> int:
        return hash("NAT")


NAT = Nat()


def default_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"d{i}" for i in range(k))


@dataclass(frozen=True, eq=False)
class Interpretation:
    """A domain with valuations.

    ``preds`` maps a predicate name to a table ``{argument tuple: value}``
    over finite domains.  Over ``NAT`` a 0-ary predicate maps to its value
    and a unary predicate to a ``SeqValue``.  ``funcs`` maps function and
    constant names to tables ``{argument tuple: element}``.
    """

    domain: Union[tuple, Nat]
    preds: dict
    funcs: dict = field(default_factory=dict)
    assign: dict = field(default_factory=dict)
    truth_set: Optional[GoedelSetDescriptor] = None

    @property
    def is_nat(self) -> bool:
        return isinstance(self.domain, Nat)

    def __post_init__(self) -> None:
        if self.is_nat:
            if self.funcs:
                raise InterpretationError("function symbols are not allowed over NAT")
            for name, val in self.preds.items():
                if not isinstance(val, (SeqValue, Fraction, int)):
                    raise InterpretationError(f"predicate {name} over NAT must be a value or a sequence")
            for v, n in self.assign.items():
                if not isinstance(n, int) or n < 0:
                    raise InterpretationError(f"variable {v} must be assigned a natural number")
        else:
            if not self.domain:
                raise InterpretationError("domain must be nonempty")
            dom = set(self.domain)
            for name, table in self.preds.items():
                for args, v in table.items():
                    if not set(args) <= dom:
                        raise InterpretationError(f"{name}{args}: argument outside the domain")
                    if not 0 <= v <= 1:
                        raise InterpretationError(f"{name}{args} = {v} outside [0, 1]")
            for name, table in self.funcs.items():
                for args, e in table.items():
                    if e not in dom or not set(args) <= dom:
                        raise InterpretationError(f"function {name}{args}: element outside the domain")
            for v, e in self.assign.items():
                if e not in dom:
                    raise InterpretationError(f"variable {v} assigned outside the domain")
        if self.truth_set is not None and self.truth_set.kind == FINITE:
            bad = validate(self, self.truth_set)
            if bad:
                raise InterpretationError("; ".join(bad))

    def arity(self, pred: str) -> int:
        if self.is_nat:
            return 1 if isinstance(self.preds[pred], SeqValue) else 0
        table = self.preds[pred]
        return len(next(iter(table))) if table else 0

    def atomic_values(self) -> list[Fraction]:
        """All atomic values of a finite-domain interpretation (overrides and
        limits for sequences)."""
        out: list[Fraction] = []
        for val in self.preds.values():
            if isinstance(val, SeqValue):
                out.extend(v for _, v in val.overrides)
                out.append(val.alpha)
            elif isinstance(val, dict):
                out.extend(val.values())
            else:
                out.append(Fraction(val))
        return out

    def with_truth_set(self, ts: Optional[GoedelSetDescriptor]) -> "Interpretation":
        return Interpretation(self.domain, self.preds, self.funcs, self.assign, ts)

    def map_values(self, fn) -> "Interpretation":
        """Apply ``fn`` to every atomic value (finite domains and 0-ary NAT atoms)."""
        preds = {}
        for name, val in self.preds.items():
            if isinstance(val, dict):
                preds[name] = {k: fn(v) for k, v in val.items()}
            elif isinstance(val, SeqValue):
                raise InterpretationError("map_values does not act on sequences")
            else:
                preds[name] = fn(Fraction(val))
        return Interpretation(self.domain, preds, self.funcs, self.assign, None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interpretation):
            return NotImplemented
        return (
            self.domain == other.domain
            and _canon(self.preds) == _canon(other.preds)
            and self.funcs == other.funcs
            and self.assign == other.assign
        )

    def __hash__(self) -> int:
        return hash((self.domain, tuple(sorted(self.preds))))


def _canon(preds: dict) -> dict:
    out = {}
    for k, v in preds.items():
        if isinstance(v, SeqValue):
            out[k] = v.normalized()
        elif isinstance(v, dict):
            out[k] = v
        else:
            out[k] = Fraction(v)
    return out


def finite_interp(elements, preds=None, funcs=None, assign=None, truth_set=None) -> Interpretation:
    if isinstance(elements, int):
        elements = default_names(elements)
    return Interpretation(tuple(elements), dict(preds or {}), dict(funcs or {}), dict(assign or {}), truth_set)


def prop_interp(values: dict) -> Interpretation:
    """Single-element interpretation of propositional atoms."""
    return Interpretation(("a",), {k: {(): Fraction(v)} for k, v in values.items()})


def nat_interp(preds: dict, assign=None, truth_set=None) -> Interpretation:
    conv = {}
    for k, v in preds.items():
        conv[k] = v if isinstance(v, SeqValue) else Fraction(v)
    return Interpretation(NAT, conv, {}, dict(assign or {}), truth_set)


# ------------------------------------------------------------- gluing


def glue(i: Interpretation, omega) -> Interpretation:
    """Keep atomic values at most ``omega`` and raise the others to 1."""
    omega = Fraction(omega)
    if not 0 <= omega < 1:
        raise InterpretationError("gluing point must lie in [0, 1)")
    preds = {}
    for name, val in i.preds.items():
        if isinstance(val, SeqValue):
            preds[name] = seq_glue(val, omega)
        elif isinstance(val, dict):
            preds[name] = {k: glue_value(v, omega) for k, v in val.items()}
        else:
            preds[name] = glue_value(Fraction(val), omega)
    return Interpretation(i.domain, preds, i.funcs, i.assign, i.truth_set)


def omega_isolated_from_above(i: Interpretation, f, omega) -> bool:
    """False iff some value family met while evaluating ``f`` descends
    strictly to ``omega``."""
    from .evaluate import evaluate

    omega = Fraction(omega)
    if not i.is_nat:
        return True
    _, trace = evaluate(f, i, trace=True)
    for entry in trace:
        for s in entry.families():
            if s.alpha == omega and s.beta > 0:
                return False
    return True


# ------------------------------------------------------------ validate


def _seq_member(s: SeqValue, v: GoedelSetDescriptor) -> bool:
    if s.beta == 0:
        return v.contains(s.alpha)
    if v.kind == UNIT:
        return True
    if v.kind == FINITE:
        return False  # infinitely many distinct values
    b = 1 / abs(s.beta)
    if b.denominator != 1 or (s.gamma * b).denominator != 1:
        return False
    if v.kind == VDOWN:
        return s.alpha == 0 and s.beta > 0
    if v.kind == VUP:
        return s.alpha == 1 and s.beta < 0
    return False


def validate(i: Interpretation, v: GoedelSetDescriptor) -> list[str]:
    """Violations of membership of atomic values (and sequence limits) in ``v``."""
    out: list[str] = []
    for name, val in sorted(i.preds.items()):
        if isinstance(val, SeqValue):
            for n, x in val.overrides:
                if not v.contains(x):
                    out.append(f"{name}({n}) = {fmt(x)} not in {v.name or v.kind}")
            if not _seq_member(val, v):
                out.append(f"{name} = {format_seq(val)} leaves {v.name or v.kind}")
        elif isinstance(val, dict):
            for args, x in sorted(val.items(), key=lambda kv: kv[0]):
                if not v.contains(x):
                    a = f"({', '.join(map(str, args))})" if args else ""
                    out.append(f"{name}{a} = {fmt(x)} not in {v.name or v.kind}")
        else:
            if not v.contains(Fraction(val)):
                out.append(f"{name} = {fmt(val)} not in {v.name or v.kind}")
    return out


# ---------------------------------------------------------- file format

_ATOM_LINE = re.compile(r"^atom\s+([A-Za-z_]\w*)\s*(?:\(([^)]*)\))?\s*=\s*(\S+)$")
_FUNC_LINE = re.compile(r"^func\s+([A-Za-z_]\w*)\s*(?:\(([^)]*)\))?\s*=\s*(\S+)$")
_SEQ_OVERRIDE = re.compile(r"^seq\s+([A-Za-z_]\w*)\s+override\s+(\d+)\s*=\s*(\S+)$")
_SEQ_LINE = re.compile(r"^seq\s+([A-Za-z_]\w*)\s*=\s*(.+)$")
_ASSIGN_LINE = re.compile(r"^assign\s+([A-Za-z_]\w*)\s*=\s*(\S+)$")


def loads(text: str) -> Interpretation:
    """Parse the line-oriented interpretation format.

    Lines: ``domain finite k [names...]`` or ``domain nat``;
    ``atom P(a,b) = 3/10``; ``seq A = 0 + 1/(n+2)``;
    ``seq A override 0 = 1/2``; ``func f(a) = b``; ``assign x = a``;
    ``truthset G3``.  ``#`` starts a comment.
    """
    domain = None
    preds: dict = {}
    funcs: dict = {}
    assign: dict = {}
    seqs: dict = {}
    overrides: dict = {}
    truth_set = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("domain"):
                parts = line.split()
                if parts[1:2] == ["nat"]:
                    domain = NAT
                elif parts[1:2] == ["finite"] and len(parts) >= 3:
                    k = int(parts[2])
                    names = tuple(parts[3:]) or default_names(k)
                    if len(names) != k:
                        raise InterpretationError(f"expected {k} element names")
                    domain = names
                else:
                    raise InterpretationError("expected 'domain finite k' or 'domain nat'")
            elif line.startswith("truthset"):
                truth_set = builtin(line.split()[1])
            elif m := _ATOM_LINE.match(line):
                name, args, val = m.groups()
                key = tuple(a.strip() for a in args.split(",")) if args else ()
                preds.setdefault(name, {})[key] = parse_unit(val)
            elif m := _FUNC_LINE.match(line):
                name, args, val = m.groups()
                key = tuple(a.strip() for a in args.split(",")) if args else ()
                funcs.setdefault(name, {})[key] = val
            elif m := _SEQ_OVERRIDE.match(line):
                name, n, val = m.groups()
                overrides.setdefault(name, {})[int(n)] = parse_unit(val)
            elif m := _SEQ_LINE.match(line):
                seqs[m.group(1)] = parse_seq(m.group(2))
            elif m := _ASSIGN_LINE.match(line):
                assign[m.group(1)] = m.group(2)
            else:
                raise InterpretationError("unrecognised line")
        except (RationalError, SeqError, InterpretationError, ValueError, IndexError) as exc:
            raise InterpretationError(f"line {lineno}: {exc}") from None
    if domain is None:
        raise InterpretationError("missing 'domain' line")
    if isinstance(domain, Nat):
        out: dict = {}
        for name, table in preds.items():
            if set(table) != {()}:
                raise InterpretationError(f"atom {name} over NAT must be 0-ary; use 'seq'")
            out[name] = table[()]
        for name, s in seqs.items():
            ov = dict(s.overrides)
            ov.update(overrides.get(name, {}))
            out[name] = SeqValue(s.alpha, s.beta, s.gamma, ov)
        for name in overrides:
            if name not in seqs:
                raise InterpretationError(f"override for undeclared sequence {name}")
        nat_assign = {}
        for v, e in assign.items():
            if not e.isdigit():
                raise InterpretationError(f"variable {v} must be assigned a natural number")
            nat_assign[v] = int(e)
        return Interpretation(NAT, out, {}, nat_assign, truth_set)
    if seqs or overrides:
        raise InterpretationError("'seq' lines need 'domain nat'")
    return Interpretation(domain, preds, funcs, assign, truth_set)


def dumps(i: Interpretation) -> str:
    lines = []
    if i.is_nat:
        lines.append("domain nat")
    else:
        lines.append(f"domain finite {len(i.domain)} " + " ".join(map(str, i.domain)))
    if i.truth_set is not None and i.truth_set.name:
        lines.append(f"truthset {i.truth_set.name}")
    for name in sorted(i.preds):
        val = i.preds[name]
        if isinstance(val, SeqValue):
            lines.append(f"seq {name} = {format_seq(val)}")
            for n, x in val.overrides:
                lines.append(f"seq {name} override {n} = {fmt(x)}")
        elif isinstance(val, dict):
            for args in sorted(val, key=lambda a: tuple(map(str, a))):
                a = f"({','.join(map(str, args))})" if args else ""
                lines.append(f"atom {name}{a} = {fmt(val[args])}")
        else:
            lines.append(f"atom {name} = {fmt(val)}")
    for name in sorted(i.funcs):
        for args in sorted(i.funcs[name], key=lambda a: tuple(map(str, a))):
            a = f"({','.join(map(str, args))})" if args else ""
            lines.append(f"func {name}{a} = {i.funcs[name][args]}")
    for v in sorted(i.assign):
        lines.append(f"assign {v} = {i.assign[v]}")
    return "\n".join(lines) + "\n"


def all_tuples(domain: tuple, k: int):
    return itertools.product(domain, repeat=k)
