"""Bounded countermodel and witness search.

Finite domains are enumerated first (domain size ascending, then every
predicate and function table in lexicographic order of value indices),
followed by interpretations over the natural numbers built from SeqValue
templates.  Hits from the fast rank-based evaluator are re-checked with the
exact evaluator before they are reported.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .evaluate import EvalError, classical_eval, evaluate
from .formula import (
    And,
    Atom,
    Bottom,
    Const,
    Delta,
    Forall,
    Formula,
    Implies,
    Or,
    TopF,
    Var,
    existential_closure,
    rectify,
    signature,
    universal_closure,
)
from .interp import Interpretation, default_names, finite_interp, nat_interp, validate
from .seqvalue import SeqValue
from .truthset import FINITE, UNIT, VDOWN, VUP, GoedelSetDescriptor, v_m

MODES = ("valid", "pos-valid", "one-sat", "pos-sat", "classical-sat")
DEFAULT_MAX_INTERPS = 10**7
TRUNCATION = 7


class SearchError(ValueError):
    pass


def max_interps_from_env() -> int:
    raw = os.environ.get("WORKBENCH_MAX_INTERPS")
    if raw is None:
        return DEFAULT_MAX_INTERPS
    try:
        cap = int(raw)
    except ValueError:
        raise SearchError(f"WORKBENCH_MAX_INTERPS is not an integer: {raw!r}") from None
    if cap < 1:
        raise SearchError("WORKBENCH_MAX_INTERPS must be positive")
    return cap


@dataclass(frozen=True)
class SearchSpace:
    truth_values: tuple
    domain_sizes: tuple = (1, 2, 3)
    templates: tuple = ()
    truth_set: Optional[GoedelSetDescriptor] = None
    max_interps: Optional[int] = None
    workers: int = 1

    def __post_init__(self) -> None:
        vals = tuple(sorted({Fraction(v) for v in self.truth_values}))
        if not vals or vals[0] != 0 or vals[-1] != 1:
            raise SearchError("truth lists must contain 0 and 1")
        if any(v < 0 or v > 1 for v in vals):
            raise SearchError("truth values must lie in [0, 1]")
        object.__setattr__(self, "truth_values", vals)
        object.__setattr__(self, "domain_sizes", tuple(self.domain_sizes))
        object.__setattr__(self, "templates", tuple(self.templates))

    @property
    def cap(self) -> int:
        return self.max_interps if self.max_interps is not None else max_interps_from_env()

    def describe(self) -> str:
        vals = ",".join(str(v) for v in self.truth_values)
        sizes = ",".join(map(str, self.domain_sizes))
        return f"values={{{vals}}} domains={{{sizes}}} templates={len(self.templates)}"


def truncation(d: GoedelSetDescriptor, size: int = TRUNCATION) -> tuple:
    """A finite sublist of the truth set containing 0 and 1."""
    if d.kind == FINITE:
        return tuple(d.values)
    if d.kind == VUP:
        return v_m(size)
    if d.kind == VDOWN:
        return (Fraction(0),) + tuple(Fraction(1, k) for k in range(size - 1, 0, -1))
    return tuple(Fraction(k, size - 1) for k in range(size))


def default_templates(d: GoedelSetDescriptor) -> tuple:
    """Non-constant SeqValue families that stay inside the truth set."""
    down = [SeqValue(0, 1, g) for g in range(1, 5)]
    up = [SeqValue(1, -1, g) for g in range(1, 5)]
    inner = [SeqValue(Fraction(1, 2), -1, g) for g in range(2, 5)]
    if d.kind == VDOWN:
        out = down
    elif d.kind == VUP:
        out = up
    elif d.kind == UNIT:
        out = down + up + inner
    else:
        out = []
    return tuple(s for s in out if not validate(nat_interp({"P": s}), d))


def space_for(
    d: GoedelSetDescriptor,
    max_domain: int = 2,
    templates: bool = True,
    max_interps: Optional[int] = None,
    workers: int = 1,
) -> SearchSpace:
    return SearchSpace(
        truncation(d),
        tuple(range(1, max_domain + 1)),
        default_templates(d) if templates else (),
        d,
        max_interps,
        workers,
    )


@dataclass(frozen=True)
class Verdict:
    """``kind`` is ``valid-bounded``, ``countermodel``, ``witness`` or ``not-found``."""

    kind: str
    interpretation: Optional[Interpretation] = None
    value: Optional[Fraction] = None
    explored: int = 0
    bounds: str = ""
    exceeded: bool = False

    @property
    def found(self) -> bool:
        return self.kind in ("countermodel", "witness")


# ------------------------------------------------- rank-based evaluator


class _Frame:
    __slots__ = ("k", "v", "f", "top")

    def __init__(self, k: int, top: int):
        self.k, self.top = k, top
        self.v: tuple = ()
        self.f: tuple = ()


def _layout(table: dict, k: int) -> tuple[dict, int]:
    offsets, pos = {}, 0
    for name in sorted(table):
        offsets[name] = pos
        pos += k ** table[name]
    return offsets, pos


def _compile_term(t, foff: dict):
    if isinstance(t, Var):
        name = t.name
        return lambda env, fr: env[name]
    if isinstance(t, Const):
        off = foff[t.name]
        return lambda env, fr: fr.f[off]
    off = foff[t.fn]
    args = [_compile_term(a, foff) for a in t.args]

    def app(env, fr):
        idx = 0
        for a in args:
            idx = idx * fr.k + a(env, fr)
        return fr.f[off + idx]

    return app


def _compile(f: Formula, poff: dict, foff: dict):
    if isinstance(f, Atom):
        off = poff[f.pred]
        args = [_compile_term(a, foff) for a in f.args]
        if not args:
            return lambda env, fr: fr.v[off]
        if len(args) == 1:
            (a,) = args
            return lambda env, fr: fr.v[off + a(env, fr)]

        def atom(env, fr):
            idx = 0
            for a in args:
                idx = idx * fr.k + a(env, fr)
            return fr.v[off + idx]

        return atom
    if isinstance(f, Bottom):
        return lambda env, fr: 0
    if isinstance(f, TopF):
        return lambda env, fr: fr.top
    if isinstance(f, Delta):
        b = _compile(f.body, poff, foff)
        return lambda env, fr: fr.top if b(env, fr) == fr.top else 0
    if isinstance(f, (And, Or, Implies)):
        a, b = _compile(f.left, poff, foff), _compile(f.right, poff, foff)
        if isinstance(f, And):
            return lambda env, fr: min(a(env, fr), b(env, fr))
        if isinstance(f, Or):
            return lambda env, fr: max(a(env, fr), b(env, fr))

        def imp(env, fr):
            x, y = a(env, fr), b(env, fr)
            return fr.top if x <= y else y

        return imp
    body = _compile(f.body, poff, foff)
    var = f.var
    if isinstance(f, Forall):

        def forall(env, fr):
            best = fr.top
            for e in range(fr.k):
                env[var] = e
                v = body(env, fr)
                if v < best:
                    best = v
                    if best == 0:
                        break
            return best

        return forall

    def exists(env, fr):
        best = 0
        for e in range(fr.k):
            env[var] = e
            v = body(env, fr)
            if v > best:
                best = v
                if best == fr.top:
                    break
        return best

    return exists


def _accept(mode: str, rank: int, top: int) -> bool:
    if mode == "valid":
        return rank < top
    if mode == "pos-valid":
        return rank == 0
    if mode == "pos-sat":
        return rank > 0
    return rank == top


def _build(k: int, preds: dict, funcs: dict, values: tuple, vals: tuple, fvals: tuple) -> Interpretation:
    names = default_names(k)
    ptab, pos = {}, 0
    for name in sorted(preds):
        table = {}
        for args in itertools.product(range(k), repeat=preds[name]):
            table[tuple(names[a] for a in args)] = values[vals[pos]]
            pos += 1
        ptab[name] = table
    ftab, pos = {}, 0
    for name in sorted(funcs):
        table = {}
        for args in itertools.product(range(k), repeat=funcs[name]):
            table[tuple(names[a] for a in args)] = names[fvals[pos]]
            pos += 1
        ftab[name] = table
    return finite_interp(names, ptab, ftab)


def _scan_size(f, preds, funcs, values, k, mode, start, cap, shard=0, nshards=1):
    """First accepted global index at domain size ``k`` (or None) and the
    number of interpretations at this size."""
    poff, npv = _layout(preds, k)
    foff, nfv = _layout(funcs, k)
    top = len(values) - 1
    prog = _compile(f, poff, foff)
    fr = _Frame(k, top)
    total = len(values) ** npv * k**nfv
    ranges = [range(len(values))] * npv + [range(k)] * nfv
    for j, combo in enumerate(itertools.product(*ranges)):
        if start + j >= cap:
            break
        if j % nshards != shard:
            continue
        fr.v, fr.f = combo[:npv], combo[npv:]
        if _accept(mode, prog({}, fr), top):
            return start + j, combo[:npv], combo[npv:], total
    return None, None, None, total


def _scan_shard(args):
    return _scan_size(*args)


def _prepare(f: Formula, mode: str) -> Formula:
    if mode not in MODES:
        raise SearchError(f"unknown search mode {mode!r}")
    closed = universal_closure(f) if mode in ("valid", "pos-valid") else existential_closure(f)
    return rectify(closed)


def search(f: Formula, space: SearchSpace, mode: str = "valid") -> Verdict:
    """Run the bounded search; the first interpretation in canonical order
    meeting ``mode`` is returned."""
    f = _prepare(f, mode)
    preds, funcs = signature(f)
    values = (Fraction(0), Fraction(1)) if mode == "classical-sat" else space.truth_values
    cap = space.cap
    hit_kind = "countermodel" if mode in ("valid", "pos-valid") else "witness"
    explored = 0
    for k in space.domain_sizes:
        if space.workers > 1:
            jobs = [(f, preds, funcs, values, k, mode, explored, cap, s, space.workers) for s in range(space.workers)]
            with ProcessPoolExecutor(space.workers) as pool:
                results = list(pool.map(_scan_shard, jobs))
            hits = [r for r in results if r[0] is not None]
            total = results[0][3]
            found = min(hits, key=lambda r: r[0]) if hits else None
        else:
            r = _scan_size(f, preds, funcs, values, k, mode, explored, cap)
            total = r[3]
            found = r if r[0] is not None else None
        if found is not None:
            idx, vals, fvals, _ = found
            interp = _build(k, preds, funcs, values, vals, fvals)
            return _report(f, interp, mode, hit_kind, idx + 1, space)
        explored += total
        if explored >= cap:
            return Verdict("not-found", explored=cap, bounds=space.describe(), exceeded=True)
    if space.templates and mode != "classical-sat" and not funcs and all(a <= 1 for a in preds.values()):
        unary = [p for p in sorted(preds) if preds[p] == 1]
        consts = [SeqValue.const(v) for v in values]
        choices = [consts + list(space.templates) if p in unary else list(values) for p in sorted(preds)]
        for combo in itertools.product(*choices):
            if explored >= cap:
                return Verdict("not-found", explored=cap, bounds=space.describe(), exceeded=True)
            explored += 1
            interp = nat_interp(dict(zip(sorted(preds), combo)))
            try:
                v = evaluate(f, interp)
            except EvalError:
                break  # outside the fragment the sequence evaluator handles
            if _accept_exact(mode, v):
                return _report(f, interp, mode, hit_kind, explored, space)
    kind = "valid-bounded" if mode in ("valid", "pos-valid") else "not-found"
    return Verdict(kind, explored=explored, bounds=space.describe())


def _accept_exact(mode: str, v: Fraction) -> bool:
    if mode == "valid":
        return v < 1
    if mode == "pos-valid":
        return v == 0
    if mode == "pos-sat":
        return v > 0
    return v == 1


def _report(f, interp, mode, kind, explored, space) -> Verdict:
    v = evaluate(f, interp)
    if not _accept_exact(mode, v):
        raise AssertionError("fast evaluator disagrees with exact evaluation")
    if mode == "classical-sat" and not classical_eval(f, interp):
        raise AssertionError("classical re-check failed")
    return Verdict(kind, interp, v, explored, space.describe())


def find_countermodel(f: Formula, space: SearchSpace, mode: str = "valid") -> Verdict:
    """Search for an interpretation with value below 1 (``valid``) or equal
    to 0 (``pos-valid``)."""
    if mode not in ("valid", "pos-valid"):
        raise SearchError("countermodel search mode is 'valid' or 'pos-valid'")
    return search(f, space, mode)


def check_sat(f: Formula, mode: str, space: SearchSpace) -> Verdict:
    if mode not in ("one-sat", "pos-sat", "classical-sat"):
        raise SearchError("satisfiability mode is one-sat, pos-sat or classical-sat")
    return search(f, space, mode)
