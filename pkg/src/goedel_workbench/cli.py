"""Command-line front end.

Exit status: 0 success, 1 input error, 2 unsupported transformation,
3 search bounds exceeded, 4 fixture expectations not met.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from typing import Optional, Sequence

from . import chains as ch
from . import interp as ip
from .evaluate import EvalError, evaluate
from .fixtures import run_fixture_suite
from .formula import ArityError, Formula, FreeVariableWarning, ParseError, free_vars, parse, signature, to_text
from .rationals import RationalError, fmt, parse_unit
from .search import SearchError, check_sat, find_countermodel, space_for
from .seqvalue import SeqError
from .transform import TransformError, Unsupported, kuroda, prenexify, skolemize
from .truthset import (
    BUILTIN_NAMES,
    DescriptorError,
    GoedelSetDescriptor,
    builtin,
    classify,
    loads_descriptor,
    report_lines,
)

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_BOUNDS, EXIT_FIXTURES = 0, 1, 2, 3, 4


class InputError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        code = "unknown-command" if "invalid choice" in message else "usage"
        raise InputError(code, message)


# ------------------------------------------------------------- inputs


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("missing-file", f"{path}: {exc.strerror}") from None


def load_formula(arg: str, constants: str = "") -> Formula:
    """``arg`` is a file holding a formula or the formula itself."""
    text = _read(arg) if os.path.isfile(arg) else arg
    consts = frozenset(c for c in constants.split(",") if c)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", FreeVariableWarning)
        f = parse(text, consts)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    signature(f)
    return f


def load_set(arg: str, with_delta: bool = False) -> tuple[str, GoedelSetDescriptor]:
    if arg in BUILTIN_NAMES:
        return arg, builtin(arg, with_delta)
    if not os.path.isfile(arg):
        raise InputError("missing-file", f"{arg}: not a built-in set and no such file")
    d = loads_descriptor(_read(arg))
    if with_delta and not d.with_delta:
        d = GoedelSetDescriptor(**{**d.__dict__, "with_delta": True})
    return d.name or os.path.basename(arg), d


def load_interp(path: str) -> ip.Interpretation:
    return ip.loads(_read(path))


# ------------------------------------------------------------- output


class Out:
    def __init__(self, fmt_: str, path: Optional[str]):
        self.machine = fmt_ == "machine"
        self.lines: list[str] = []
        self.path = path

    def text(self, line: str) -> None:
        if not self.machine:
            self.lines.append(line)

    def record(self, **fields) -> None:
        if self.machine:
            self.lines.append("\t".join(f"{k}={v}" for k, v in fields.items()))

    def both(self, line: str, **fields) -> None:
        self.text(line)
        self.record(**fields)

    def flush(self) -> None:
        body = "".join(line + "\n" for line in self.lines)
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


# ------------------------------------------------------------ commands


def cmd_parse(a, out: Out) -> int:
    f = load_formula(a.formula, a.constants)
    preds, funcs = signature(f)
    text = to_text(f, sugar=not a.no_sugar)
    out.text(text)
    out.record(
        formula=text,
        free=",".join(sorted(free_vars(f))),
        preds=",".join(f"{k}/{v}" for k, v in sorted(preds.items())),
        funcs=",".join(f"{k}/{v}" for k, v in sorted(funcs.items())),
    )
    return EXIT_OK


def cmd_eval(a, out: Out) -> int:
    f = load_formula(a.formula, a.constants)
    i = load_interp(a.interp)
    if a.trace:
        value, entries = evaluate(f, i, trace=True)
        for e in entries:
            out.text(e.render())
            attained = "" if e.attained is None else ("attained" if e.attained else "proper")
            out.record(subformula=to_text(e.formula), env=",".join(f"{k}={v}" for k, v in e.env),
                       value=e.value, instances=e.family or "", attainment=attained)
    else:
        value = evaluate(f, i)
    out.both(f"value = {fmt(value)}", value=fmt(value))
    return EXIT_OK


def _unsupported(r: Unsupported, out: Out) -> int:
    out.text(str(r))
    out.record(status="unsupported", code=r.code, row=r.row, column=r.column, reason=r.reason, rule=r.rule)
    return EXIT_UNSUPPORTED


def cmd_prenex(a, out: Out) -> int:
    f = load_formula(a.formula, a.constants)
    label, d = load_set(a.set, a.delta)
    r = prenexify(f, classify(d), a.mode)
    if isinstance(r, Unsupported):
        return _unsupported(r, out)
    text = to_text(r.prenex)
    if a.trace:
        for rule, pos, var in r.trace:
            out.both(f"{rule} at {pos} ({var})", step=rule, position=pos, var=var)
    out.text(text)
    out.text(f"guarantee: {r.guarantee}")
    out.record(status="ok", set=label, mode=a.mode, prenex=text, guarantee=r.guarantee)
    return EXIT_OK


def cmd_skolemize(a, out: Out) -> int:
    text = to_text(skolemize(load_formula(a.formula, a.constants), a.mode))
    out.both(text, mode=a.mode, formula=text)
    return EXIT_OK


def cmd_kuroda(a, out: Out) -> int:
    text = to_text(kuroda(load_formula(a.formula, a.constants)))
    out.both(text, formula=text)
    return EXIT_OK


def cmd_chains(a, out: Out) -> int:
    atoms = [x for x in a.atoms.split(",") if x]
    for c in ch.enumerate_chains(atoms, restricted=a.restricted, max_levels=a.levels):
        out.both(str(c), chain=str(c), levels=c.levels)
    return EXIT_OK


def cmd_cnf(a, out: Out) -> int:
    f = load_formula(a.formula, a.constants)
    g = ch.cnf_delta_1(f) if a.form == 1 else ch.cnf_delta_2(f)
    text = to_text(g)
    out.both(text, form=a.form, formula=text)
    return EXIT_OK


def cmd_valid_prop(a, out: Out) -> int:
    f = load_formula(a.formula, a.constants)
    c = ch.countermodel_chain(f, a.levels)
    levels = a.levels if a.levels is not None else "infinite"
    if c is None:
        out.both("valid", result="valid", levels=levels)
    else:
        out.both(f"invalid: {c}", result="invalid", levels=levels, chain=str(c))
    return EXIT_OK


def cmd_classify(a, out: Out) -> int:
    label, d = load_set(a.set, a.delta)
    lines = report_lines(classify(d), label)
    for line in lines:
        out.text(line)
    out.record(**dict(line.split("=", 1) for line in lines if not line.startswith("note=")),
               notes="; ".join(line[5:] for line in lines if line.startswith("note=")))
    return EXIT_OK


def cmd_glue(a, out: Out) -> int:
    i = load_interp(a.interp)
    omega = parse_unit(a.omega)
    if a.formula:
        f = load_formula(a.formula, a.constants)
        if not ip.omega_isolated_from_above(i, f, omega):
            print(f"warning: {fmt(omega)} is approached from above by an infimum; "
                  "values of universal subformulas need not glue", file=sys.stderr)
    text = ip.dumps(ip.glue(i, omega))
    out.lines.extend(text.rstrip("\n").split("\n"))
    return EXIT_OK


def cmd_search(a, out: Out) -> int:
    f = load_formula(a.formula, a.constants)
    label, d = load_set(a.set, a.delta)
    space = space_for(d, a.max_domain, a.templates, workers=a.workers)
    v = find_countermodel(f, space) if a.mode == "valid" else check_sat(f, a.mode, space)
    value = "" if v.value is None else fmt(v.value)
    out.text(f"{v.kind} ({v.explored} interpretations; {v.bounds})")
    out.record(result=v.kind, set=label, mode=a.mode, value=value, explored=v.explored, bounds=v.bounds)
    if v.interpretation is not None:
        out.text(f"value = {value}")
        out.lines.extend(ip.dumps(v.interpretation).rstrip("\n").split("\n"))
    return EXIT_BOUNDS if v.exceeded else EXIT_OK


def cmd_fixtures(a, out: Out) -> int:
    names = [s for s in (a.set or "").split(",") if s]
    classes = [load_set(n, a.delta) for n in names] if names else None
    results = run_fixture_suite(classes) if classes else run_fixture_suite()
    for r in results:
        if out.machine:
            out.lines.append(r.line())
        else:
            out.lines.append(f"{'pass' if r.ok else 'FAIL'}  {r.name:<24} {r.cls:<12} expected {r.expected:<16} got {r.got}")
    failed = sum(not r.ok for r in results)
    out.text(f"{len(results) - failed} passed, {failed} failed")
    return EXIT_FIXTURES if failed else EXIT_OK


# -------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--constants", default="", help="comma-separated names read as constants")

    p = _Parser(prog="goedel-workbench", description="Goedel logic workbench")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    def formula(sp):
        sp.add_argument("--formula", required=True, help="formula text or a file holding it")

    def goedel_set(sp, required=True):
        sp.add_argument("--set", required=required, help="built-in name or descriptor file")
        sp.add_argument("--delta", action="store_true", help="the language includes Delta")

    sp = add("parse", cmd_parse, "parse and print a formula")
    formula(sp)
    sp.add_argument("--no-sugar", action="store_true")

    sp = add("eval", cmd_eval, "evaluate a formula under an interpretation")
    formula(sp)
    sp.add_argument("--interp", required=True)
    sp.add_argument("--trace", action="store_true")

    sp = add("prenex", cmd_prenex, "prenex form for a class of truth sets")
    formula(sp)
    goedel_set(sp)
    sp.add_argument("--mode", choices=("logical", "pos-valid", "validity-re"), default="logical")
    sp.add_argument("--trace", action="store_true")

    sp = add("skolemize", cmd_skolemize, "skolemize a prenex formula")
    formula(sp)
    sp.add_argument("--mode", choices=("validity", "sat"), default="validity")

    sp = add("kuroda", cmd_kuroda, "Kuroda double-negation translation")
    formula(sp)

    sp = add("chains", cmd_chains, "enumerate chains over atoms")
    sp.add_argument("--atoms", required=True)
    sp.add_argument("--restricted", action="store_true")
    sp.add_argument("--levels", type=int)

    sp = add("cnf", cmd_cnf, "chain normal form")
    formula(sp)
    sp.add_argument("--form", type=int, choices=(1, 2), default=1)

    sp = add("valid-prop", cmd_valid_prop, "propositional validity via chains")
    formula(sp)
    sp.add_argument("--levels", type=int)

    sp = add("classify", cmd_classify, "classification of a truth set")
    goedel_set(sp)

    sp = add("glue", cmd_glue, "glue an interpretation at omega")
    sp.add_argument("--interp", required=True)
    sp.add_argument("--omega", required=True)
    sp.add_argument("--formula", help="warn when omega breaks gluing for this formula")

    sp = add("search", cmd_search, "bounded countermodel or witness search")
    formula(sp)
    goedel_set(sp)
    sp.add_argument("--mode", choices=("valid", "one-sat", "pos-sat", "classical-sat"), default="valid")
    sp.add_argument("--max-domain", type=int, default=2)
    sp.add_argument("--templates", action="store_true", help="also search SeqValue templates over NAT")
    sp.add_argument("--workers", type=int, default=1)

    sp = add("fixtures", cmd_fixtures, "run the fixture suite")
    goedel_set(sp, required=False)
    return p


_ERRORS = (
    (RationalError, "malformed-rational"),
    (ParseError, "parse-error"),
    (ArityError, "arity-error"),
    (DescriptorError, "descriptor-error"),
    (ip.InterpretationError, "interpretation-error"),
    (SeqError, "sequence-error"),
    (EvalError, "eval-error"),
    (TransformError, "transform-error"),
    (ch.ChainError, "chain-error"),
    (SearchError, "search-error"),
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        a = build_parser().parse_args(argv)
        out = Out(a.format, a.out)
        status = a.fn(a, out)
        out.flush()
        return status
    except InputError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except tuple(e for e, _ in _ERRORS) as exc:
        code = next(c for e, c in _ERRORS if isinstance(exc, e))
        print(f"error: {code}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
