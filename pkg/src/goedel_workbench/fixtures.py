"""Named formulas with their expected status in each class of truth sets,
and the runner that checks them by bounded search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .evaluate import evaluate
from .formula import Exists, Formula, has_delta, has_quantifier, is_prenex, parse, split_prenex
from .interp import glue, validate
from .search import SearchSpace, Verdict, check_sat, find_countermodel, space_for
from .truthset import FINITE, UNIT, VDOWN, VUP, GoedelSetDescriptor, builtin, finite_set

Expect = Callable[[GoedelSetDescriptor], bool]


def _always(d: GoedelSetDescriptor) -> bool:
    return True


def _not_unit(d: GoedelSetDescriptor) -> bool:
    return d.kind != UNIT


def _finite_or_up(d: GoedelSetDescriptor) -> bool:
    return d.kind in (FINITE, VUP)


def _finite_or_down(d: GoedelSetDescriptor) -> bool:
    return d.kind in (FINITE, VDOWN)


def _zero_not_isolated(d: GoedelSetDescriptor) -> bool:
    return d.kind in (VDOWN, UNIT)


def _zero_isolated(d: GoedelSetDescriptor) -> bool:
    return not _zero_not_isolated(d)


def _has_middle(d: GoedelSetDescriptor) -> bool:
    return d.kind != FINITE or len(d.values) >= 3


def _at_most(n: int) -> Expect:
    return lambda d: d.kind == FINITE and len(d.values) <= n


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    mode: str  # "valid" or "one-sat"
    expect: Expect
    tag: str
    classically_sat: Optional[bool] = None

    @property
    def formula(self) -> Formula:
        return parse(self.text, warn=False)


def _fin(n: int) -> str:
    ps = [f"p{i}" for i in range(1, n)]
    steps = ["top"] + ps + ["bot"]
    return " | ".join(f"({a} -> {b})" for a, b in zip(steps, steps[1:]))


_V = "valid"
_S = "one-sat"

FIXTURES: tuple = (
    Fixture("I1", "(A -> B) -> ((B -> C) -> (A -> C))", _V, _always, "intuitionistic axiom"),
    Fixture("I2", "(A | A -> A) & (A -> A & A)", _V, _always, "intuitionistic axiom"),
    Fixture("I3", "(A -> A | B) & (A & B -> A)", _V, _always, "intuitionistic axiom"),
    Fixture("I4", "(A | B -> B | A) & (A & B -> B & A)", _V, _always, "intuitionistic axiom"),
    Fixture("I5", "(A -> B) -> (C | A -> C | B)", _V, _always, "intuitionistic axiom"),
    Fixture("I6", "(A & B -> C) -> (A -> (B -> C))", _V, _always, "intuitionistic axiom"),
    Fixture("I7", "(A -> (B -> C)) -> (A & B -> C)", _V, _always, "intuitionistic axiom"),
    Fixture("I8", "bot -> A", _V, _always, "intuitionistic axiom"),
    Fixture("I9", "(A x. P(x)) -> P(y)", _V, _always, "intuitionistic axiom"),
    Fixture("I10", "P(y) -> E x. P(x)", _V, _always, "intuitionistic axiom"),
    Fixture("D1", "D A | ~D A", _V, _always, "delta axiom"),
    Fixture("D2", "D (A | B) -> D A | D B", _V, _always, "delta axiom"),
    Fixture("D3", "D A -> A", _V, _always, "delta axiom"),
    Fixture("D4", "D A -> D D A", _V, _always, "delta axiom"),
    Fixture("D5", "D (A -> B) -> (D A -> D B)", _V, _always, "delta axiom"),
    Fixture("QS", "(A x. (B | P(x))) -> B | (A x. P(x))", _V, _always, "quantifier shift"),
    Fixture("LIN", "(A -> B) | (B -> A)", _V, _always, "linearity"),
    Fixture("ISO0", "(A x. ~~P(x)) -> ~~(A x. P(x))", _V, _zero_isolated, "isolation of 0"),
    Fixture("ISO0'", "~(A x. P(x)) -> E x. ~P(x)", _V, _zero_isolated, "isolation of 0"),
    Fixture("ISO1", "D (E x. P(x)) -> E x. D P(x)", _V, _finite_or_down, "isolation of 1"),
    Fixture("ISO1'", "(A x. ~D P(x)) -> ~D (E x. P(x))", _V, _finite_or_down, "isolation of 1"),
    *(Fixture(f"Fin({n})", _fin(n), _V, _at_most(n), "at most n truth values") for n in range(2, 7)),
    Fixture("S1", "(A x. (P(x) | B)) -> (A x. P(x)) | B", _V, _always, "shift valid everywhere"),
    Fixture("S2", "(B -> E x. P(x)) -> E x. (B -> P(x))", _V, _not_unit, "suprema below 1 attained"),
    Fixture("S3", "((A x. P(x)) -> B) -> E x. (P(x) -> B)", _V, _finite_or_up, "infima attained"),
    Fixture("D-forall", "D (A x. P(x)) <-> A x. D P(x)", _V, _always, "delta shift"),
    Fixture("D-exists", "D (E x. P(x)) <-> E x. D P(x)", _V, _finite_or_down, "delta shift"),
    Fixture("C-up", "E x. (P(x) -> A y. P(y))", _V, _finite_or_up, "infima attained"),
    Fixture("C-down", "E x. ((E y. P(y)) -> P(x))", _V, _not_unit, "suprema below 1 attained"),
    Fixture("F", "~(A x. P(x)) & A x. ~~P(x)", _S, _zero_not_isolated, "descending to 0 unattained", False),
    Fixture(
        "no-inner-accumulation",
        "(A x. (X < P(x))) -> (X < (E x. P(x)))",
        _V,
        _not_unit,
        "accumulation point from below inside (0,1)",
    ),
    Fixture("delta-gadget", "(A x. ~D P(x)) -> ~D (E x. P(x))", _V, _finite_or_down, "delta absent from prenex"),
    Fixture("strict-middle", "~~A & ~D A", _S, _has_middle, "1-sat with delta, classically unsat", False),
)

FIXTURE_NAMES = tuple(f.name for f in FIXTURES)


def fixture(name: str) -> Fixture:
    for f in FIXTURES:
        if f.name == name:
            return f
    raise KeyError(name)


@dataclass(frozen=True)
class FixtureResult:
    name: str
    cls: str
    expected: str
    got: str
    tag: str
    detail: str = ""
    problems: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.got and not self.problems

    def line(self) -> str:
        status = "pass" if self.ok else "fail"
        text = f"fixture={self.name}\tclass={self.cls}\texpected={self.expected}\tgot={self.got}\ttag={self.tag}\tresult={status}"
        if self.detail:
            text += f"\tdetail={self.detail}"
        if self.problems:
            text += f"\tproblems={self.problems}"
        return text


def _status(mode: str, holds: bool) -> str:
    if mode == _V:
        return "valid" if holds else "invalid"
    return "one-sat" if holds else "one-unsat"


def check_countermodel(v: Verdict, f: Formula, d: GoedelSetDescriptor) -> str:
    """Re-checks of a found interpretation: its values lie in the class and
    in [0,1], and widening the ambient truth set leaves the value unchanged."""
    i = v.interpretation
    problems = validate(i, d) + validate(i, builtin("G01"))
    if evaluate(f, i.with_truth_set(builtin("G01"))) != v.value:
        problems.append("value changed under a wider truth set")
    return "; ".join(problems)


def run_fixture(fx: Fixture, label: str, d: GoedelSetDescriptor, space: Optional[SearchSpace] = None) -> FixtureResult:
    space = space or space_for(d)
    f = fx.formula
    if fx.mode == _V:
        v = find_countermodel(f, space)
        holds = not v.found
    else:
        v = check_sat(f, "one-sat", space)
        holds = v.found
    problems = check_countermodel(v, f, d) if v.found else ""
    if v.exceeded:
        problems = "search bounds exceeded"
    detail = ""
    if v.found and v.interpretation.is_nat:
        detail = "over NAT value=" + str(v.value)
    expected = _status(fx.mode, fx.expect(d))
    return FixtureResult(fx.name, label, expected, _status(fx.mode, holds), fx.tag, detail, problems)


def run_classical(fx: Fixture, max_domain: int = 4) -> FixtureResult:
    space = SearchSpace((0, 1), tuple(range(1, max_domain + 1)))
    v = check_sat(fx.formula, "classical-sat", space)
    expected = "classical-sat" if fx.classically_sat else "classical-unsat"
    got = "classical-sat" if v.found else "classical-unsat"
    return FixtureResult(fx.name, "classical", expected, got, fx.tag)


def glue_to_finite(f: Formula, v: Verdict) -> tuple[Fraction, object, GoedelSetDescriptor]:
    """Glue a countermodel of an existential formula at its own value and
    return (value, glued interpretation, finite truth set it lives in)."""
    omega = v.value
    g = glue(v.interpretation, omega)
    k = 1
    vals = {Fraction(0), Fraction(1)}
    while 1 - Fraction(1, k) <= omega:
        vals.add(1 - Fraction(1, k))
        k += 1
    return evaluate(f, g), g, finite_set(sorted(vals))


def is_existential(f: Formula) -> bool:
    if not has_quantifier(f):
        return True
    if not is_prenex(f):
        return False
    prefix, _ = split_prenex(f)
    return all(q is Exists for q, _ in prefix)


def run_gluing(label: str, d: GoedelSetDescriptor) -> list[FixtureResult]:
    """For Delta-free existential fixtures with a countermodel in ``d``,
    glue at the countermodel value and re-check over the finite set below."""
    out = []
    for fx in FIXTURES:
        f = fx.formula
        if fx.mode != _V or has_delta(f) or not is_existential(f):
            continue
        v = find_countermodel(f, space_for(d))
        if not v.found or v.value == 0:
            continue
        value, g, fin = glue_to_finite(f, v)
        ok = value == v.value and not validate(g, fin)
        got = "countermodel" if ok else "lost"
        vals = ",".join(str(x) for x in fin.values)
        out.append(FixtureResult(fx.name, f"{label}->glued", "countermodel", got, "gluing", f"values={{{vals}}}"))
    return out


DEFAULT_CLASSES = ("G3", "G4", "G5", "Gup", "Gdown", "G01")


def run_fixture_suite(classes=DEFAULT_CLASSES, gluing: bool = True) -> list[FixtureResult]:
    """Every fixture against every class, the classical checks, and the
    gluing construction for classes with 1 the only accumulation point."""
    results = []
    descs = [(c, builtin(c)) if isinstance(c, str) else c for c in classes]
    for fx in FIXTURES:
        for label, d in descs:
            results.append(run_fixture(fx, label, d))
        if fx.classically_sat is not None:
            results.append(run_classical(fx))
    if gluing:
        for label, d in descs:
            if d.kind == VUP:
                results.extend(run_gluing(label, d))
    return results
