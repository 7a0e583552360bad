"""Goedel sets described by kind or by order/topology flags, and the
classification of the corresponding logics with respect to prenex forms."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .rationals import parse_rational

FINITE = "finite"
VUP = "vup"
VDOWN = "vdown"
UNIT = "unit"
ABSTRACT = "abstract"
KINDS = (FINITE, VUP, VDOWN, UNIT, ABSTRACT)

COUNTABLE = "countable"
UNCOUNTABLE = "uncountable"

FLAG_NAMES = (
    "zero_isolated",
    "has_acc_point_from_above",
    "only_acc_point_is_one_from_below",
    "every_nbhd_of_zero_uncountable",
    "zero_in_perfect_kernel",
)


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class GoedelSetDescriptor:
    kind: str
    values: tuple = ()
    # "finite", "countable" or "uncountable"; finite sets also carry size
    cardinality: Optional[str] = None
    size: Optional[int] = None
    zero_isolated: Optional[bool] = None
    has_acc_point_from_above: Optional[bool] = None
    only_acc_point_is_one_from_below: Optional[bool] = None
    every_nbhd_of_zero_uncountable: Optional[bool] = None
    zero_in_perfect_kernel: Optional[bool] = None
    with_delta: bool = False
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DescriptorError(f"unknown kind {self.kind!r}")
        if self.kind == FINITE:
            vals = tuple(Fraction(v) for v in self.values)
            object.__setattr__(self, "values", vals)
            if not vals or vals[0] != 0 or vals[-1] != 1:
                raise DescriptorError("finite Goedel set must contain 0 and 1")
            if any(a >= b for a, b in zip(vals, vals[1:])):
                raise DescriptorError("finite values must be strictly increasing")

    @property
    def cardinality_label(self) -> str:
        if self.cardinality == FINITE:
            return f"finite({self.size})" if self.size else FINITE
        return self.cardinality or "unknown"

    def contains(self, v: Fraction) -> bool:
        """Exact membership for concrete kinds."""
        v = Fraction(v)
        if not 0 <= v <= 1:
            return False
        if self.kind == FINITE:
            return v in self.values
        if self.kind == UNIT:
            return True
        if self.kind == VDOWN:
            return v == 0 or (v.numerator == 1)
        if self.kind == VUP:
            return v == 1 or (1 - v).numerator == 1
        raise DescriptorError("membership is undefined for abstract descriptors")


def finite_set(values, with_delta: bool = False, name: str = "") -> GoedelSetDescriptor:
    return GoedelSetDescriptor(FINITE, tuple(values), with_delta=with_delta, name=name)


def v_m(m: int) -> tuple:
    """The m-element set {0, 1/2, 2/3, ..., 1 - 1/(m-1), 1}."""
    if m < 2:
        raise DescriptorError("V_m needs m >= 2")
    return tuple(Fraction(0) if k == 1 else 1 - Fraction(1, k) for k in range(1, m)) + (
        Fraction(1),
    )


def derive_flags(d: GoedelSetDescriptor) -> GoedelSetDescriptor:
    """Fill in the topological flags of a concrete descriptor."""
    if d.kind == FINITE:
        flags = dict(
            cardinality=FINITE,
            size=len(d.values),
            zero_isolated=True,
            has_acc_point_from_above=False,
            only_acc_point_is_one_from_below=False,
            every_nbhd_of_zero_uncountable=False,
            zero_in_perfect_kernel=False,
        )
    elif d.kind == VUP:
        flags = dict(
            cardinality=COUNTABLE,
            zero_isolated=True,
            has_acc_point_from_above=False,
            only_acc_point_is_one_from_below=True,
            every_nbhd_of_zero_uncountable=False,
            zero_in_perfect_kernel=False,
        )
    elif d.kind == VDOWN:
        flags = dict(
            cardinality=COUNTABLE,
            zero_isolated=False,
            has_acc_point_from_above=True,
            only_acc_point_is_one_from_below=False,
            every_nbhd_of_zero_uncountable=False,
            zero_in_perfect_kernel=False,
        )
    elif d.kind == UNIT:
        flags = dict(
            cardinality=UNCOUNTABLE,
            zero_isolated=False,
            has_acc_point_from_above=True,
            only_acc_point_is_one_from_below=False,
            every_nbhd_of_zero_uncountable=True,
            zero_in_perfect_kernel=True,
        )
    else:
        check_consistent(d)
        return d
    out = replace(d, **flags)
    check_consistent(out)
    return out


def check_consistent(d: GoedelSetDescriptor) -> None:
    """Reject flag combinations no closed subset of [0, 1] can have."""
    problems = []
    card = d.cardinality
    if card not in (None, FINITE, COUNTABLE, UNCOUNTABLE):
        problems.append(f"unknown cardinality {card!r}")
    if card == FINITE:
        if d.zero_isolated is False:
            problems.append("finite sets have 0 isolated")
        if d.has_acc_point_from_above:
            problems.append("finite sets have no accumulation points")
        if d.only_acc_point_is_one_from_below:
            problems.append("finite sets have no accumulation points")
    if d.only_acc_point_is_one_from_below:
        if d.has_acc_point_from_above:
            problems.append("single accumulation point at 1 excludes accumulation from above")
        if d.zero_isolated is False:
            problems.append("single accumulation point at 1 forces 0 isolated")
        if card == UNCOUNTABLE:
            problems.append("a set with one accumulation point is countable")
    if card == UNCOUNTABLE and d.has_acc_point_from_above is False:
        problems.append("uncountable closed sets have accumulation points from above")
    if card in (FINITE, COUNTABLE):
        if d.every_nbhd_of_zero_uncountable or d.zero_in_perfect_kernel:
            problems.append("countable sets have an empty perfect kernel")
    if d.zero_isolated and (d.every_nbhd_of_zero_uncountable or d.zero_in_perfect_kernel):
        problems.append("an isolated 0 is not in the perfect kernel")
    a, b = d.every_nbhd_of_zero_uncountable, d.zero_in_perfect_kernel
    if a is not None and b is not None and a != b:
        problems.append("0 is in the perfect kernel iff every neighbourhood of 0 is uncountable")
    if problems:
        raise DescriptorError("inconsistent descriptor: " + "; ".join(problems))


# ------------------------------------------------------------ classify

YES, NO, OPEN = "yes", "no", "open"

ROW_FINITE = "finite"
ROW_GUP = "G_up"
ROW_COUNTABLE = "countable without G_up"
ROW_ZERO_ISOLATED = "uncountable, 0 isolated"
ROW_ZERO_NOT_ISOLATED = "uncountable, 0 not isolated"

T2_FINITE = "finite"
T2_ZERO_ISOLATED = "uncountable, 0 isolated"
T2_PERFECT = "uncountable, 0 in perfect set"
T2_NOT_PERFECT = "uncountable, 0 not in perfect set"
T2_COUNTABLE = "countable"

# (without D, with D, >0-validity, >0-validity with D)
PRENEX_TABLE = {
    ROW_FINITE: (YES, YES, YES, YES),
    ROW_GUP: (YES, NO, YES, NO),
    ROW_COUNTABLE: (NO, NO, NO, NO),
    ROW_ZERO_ISOLATED: (NO, NO, YES, NO),
    ROW_ZERO_NOT_ISOLATED: (NO, NO, NO, NO),
}

# (with D, without D)
VALIDITY_EQUIV_TABLE = {
    T2_FINITE: (YES, YES),
    T2_ZERO_ISOLATED: (YES, YES),
    T2_PERFECT: (YES, YES),
    T2_NOT_PERFECT: (NO, NO),
    T2_COUNTABLE: (OPEN, OPEN),
}

S1, S2, S3, DELTA_FORALL, DELTA_EXISTS = "S1", "S2", "S3", "Delta-forall", "Delta-exists"


@dataclass(frozen=True)
class Classification:
    table1_row: str
    table2_row: str
    logical_prenex: str
    logical_prenex_with_delta: str
    pos_valid_prenex: str
    pos_valid_prenex_with_delta: str
    validity_equiv_prenex: str
    logic_recursively_enumerable: bool
    prenex_fragment_recursively_enumerable: bool
    shift_rules_available: frozenset
    notes: tuple = field(default=())
    prenex_obstruction: str = ""

    def prenex_cell(self, with_delta: bool) -> tuple[str, str]:
        """Return (column name, verdict) of the logical-equivalence table."""
        if with_delta:
            return "with Delta", self.logical_prenex_with_delta
        return "without Delta", self.logical_prenex


class MissingFlags(DescriptorError):
    def __init__(self, missing: list[str]):
        super().__init__("descriptor lacks flags: " + ", ".join(missing))
        self.missing = missing


def _require(d: GoedelSetDescriptor, *names: str) -> None:
    missing = [n for n in names if getattr(d, n) is None]
    if missing:
        raise MissingFlags(missing)


def classify(d: GoedelSetDescriptor) -> Classification:
    if d.kind != ABSTRACT:
        d = derive_flags(d)
    check_consistent(d)
    _require(d, "cardinality")
    notes: list[str] = []
    card = d.cardinality
    if card == FINITE:
        row1, row2 = ROW_FINITE, T2_FINITE
        is_gup = False
    elif card == COUNTABLE:
        _require(d, "only_acc_point_is_one_from_below", "zero_isolated")
        is_gup = bool(d.only_acc_point_is_one_from_below and d.zero_isolated)
        row1 = ROW_GUP if is_gup else ROW_COUNTABLE
        row2 = T2_COUNTABLE
    else:
        is_gup = False
        _require(d, "zero_isolated")
        if d.zero_isolated:
            row1, row2 = ROW_ZERO_ISOLATED, T2_ZERO_ISOLATED
        else:
            perfect = d.zero_in_perfect_kernel
            if perfect is None:
                perfect = d.every_nbhd_of_zero_uncountable
            if perfect is None:
                raise MissingFlags(["zero_in_perfect_kernel"])
            row1 = ROW_ZERO_NOT_ISOLATED
            row2 = T2_PERFECT if perfect else T2_NOT_PERFECT

    lp, lpd, pv, pvd = PRENEX_TABLE[row1]
    t2_delta, t2_plain = VALIDITY_EQUIV_TABLE[row2]
    if is_gup:
        # G_up admits effective validity-equivalent prenex forms via shifts
        t2_delta = t2_plain = YES
    veq = t2_delta if d.with_delta else t2_plain
    if d.with_delta and card == UNCOUNTABLE:
        notes.append("validity-equivalence with Delta copied from the Delta-free column")

    if card == FINITE:
        re_logic = True
    elif card == UNCOUNTABLE:
        re_logic = bool(d.zero_isolated or row2 == T2_PERFECT)
    else:
        re_logic = False
    if card in (FINITE, UNCOUNTABLE):
        re_prenex = True
    else:
        re_prenex = False
        if not is_gup:
            notes.append("recursive enumerability of the countable prenex fragment is not established")

    if card == FINITE or is_gup:
        obstruction = ""
    elif not d.zero_isolated:
        obstruction = "zero-not-isolated"
    elif card == UNCOUNTABLE or d.has_acc_point_from_above:
        obstruction = "accumulation-point-from-above"
    else:
        obstruction = "accumulation-point-below-one-from-below"

    rules = {S1}
    if card == FINITE or is_gup:
        rules |= {S2, S3}
    if card == FINITE:
        rules |= {DELTA_FORALL, DELTA_EXISTS}

    return Classification(
        table1_row=row1,
        table2_row=row2,
        logical_prenex=lp,
        logical_prenex_with_delta=lpd,
        pos_valid_prenex=pv,
        pos_valid_prenex_with_delta=pvd,
        validity_equiv_prenex=veq,
        logic_recursively_enumerable=re_logic,
        prenex_fragment_recursively_enumerable=re_prenex,
        shift_rules_available=frozenset(rules),
        notes=tuple(notes),
        prenex_obstruction=obstruction,
    )


# ------------------------------------------------------------ builtins

def builtin(name: str, with_delta: bool = False) -> GoedelSetDescriptor:
    """Built-in descriptors: ``G2`` .. ``G9``, ``Gup``, ``Gdown``, ``G01``."""
    if name.startswith("G") and name[1:].isdigit():
        m = int(name[1:])
        if 2 <= m <= 9:
            return derive_flags(finite_set(v_m(m), with_delta=with_delta, name=name))
    kinds = {"Gup": VUP, "Gdown": VDOWN, "G01": UNIT}
    if name in kinds:
        return derive_flags(GoedelSetDescriptor(kinds[name], with_delta=with_delta, name=name))
    raise DescriptorError(f"unknown built-in Goedel set {name!r}")


BUILTIN_NAMES = tuple(f"G{m}" for m in range(2, 10)) + ("Gup", "Gdown", "G01")


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    raise DescriptorError(f"not a boolean: {text!r}")


def loads_descriptor(text: str) -> GoedelSetDescriptor:
    """Read the flat ``key = value`` descriptor format."""
    rec: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DescriptorError(f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        rec[key.strip()] = val.strip()
    kind = rec.pop("kind", None)
    if kind is None:
        raise DescriptorError("descriptor lacks 'kind'")
    kw: dict = {"kind": kind}
    if "values" in rec:
        kw["values"] = tuple(parse_rational(v) for v in rec.pop("values").split(","))
    if "name" in rec:
        kw["name"] = rec.pop("name")
    for key, val in rec.items():
        if not key.startswith("flags."):
            raise DescriptorError(f"unknown key {key!r}")
        flag = key[len("flags."):]
        if flag == "cardinality":
            if val.startswith("finite(") and val.endswith(")"):
                kw["cardinality"] = FINITE
                kw["size"] = int(val[7:-1])
            else:
                kw["cardinality"] = val
        elif flag in FLAG_NAMES or flag == "with_delta":
            kw[flag] = _bool(val)
        else:
            raise DescriptorError(f"unknown flag {flag!r}")
    d = GoedelSetDescriptor(**kw)
    return derive_flags(d) if d.kind != ABSTRACT else (check_consistent(d) or d)


def dumps_descriptor(d: GoedelSetDescriptor) -> str:
    lines = [f"kind = {d.kind}"]
    if d.name:
        lines.append(f"name = {d.name}")
    if d.values:
        lines.append("values = " + ", ".join(str(v) for v in d.values))
    if d.cardinality is not None:
        lines.append(f"flags.cardinality = {d.cardinality_label}")
    for n in FLAG_NAMES:
        v = getattr(d, n)
        if v is not None:
            lines.append(f"flags.{n} = {str(v).lower()}")
    lines.append(f"flags.with_delta = {str(d.with_delta).lower()}")
    return "\n".join(lines) + "\n"


def report_lines(c: Classification, label: str) -> list[str]:
    rules = ",".join(sorted(c.shift_rules_available))
    lines = [
        f"set={label}",
        f"table1_row={c.table1_row}",
        f"logical_prenex={c.logical_prenex}",
        f"logical_prenex_with_delta={c.logical_prenex_with_delta}",
        f"pos_valid_prenex={c.pos_valid_prenex}",
        f"pos_valid_prenex_with_delta={c.pos_valid_prenex_with_delta}",
        f"table2_row={c.table2_row}",
        f"validity_equiv_prenex={c.validity_equiv_prenex}",
        f"logic_recursively_enumerable={str(c.logic_recursively_enumerable).lower()}",
        f"prenex_fragment_recursively_enumerable={str(c.prenex_fragment_recursively_enumerable).lower()}",
        f"shift_rules_available={rules}",
    ]
    if c.prenex_obstruction:
        lines.append(f"prenex_obstruction={c.prenex_obstruction}")
    lines.extend(f"note={n}" for n in c.notes)
    return lines
