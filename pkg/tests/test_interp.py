from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goedel_workbench.interp import (
    NAT,
    InterpretationError,
    dumps,
    finite_interp,
    glue,
    loads,
    nat_interp,
    validate,
)
from goedel_workbench.seqvalue import SeqValue
from goedel_workbench.truthset import builtin

FIN = finite_interp(
    2,
    {"P": {("a",): F(1, 3), ("b",): F(2, 3)}, "F": {("a", "a"): 1, ("a", "b"): 0, ("b", "a"): F(1, 2), ("b", "b"): 1}},
    {"f": {("a",): "b", ("b",): "a"}},
)
NATI = nat_interp({"A": SeqValue(F(1, 2), -1, 2), "B": F(1, 2)})

FIN_TEXT = """domain finite 2 a b
atom F(a,a) = 1
atom F(a,b) = 0
atom F(b,a) = 1/2
atom F(b,b) = 1
atom P(a) = 1/3
atom P(b) = 2/3
func f(a) = b
func f(b) = a
"""


def test_dumps_is_frozen():
    assert dumps(FIN) == FIN_TEXT
    assert dumps(NATI) == "domain nat\nseq A = 1/2 - 1/(n+2)\natom B = 1/2\n"


def test_loads_roundtrip():
    back = loads(FIN_TEXT)
    assert back.domain == ("a", "b")
    assert back.preds == FIN.preds and back.funcs == FIN.funcs
    nat = loads(dumps(NATI))
    assert nat.domain == NAT and nat.preds == NATI.preds


def test_loads_overrides_and_comments():
    i = loads("domain nat  # naturals\nseq A = 0 + 1/(n+1)\nseq A override 0 = 1/2\nassign x = 3\ntruthset Gdown\n")
    assert i.preds["A"].value(0) == F(1, 2)
    assert i.preds["A"].value(3) == F(1, 4)
    assert i.assign == {"x": 3}
    assert i.truth_set.name == "Gdown"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("domain finite 2\natom P(c) = 1/2", "outside the domain"),
        ("domain nat\nseq A = 0.5", "line 2"),
        ("atom P = 1/2", "missing 'domain'"),
        ("domain finite 1\natom P = 3/2", "outside [0, 1]"),
        ("domain finite 1\nwhat", "unrecognised line"),
        ("domain finite 1\nseq A = 1/2", "'seq' lines need"),
        ("domain nat\nseq A override 0 = 1", "undeclared sequence"),
        ("domain nat\nassign x = a", "natural number"),
    ],
)
def test_loads_errors(text, fragment):
    with pytest.raises(InterpretationError) as info:
        loads(text)
    assert fragment in str(info.value)


def test_finite_truth_set_enforced():
    with pytest.raises(InterpretationError):
        finite_interp(1, {"P": {(): F(1, 3)}}, truth_set=builtin("G3"))


def test_validate():
    assert validate(NATI, builtin("Gup")) == ["A = 1/2 - 1/(n+2) leaves Gup"]
    assert validate(NATI, builtin("G01")) == []
    assert validate(FIN, builtin("G3")) == ["P(a) = 1/3 not in G3", "P(b) = 2/3 not in G3"]
    assert validate(nat_interp({"A": SeqValue(0, 1, 2)}), builtin("Gdown")) == []
    assert validate(nat_interp({"A": SeqValue(0, 1, 2)}), builtin("Gup")) != []


def test_glue():
    assert glue(FIN, F(1, 3)).preds["P"] == {("a",): F(1, 3), ("b",): 1}
    glued = glue(NATI, F(1, 3)).preds["A"]
    assert [glued.value(n) for n in range(6)] == [0, F(1, 6), F(1, 4), F(3, 10), F(1, 3), 1]
    with pytest.raises(InterpretationError):
        glue(FIN, 1)


@given(st.dictionaries(st.sampled_from("PQR"), st.fractions(0, 1, max_denominator=9), min_size=1))
def test_propositional_text_roundtrip(values):
    i = finite_interp(1, {k: {(): v} for k, v in values.items()})
    assert loads(dumps(i)).preds == i.preds
