from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goedel_workbench.truthset import (
    ABSTRACT,
    DELTA_EXISTS,
    DELTA_FORALL,
    NO,
    OPEN,
    ROW_COUNTABLE,
    ROW_FINITE,
    ROW_GUP,
    ROW_ZERO_ISOLATED,
    ROW_ZERO_NOT_ISOLATED,
    S1,
    S2,
    S3,
    T2_NOT_PERFECT,
    T2_PERFECT,
    YES,
    DescriptorError,
    GoedelSetDescriptor,
    MissingFlags,
    builtin,
    classify,
    dumps_descriptor,
    finite_set,
    loads_descriptor,
    v_m,
)


def abstract(**flags):
    return GoedelSetDescriptor(ABSTRACT, **flags)


def test_v_m():
    assert v_m(2) == (0, 1)
    assert v_m(4) == (0, F(1, 2), F(2, 3), 1)
    with pytest.raises(DescriptorError):
        v_m(1)


@pytest.mark.parametrize(
    "kind, member, outsider",
    [("Gup", F(4, 5), F(1, 3)), ("Gdown", F(1, 7), F(2, 7)), ("G01", F(5, 13), F(3, 2)), ("G3", F(1, 2), F(1, 3))],
)
def test_membership(kind, member, outsider):
    d = builtin(kind)
    assert d.contains(0) and d.contains(1)
    assert d.contains(member) and not d.contains(outsider)


def test_abstract_membership_undefined():
    with pytest.raises(DescriptorError):
        abstract(cardinality="uncountable", zero_isolated=True).contains(F(1, 2))


def test_finite_values_checked():
    with pytest.raises(DescriptorError):
        finite_set([0, F(1, 2)])
    with pytest.raises(DescriptorError):
        finite_set([0, F(1, 2), F(1, 2), 1])


class TestClassify:
    def test_finite(self):
        c = classify(builtin("G4"))
        assert c.table1_row == ROW_FINITE
        assert (c.logical_prenex, c.logical_prenex_with_delta) == (YES, YES)
        assert c.logic_recursively_enumerable
        assert c.shift_rules_available == {S1, S2, S3, DELTA_FORALL, DELTA_EXISTS}
        assert c.prenex_obstruction == ""

    def test_gup(self):
        c = classify(builtin("Gup"))
        assert c.table1_row == ROW_GUP
        assert (c.logical_prenex, c.logical_prenex_with_delta) == (YES, NO)
        assert (c.pos_valid_prenex, c.pos_valid_prenex_with_delta) == (YES, NO)
        assert c.validity_equiv_prenex == YES
        assert not c.logic_recursively_enumerable
        assert c.shift_rules_available == {S1, S2, S3}

    def test_gdown(self):
        c = classify(builtin("Gdown"))
        assert c.table1_row == ROW_COUNTABLE
        assert c.logical_prenex == NO and c.validity_equiv_prenex == OPEN
        assert c.shift_rules_available == {S1}
        assert c.prenex_obstruction == "zero-not-isolated"

    def test_unit(self):
        c = classify(builtin("G01", with_delta=True))
        assert c.table1_row == ROW_ZERO_NOT_ISOLATED and c.table2_row == T2_PERFECT
        assert c.logic_recursively_enumerable and c.prenex_fragment_recursively_enumerable
        assert c.validity_equiv_prenex == YES
        assert c.notes

    def test_uncountable_zero_isolated(self):
        c = classify(abstract(cardinality="uncountable", zero_isolated=True, has_acc_point_from_above=True))
        assert c.table1_row == ROW_ZERO_ISOLATED
        assert c.pos_valid_prenex == YES and c.logical_prenex == NO
        assert c.prenex_obstruction == "accumulation-point-from-above"

    def test_not_perfect(self):
        c = classify(
            abstract(cardinality="uncountable", zero_isolated=False, zero_in_perfect_kernel=False)
        )
        assert c.table2_row == T2_NOT_PERFECT
        assert not c.logic_recursively_enumerable

    def test_missing_flags_named(self):
        with pytest.raises(MissingFlags) as info:
            classify(abstract(cardinality="uncountable"))
        assert info.value.missing == ["zero_isolated"]
        with pytest.raises(MissingFlags) as info:
            classify(abstract(cardinality="uncountable", zero_isolated=False))
        assert info.value.missing == ["zero_in_perfect_kernel"]

    @pytest.mark.parametrize(
        "flags",
        [
            dict(cardinality="finite", zero_isolated=False),
            dict(cardinality="uncountable", only_acc_point_is_one_from_below=True),
            dict(cardinality="countable", zero_in_perfect_kernel=True),
            dict(zero_isolated=True, every_nbhd_of_zero_uncountable=True),
            dict(every_nbhd_of_zero_uncountable=True, zero_in_perfect_kernel=False),
        ],
    )
    def test_inconsistent_rejected(self, flags):
        with pytest.raises(DescriptorError):
            classify(abstract(**flags))


finite_sets = st.sets(st.fractions(min_value=0, max_value=1, max_denominator=12), max_size=6).map(
    lambda s: tuple(sorted(s | {F(0), F(1)}))
)


@given(finite_sets, st.booleans())
def test_every_finite_set_is_fully_prenexable(values, delta):
    c = classify(finite_set(values, with_delta=delta))
    assert c.table1_row == ROW_FINITE
    assert c.prenex_cell(delta)[1] == YES
    assert DELTA_EXISTS in c.shift_rules_available


@given(finite_sets, st.booleans())
def test_descriptor_text_roundtrip(values, delta):
    d = finite_set(values, with_delta=delta, name="S")
    back = loads_descriptor(dumps_descriptor(d))
    assert back.values == d.values and back.with_delta == delta and back.name == "S"


def test_descriptor_files(fixture_path):
    for name, row in [("gup.desc", ROW_GUP), ("zero_isolated.desc", ROW_ZERO_ISOLATED), ("unit.desc", ROW_ZERO_NOT_ISOLATED)]:
        with open(fixture_path(name)) as fh:
            assert classify(loads_descriptor(fh.read())).table1_row == row
    with pytest.raises(DescriptorError):
        loads_descriptor("kind = finite\nvalues = 0, 1\nflags.colour = red\n")
    with pytest.raises(DescriptorError):
        loads_descriptor("values = 0, 1\n")
