from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings

from conftest import EIGHTHS, prop_formulas
from goedel_workbench.chains import (
    ChainError,
    chain_formula,
    cnf_delta_1,
    cnf_delta_2,
    countermodel_chain,
    decide_valid_prop,
    enumerate_chains,
    psi_eval,
    realize,
    restricted_equivalent,
)
from goedel_workbench.evaluate import eval_prop
from goedel_workbench.formula import parse, prop_atoms

ATOMS = ("X", "Y", "Z")


@pytest.mark.parametrize("k, count", [(0, 1), (1, 3), (2, 11), (3, 51)])
def test_chain_counts(k, count):
    assert len(enumerate_chains(ATOMS[:k])) == count


def test_chain_rendering_and_order():
    assert [str(c) for c in enumerate_chains(["X"])] == ["bot < X == top", "bot < X < top", "bot == X < top"]
    assert len(enumerate_chains(["X"], restricted=True)) == 2
    assert len(enumerate_chains(["X", "Y"], max_levels=3)) == 9


def test_realize_is_faithful():
    for c in enumerate_chains(ATOMS):
        vals = realize(c)
        assert all(0 <= v <= 1 for v in vals.values())
        assert F(psi_eval(parse("X"), c), c.top) == vals["X"]


@pytest.mark.parametrize(
    "text",
    ["(X -> Y) | (Y -> X)", "~~(X | ~X)", "(X & Y -> Z) -> X -> Y -> Z", "D X -> X", "D X | ~D X", "~X | ~~X"],
)
def test_tautologies(text):
    assert decide_valid_prop(parse(text))
    assert countermodel_chain(parse(text)) is None


@pytest.mark.parametrize(
    "text, levels, valid",
    [
        ("X | ~X", None, False),
        ("X | ~X", 2, True),
        ("(X -> Y) | (Y -> Z) | (Z -> X) ", None, True),
        ("X | (X -> Y) | ~Y", 3, True),
        ("X | (X -> Y) | ~Y", 4, False),
        ("~~X -> X", None, False),
    ],
)
def test_validity_per_level(text, levels, valid):
    assert decide_valid_prop(parse(text), levels) == valid


def test_countermodel_is_a_real_countermodel():
    c = countermodel_chain(parse("~~X -> X"))
    assert eval_prop(parse("~~X -> X"), realize(c)) < 1


def test_quantifiers_rejected():
    with pytest.raises(ChainError):
        decide_valid_prop(parse("A x. P(x)"))


def _grid_valid(f):
    atoms = sorted(prop_atoms(f))
    return all(eval_prop(f, dict(zip(atoms, v))) == 1 for v in product(EIGHTHS[::2], repeat=len(atoms)))


@settings(max_examples=300, deadline=None)
@given(prop_formulas())
def test_chain_validity_matches_grid(f):
    # five grid values realize every chain over three atoms
    assert decide_valid_prop(f) == _grid_valid(f)


@settings(max_examples=200, deadline=None)
@given(prop_formulas())
def test_psi_matches_realization(f):
    # psi gives the block of the value; realize puts block k at k/top
    for c in enumerate_chains(ATOMS):
        assert F(psi_eval(f, c), c.top) == eval_prop(f, realize(c))


@settings(max_examples=25, deadline=None)
@given(prop_formulas(max_leaves=6))
def test_cnf_delta_1_is_equivalent(f):
    g = cnf_delta_1(f, ATOMS)
    for vals in product(EIGHTHS[::2], repeat=3):
        env = dict(zip(ATOMS, vals))
        assert eval_prop(g, env) == eval_prop(f, env)


@settings(max_examples=60, deadline=None)
@given(prop_formulas(delta=False, max_leaves=6))
def test_cnf_delta_2_restricted(f):
    g = cnf_delta_2(f, ATOMS)
    assert restricted_equivalent(f, g, ATOMS)
    for c in enumerate_chains(ATOMS, restricted=True):
        assert (psi_eval(g, c) == c.top) == (psi_eval(f, c) == c.top)


def test_chain_formula_characterizes_its_chain():
    chains = enumerate_chains(["X", "Y"])
    for c in chains:
        phi = chain_formula(c)
        assert [psi_eval(phi, d) == d.top for d in chains] == [d == c for d in chains]
        for vals in product(EIGHTHS[::2], repeat=2):
            assert eval_prop(phi, dict(zip("XY", vals))) in (0, 1)
    assert F(1, 2) in realize(chains[0]).values()
