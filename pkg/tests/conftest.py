import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from goedel_workbench.formula import (  # noqa: E402
    BOT,
    TOP,
    And,
    Atom,
    Delta,
    Exists,
    Forall,
    Implies,
    Or,
    Var,
)

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = _ACCEPTANCE.get(report.nodeid)
    if crit is not None:
        prev = crit.get("outcome", "passed")
        crit["outcome"] = "failed" if report.failed or prev == "failed" else "passed"
        crit["seconds"] = crit.get("seconds", 0.0) + report.duration


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _ACCEPTANCE[item.nodeid] = {"number": m.args[0], "title": m.args[1]}


def pytest_terminal_summary(terminalreporter):
    rows = sorted((c for c in _ACCEPTANCE.values() if "outcome" in c), key=lambda c: c["number"])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for c in rows:
        status = "PASS" if c["outcome"] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {c['number']:>2}  {status}  {c['title']}  ({c['seconds']:.1f}s)")


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURE_DIR, name)


# ------------------------------------------------------------ strategies

PROP_ATOMS = ("X", "Y", "Z")


def prop_formulas(atoms=PROP_ATOMS, delta=True, max_leaves=12):
    leaves = st.sampled_from([Atom(a) for a in atoms] + [BOT, TOP])

    def extend(children):
        binary = st.tuples(st.sampled_from([And, Or, Implies]), children, children).map(lambda t: t[0](t[1], t[2]))
        if delta:
            return binary | children.map(Delta)
        return binary

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def fo_formulas(delta=False, allow_forall=True, max_leaves=10):
    """Closed-ish first-order formulas over unary P, Q and 0-ary R with
    variables x, y."""
    var = st.sampled_from(["x", "y"])
    leaves = st.one_of(
        st.sampled_from([Atom("R"), BOT, TOP]),
        st.tuples(st.sampled_from(["P", "Q"]), var).map(lambda t: Atom(t[0], (Var(t[1]),))),
    )
    quants = [Exists, Forall] if allow_forall else [Exists]

    def extend(children):
        opts = [
            st.tuples(st.sampled_from([And, Or, Implies]), children, children).map(lambda t: t[0](t[1], t[2])),
            st.tuples(st.sampled_from(quants), var, children).map(lambda t: t[0](t[1], t[2])),
        ]
        if delta:
            opts.append(children.map(Delta))
        return st.one_of(*opts)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


EIGHTHS = [Fraction(k, 8) for k in range(9)]
