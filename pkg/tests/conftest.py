from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hamrev import ModelSet, Signature  # noqa: E402
from hamrev import syntax as S  # noqa: E402

ABCDE = Signature.letters(5)
ABC = Signature.letters(3)


@pytest.fixture
def ex1():
    """Prior {∅, abcd}, new information {∅, abcd, abe} and the narrowed {abcd, abe}."""
    phi = S.parse_formula("(!a & !b & !c & !d & !e) | (a & b & c & d & !e)")
    mu = S.Or(phi, S.parse_formula("a & b & !c & !d & e"))
    nu = S.parse_formula("a & b & (c & d & !e | !c & !d & e)")
    return phi, mu, nu


@pytest.fixture
def abc_pair():
    """Prior {a, b} and new information {ac, abc} over a, b, c."""
    return ABC.models("a", "b"), ABC.models("ac", "abc")


def formulas(atoms=("a", "b", "c"), max_leaves=12):
    leaves = st.one_of(
        st.sampled_from([S.Atom(a) for a in atoms]),
        st.sampled_from([S.TOP, S.BOTTOM]),
    )

    def extend(children):
        return st.one_of(
            children.map(S.Not),
            st.tuples(children, children).map(lambda t: S.And(*t)),
            st.tuples(children, children).map(lambda t: S.Or(*t)),
            st.tuples(children, children).map(lambda t: S.Implies(*t)),
            st.tuples(children, children).map(lambda t: S.Iff(*t)),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def model_sets(sig: Signature, nonempty: bool = False):
    lo = 1 if nonempty else 0
    return st.integers(lo, sig.universe).map(lambda t: ModelSet(sig, t))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
