from __future__ import annotations

import properties
import pytest
from conftest import ABC, ABCDE, model_sets
from hypothesis import given
from hypothesis import strategies as st

from hamrev.constructions import (
    adjunction,
    alpha_select,
    beta,
    corrected,
    eps_select,
    explain,
    gamma,
    recover,
    recover_bob,
    recover_bow,
    recover_bows,
    replay,
    sigma,
    trace_agrees,
    verify_trace,
)
from hamrev.logic import ModelSet, SignatureError, flip_set
from hamrev.operators import DALAL, DMAX, SMAX, OperatorKind, revise_by_models

KINDS = list(OperatorKind)


def test_selectors():
    t = ABC.models("ab", "c", "abc").table
    assert ModelSet(ABC, eps_select(t)) == ABC.models("c")
    assert ModelSet(ABC, alpha_select(t, ABC.full)) == ABC.models("abc")
    assert eps_select(0) == 0


def test_beta_on_three_atoms(abc_pair):
    phi, mu = abc_pair
    b = beta(phi, mu)
    assert b == ABC.models("c")
    assert recover_bob(phi, b, mu) == ABC.models("ac")


def test_gamma_on_three_atoms(abc_pair):
    phi, mu = abc_pair
    assert ModelSet(ABC, alpha_select(flip_set(ABC.interp("a"), mu).table, ABC.full)) == ABC.models("bc")
    assert ModelSet(ABC, alpha_select(flip_set(ABC.interp("b"), mu).table, ABC.full)) == ABC.models("abc")
    g = gamma(phi, mu)
    assert g == ABC.models("bc")
    assert recover_bow(phi, g, mu) == ABC.models("abc")


def test_adjunction_on_three_atoms(abc_pair):
    phi, mu = abc_pair
    adj = adjunction(phi, mu)
    assert [(str(v), x) for v, x in adj.per_model] == [("a", ("_x0",)), ("b", ("_x1", "_x2"))]
    stars = [str(c.starred) for c in corrected(adj, phi)]
    assert stars == ["{a,_x1,_x2}", "{b,_x0}"]
    s = sigma(phi, mu, adj)
    assert s.to_json() == [["a", "b", "c", "_x0"], ["b", "c", "_x1", "_x2"]]
    assert recover_bows(phi, s, mu, adj) == ABC.models("ac", "abc")


def test_adjunction_on_narrowed_five_atoms():
    phi, nu = ABCDE.models("", "abcd"), ABCDE.models("abcd", "abe")
    adj = adjunction(phi, nu)
    assert [len(x) for _, x in adj.per_model] == [3, 0]
    assert recover(SMAX, phi, nu) == ABCDE.models("abcd")


def test_corrected_rejects_foreign_prior(abc_pair):
    phi, mu = abc_pair
    with pytest.raises(ValueError):
        corrected(adjunction(phi, mu), ABC.models("c"))


def test_constructions_reject_empty_or_mismatched_inputs(abc_pair):
    phi, mu = abc_pair
    with pytest.raises(ValueError):
        beta(ModelSet.empty(ABC), mu)
    with pytest.raises(ValueError):
        gamma(phi, ModelSet.empty(ABC))
    with pytest.raises(SignatureError):
        sigma(phi, ABCDE.models("a"))


def test_gamma_on_five_atom_instance():
    # pipeline value: the all-true pick for both prior models is abcd
    phi, mu = ABCDE.models("", "abcd"), ABCDE.models("", "abcd", "abe")
    assert gamma(phi, mu) == ABCDE.models("abcd")
    assert recover(DMAX, phi, mu) == ABCDE.models("", "abcd")


def test_beta_flips_give_dalal_exhaustive():
    t = properties.beta_flips(3)
    assert t.violations == 0, t.first


def test_gamma_flips_give_min_max_exhaustive():
    t = properties.gamma_flips(3)
    assert t.violations == 0, f"{t.violations}/{t.instances} instances differ, first {t.first}"


def test_surprise_order_exhaustive():
    t = properties.surprise_order_exhaustive(3)
    assert t.violations == 0, t.first


def test_surprise_order_random():
    t = properties.surprise_order_random(1000, 6)
    assert t.instances >= 1000
    assert t.violations == 0, t.first


@given(model_sets(ABC, nonempty=True), model_sets(ABC, nonempty=True))
def test_order_check_agrees_with_pairwise_definition(phi, mu):
    cells = properties._cells(phi, mu)
    assert properties.same_order(cells) == properties.same_order_pairwise(cells)


def test_order_check_detects_inversions():
    assert not properties.same_order([(0, 1), (1, 0)])
    assert not properties.same_order([(0, 1), (0, 2)])
    assert properties.same_order([(0, 5), (2, 6), (2, 6)])


def test_bob_recovery_exhaustive():
    t = properties.recovery(DALAL, 3)
    assert t.violations == 0, t.first


def test_bow_recovery_exhaustive():
    t = properties.recovery(DMAX, 3)
    assert t.violations == 0, f"{t.violations}/{t.instances} instances differ, first {t.first}"


def test_bows_recovery_exhaustive():
    t = properties.recovery(SMAX, 3)
    assert t.violations == 0, f"{t.violations}/{t.instances} instances differ, first {t.first}"


def test_dalal_trace_on_three_atoms(abc_pair):
    phi, mu = abc_pair
    tr = explain(DALAL, phi, mu)
    assert [s.action for s in tr.steps] == [
        "split", "flip", "flip", "union", "eps-select", "flip", "flip", "union", "intersect",
    ]
    assert tr.steps[4].output == ABC.models("c")
    assert tr.final == ABC.models("ac")
    assert tr.steps[2].text(3) == "Step 3 [R_F]: flip μ by b → {abc, ac}"
    assert verify_trace(tr) and trace_agrees(tr, phi, mu)


def test_min_max_trace_has_two_rounds(abc_pair):
    phi, mu = abc_pair
    tr = explain(DMAX, phi, mu)
    actions = [s.action for s in tr.steps]
    assert actions.count("alpha-select") == 2
    assert actions.count("eps-select") == 1
    assert tr.final == ABC.models("abc")
    assert verify_trace(tr)


def test_surprise_trace_mints_adjunction_atoms(abc_pair):
    phi, mu = abc_pair
    tr = explain(SMAX, phi, mu)
    actions = [s.action for s in tr.steps]
    assert actions[:3] == ["split", "adjoin", "lift"]
    assert actions[-1] == "restrict"
    assert tr.final == revise_by_models(SMAX, phi, mu).models
    assert verify_trace(tr)
    assert "_x0" in tr.text()
    assert "mu" in tr.text(ascii=True) and "μ" not in tr.text(ascii=True)


def test_trace_json(abc_pair):
    phi, mu = abc_pair
    j = explain(DALAL, phi, mu).to_json()
    assert j["operator"] == "dalal"
    assert j["final"] == [["a", "c"]]
    assert j["steps"][1]["by"] == ["a"]


@given(st.sampled_from(KINDS), model_sets(ABC, nonempty=True), model_sets(ABC, nonempty=True))
def test_trace_steps_replay(kind, phi, mu):
    tr = explain(kind, phi, mu)
    assert all(replay(s) == s.output for s in tr.steps)
    assert tr.final == recover(kind, phi, mu)
