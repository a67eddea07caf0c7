from __future__ import annotations

import json
import random

import oracles
import pytest
from conftest import ABC, ABCDE

from hamrev.logic import LimitError, ModelSet, Signature
from hamrev.operators import DALAL, DMAX, SMAX, OperatorKind
from hamrev.postulates import (
    FAIL,
    PASS,
    TIMEOUT,
    CheckInstance,
    PostulateId,
    SweepLimits,
    check_instance,
    check_operator,
    expected_matrix,
    render_matrix,
    sweep,
    sweep_empty_prior,
    sweep_complete_prior,
)

P = PostulateId
PHI = ABCDE.models("", "abcd")
MU = ABCDE.models("", "abcd", "abe")
NU = ABCDE.models("abcd", "abe")

DALAL_PASS = [P.R1, P.R2, P.R3, P.R4, P.R5, P.R6, P.RN, P.RA, P.RF, P.RBoB]
DMAX_PASS = [P.R1, P.R3, P.R4, P.R5, P.R6, P.R7, P.R8, P.RN, P.RA, P.RF]
SMAX_PASS = [P.R1, P.R3, P.R4, P.R5c, P.R6c, P.RN, P.RA, P.RF]
SMAX_FAIL = [P.R2, P.R5, P.R6, P.R7, P.R8]


def test_postulate_parsing():
    assert PostulateId.parse("rbows") is P.RBoWS
    assert PostulateId.parse("R5c") is P.R5c
    with pytest.raises(ValueError):
        PostulateId.parse("R9")


def test_expected_matrix_entries():
    m = expected_matrix()
    assert m[(SMAX, P.R2)] == FAIL
    assert m[(DALAL, P.R2)] == PASS
    assert m[(DMAX, P.R8)] == PASS
    assert (DALAL, P.R7) not in m


def test_surprise_vacuity_counterexample():
    cex = check_instance(P.R2, SMAX, CheckInstance(PHI, MU))
    assert cex is not None
    assert cex.lhs == ABCDE.models("abe")
    assert cex.rhs == ABCDE.models("", "abcd")
    assert cex.reproduces()


def test_surprise_r5_r6_counterexample():
    inst = CheckInstance(PHI, MU, mu2=NU)
    r5 = check_instance(P.R5, SMAX, inst)
    r6 = check_instance(P.R6, SMAX, inst)
    assert r5 is not None and r6 is not None
    assert (r5.lhs, r5.rhs) == (ABCDE.models("abe"), ABCDE.models("abcd"))
    assert (r6.lhs, r6.rhs) == (ABCDE.models("abcd"), ABCDE.models("abe"))


def test_containment_holds_for_every_operator():
    rng = random.Random(1)
    for _ in range(200):
        inst = CheckInstance(ModelSet(ABC, rng.getrandbits(8)), ModelSet(ABC, rng.getrandbits(8)))
        for kind in OperatorKind:
            assert check_instance(P.R1, kind, inst) is None


def test_min_max_r7_on_random_instances():
    rng = random.Random(7)
    sig = Signature.letters(4)
    for _ in range(300):
        inst = CheckInstance(ModelSet(sig, rng.getrandbits(16) or 1), ModelSet(sig, rng.getrandbits(16)))
        assert check_instance(P.R7, DMAX, inst) is None
        assert check_instance(P.R8, DMAX, inst) is None


def test_instance_validation():
    with pytest.raises(ValueError):
        check_instance(P.R5, DALAL, CheckInstance(ABC.models("a"), ABC.models("b")))
    with pytest.raises(ValueError):
        check_instance(P.RF, DALAL, CheckInstance(ABC.models("a", "b"), ABC.models("b"), flip=ABC.interp("a")))
    with pytest.raises(ValueError):
        check_instance(P.RN, DALAL, CheckInstance(ABC.models("a"), ABC.models("b"), renaming=(("a", "b"),)))


def test_renaming_flip_and_addition_instances():
    phi, mu = ABC.models("a"), ABC.models("b", "bc")
    cyc = (("a", "b"), ("b", "c"), ("c", "a"))
    for kind in OperatorKind:
        assert check_instance(P.RN, kind, CheckInstance(phi, mu, renaming=cyc)) is None
        assert check_instance(P.RF, kind, CheckInstance(phi, mu, flip=ABC.interp("bc"))) is None
        pair = (ABC.interp("b"), ABC.interp("bc"))
        assert check_instance(P.RA, kind, CheckInstance(phi, ABC.models("b", "bc"), pair=pair, fresh=2)) is None


@pytest.mark.parametrize("p", DALAL_PASS)
def test_dalal_sweep_passes(p):
    o = sweep(DALAL, p, 3).outcomes[p]
    assert o.status == PASS, o.counterexample and o.counterexample.text()


@pytest.mark.parametrize("p", DMAX_PASS)
def test_min_max_sweep_passes(p):
    o = sweep(DMAX, p, 3).outcomes[p]
    assert o.status == PASS, o.counterexample and o.counterexample.text()


@pytest.mark.parametrize("p", SMAX_PASS)
def test_surprise_sweep_passes(p):
    o = sweep(SMAX, p, 3).outcomes[p]
    assert o.status == PASS, o.counterexample and o.counterexample.text()


@pytest.mark.parametrize("p", SMAX_FAIL)
def test_surprise_sweep_finds_counterexamples(p):
    o = sweep(SMAX, p, 3).outcomes[p]
    assert o.status == FAIL
    assert o.counterexample.reproduces()


def test_min_max_vacuity_fails_on_example_family():
    # the five-atom instance first, then enlargements of its prior
    family = [CheckInstance(PHI, MU)]
    for w in range(32):
        bigger = ModelSet(ABCDE, PHI.table | 1 << w)
        family.append(CheckInstance(bigger, MU))
    o = sweep(DMAX, P.R2, 5, instances=family).outcomes[P.R2]
    assert o.status == FAIL
    assert o.counterexample.instance == family[0]
    assert o.counterexample.lhs == ABCDE.models("abe")


def test_minimal_counterexample_is_smallest():
    o = sweep(SMAX, P.R2, 3, SweepLimits(minimal=True)).outcomes[P.R2]
    inst = o.counterexample.instance
    # brute force over n <= 3: nothing strictly smaller in (|φ|, |μ|) fails
    best = None
    for n in (1, 2, 3):
        sig = Signature.letters(n)
        for phi in range(1, sig.universe + 1):
            for mu in range(sig.universe + 1):
                p, m = oracles.words(ModelSet(sig, phi)), oracles.words(ModelSet(sig, mu))
                both = p & m
                if both and oracles.revise("smax", p, m) != both:
                    key = (len(p), len(m), n)
                    best = key if best is None or key < best else best
    assert (len(inst.phi), len(inst.mu), inst.sig.n) == best


def test_count_all_counts_every_violation():
    o = sweep(DMAX, P.R2, 2, SweepLimits(count_all=True)).outcomes[P.R2]
    sig = Signature.letters(2)
    want = 0
    for phi in range(1, 16):
        for mu in range(16):
            p, m = oracles.words(ModelSet(sig, phi)), oracles.words(ModelSet(sig, mu))
            if p & m and oracles.revise("dmax", p, m) != p & m:
                want += 1
    assert o.violations == want
    assert o.instances == 15 * 16


def test_degenerate_priors_are_excluded_and_reported():
    o = sweep(DALAL, P.R1, 2).outcomes[P.R1]
    assert o.excluded_degenerate == 16
    assert "excluded" in check_operator(DALAL, 2, [P.R1]).text()


def test_workers_give_same_report():
    limits = SweepLimits(count_all=True)
    serial = check_operator(SMAX, 2, None, limits).to_json()
    parallel = check_operator(SMAX, 2, None, SweepLimits(count_all=True, workers=2)).to_json()
    assert serial == parallel


def test_budget_yields_timeout_not_pass():
    o = sweep(DALAL, P.R1, 4, SweepLimits(budget_ms=50)).outcomes[P.R1]
    assert o.status == TIMEOUT
    assert o.diverges


def test_limits():
    with pytest.raises(LimitError):
        sweep(DALAL, P.R5, 4)
    with pytest.raises(LimitError):
        sweep(DALAL, P.R1, 5)
    with pytest.raises(LimitError):
        sweep(DALAL, P.R1, 3, SweepLimits(max_n=2))


def test_sampled_renamings_at_four_atoms():
    o = sweep(DALAL, P.RN, 4, SweepLimits(seed=3, samples=1)).outcomes[P.RN]
    assert o.status == PASS and o.sampled
    assert o.instances == 16 * 65536


def test_report_json_is_deterministic():
    a = json.dumps(check_operator(SMAX, 2).to_json(), sort_keys=True)
    b = json.dumps(check_operator(SMAX, 2).to_json(), sort_keys=True)
    assert a == b
    assert "wall_time_s" not in a


def test_matrix_rendering():
    reports = [check_operator(k, 2, [P.R1, P.R2]) for k in OperatorKind]
    text = render_matrix(reports)
    lines = text.splitlines()
    assert lines[0].split() == ["operator", "R1", "R2"]
    assert lines[1].split() == ["dalal", "✓", "✓"]
    assert lines[2].split() == ["dmax", "✓", "✗"]
    assert "ok" in render_matrix(reports, ascii=True)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_empty_prior_sweep(n):
    r = sweep_empty_prior(n)
    assert r.ok, r.first


@pytest.mark.parametrize("n", [1, 2, 3])
def test_complete_prior_sweep_and_collapse(n):
    nearest, collapse = sweep_complete_prior(n)
    assert nearest.ok, nearest.first
    assert collapse.ok, collapse.first
