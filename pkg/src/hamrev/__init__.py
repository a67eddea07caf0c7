"""Belief revision by Hamming distance over small propositional signatures."""

from .constructions import (
    AdjunctionSet,
    DerivationTrace,
    Step,
    adjunction,
    beta,
    corrected,
    explain,
    gamma,
    recover,
    recover_bob,
    recover_bow,
    recover_bows,
    sigma,
    verify_trace,
)
from .logic import (
    Interpretation,
    LimitError,
    ModelSet,
    Signature,
    SignatureError,
    dual,
    dual_set,
    entails,
    equivalent,
    flip_formula,
    flip_interp,
    flip_set,
    formula_from_models,
    is_complete,
    is_consistent,
    models,
    rename_formula,
    rename_interp,
    rename_set,
    sym_diff,
)
from .metrics import DistanceTable, build_table, hamming, max_dist, min_dist, surprise
from .operators import DALAL, DMAX, SMAX, OperatorKind, RevisionResult, revise, revise_by_models
from .postulates import (
    CheckInstance,
    CheckReport,
    Counterexample,
    PostulateId,
    SweepLimits,
    check_instance,
    check_operator,
    expected_matrix,
    matrix,
    render_matrix,
    sweep,
)
from .syntax import Formula, ParseError, parse_formula, to_text

__version__ = "0.1.0"
