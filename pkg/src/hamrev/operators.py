"""Distance-based revision operators.

All three operators select, among the models of the new information, those
minimizing an aggregate score computed over the prior's models:

* ``DALAL_MIN_MIN``: smallest Hamming distance to any prior model;
* ``DIST_MIN_MAX``: largest Hamming distance to any prior model;
* ``SURPRISE_MIN_MAX``: largest relative surprise, i.e. distance minus the
  prior model's own distance to the new information.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .logic import (
    ModelSet,
    Signature,
    SignatureError,
    formula_from_models,
    interp_text,
    models,
    order_key,
    table_members,
)
from .metrics import DistanceTable, build_table
from .syntax import Formula, to_text


class OperatorKind(enum.Enum):
    DALAL_MIN_MIN = "dalal"
    DIST_MIN_MAX = "dmax"
    SURPRISE_MIN_MAX = "smax"

    @classmethod
    def parse(cls, name: str | OperatorKind) -> OperatorKind:
        if isinstance(name, cls):
            return name
        key = name.strip().lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown operator {name!r}; choose from dalal, dmax, smax")

    @property
    def label(self) -> str:
        return {"dalal": "Dalal (min-min)", "dmax": "distance min-max", "smax": "surprise min-max"}[self.value]


DALAL = OperatorKind.DALAL_MIN_MIN
DMAX = OperatorKind.DIST_MIN_MAX
SMAX = OperatorKind.SURPRISE_MIN_MAX


def scores(kind: OperatorKind, phi: list[int], mu: list[int]) -> dict[int, int]:
    """Aggregate score per candidate ``w`` in ``mu`` (both given as interpretation bits)."""
    if not phi:
        return {w: 0 for w in mu}
    if kind is DALAL:
        return {w: min((v ^ w).bit_count() for v in phi) for w in mu}
    if kind is DMAX:
        return {w: max((v ^ w).bit_count() for v in phi) for w in mu}
    if kind is SMAX:
        if not mu:
            return {}
        ref = [min((v ^ w).bit_count() for w in mu) for v in phi]
        return {w: max((v ^ w).bit_count() - r for v, r in zip(phi, ref)) for w in mu}
    raise ValueError(f"unknown operator {kind!r}")


def _argmin(s: dict[int, int]) -> int:
    if not s:
        return 0
    best = min(s.values())
    out = 0
    for w, score in s.items():
        if score == best:
            out |= 1 << w
    return out


def select(kind: OperatorKind, phi_table: int, mu_table: int) -> int:
    """Truth table of the revision result, computed on raw truth tables.

    Ties are kept; an inconsistent prior makes every candidate tie.
    """
    return _argmin(scores(kind, table_members(phi_table), table_members(mu_table)))


@dataclass(frozen=True)
class RevisionResult:
    kind: OperatorKind
    prior: ModelSet
    new: ModelSet
    models: ModelSet
    score_per_model: dict[int, int] = field(compare=False)
    degenerate: bool = False
    """True when the prior is inconsistent; every candidate then ties."""

    @cached_property
    def formula(self) -> Formula:
        return formula_from_models(self.models)

    @cached_property
    def table(self) -> DistanceTable | None:
        if not self.prior or not self.new:
            return None
        return build_table(self.prior, self.new, "surprise" if self.kind is SMAX else "distance")

    def to_json(self) -> dict:
        sig = self.models.sig
        return {
            "operator": self.kind.value,
            "signature": list(sig.atoms),
            "prior": self.prior.to_json(),
            "new": self.new.to_json(),
            "models": self.models.to_json(),
            "formula": to_text(self.formula),
            "scores": {interp_text(sig, w, ascii=True): s for w, s in sorted(self.score_per_model.items(), key=lambda kv: order_key(kv[0]))},
            "degenerate": self.degenerate,
            "table": self.table.to_json() if self.table is not None else None,
        }


def revise_by_models(kind: OperatorKind | str, phi: ModelSet, mu: ModelSet) -> RevisionResult:
    """Revise the prior ``phi`` by ``mu``, both given semantically."""
    kind = OperatorKind.parse(kind)
    if phi.sig != mu.sig:
        raise SignatureError("prior and new information are over different signatures")
    mu_bits = table_members(mu.table)
    phi_bits = table_members(phi.table)
    s = scores(kind, phi_bits, mu_bits)
    return RevisionResult(kind, phi, mu, ModelSet(mu.sig, _argmin(s)), s, degenerate=not phi_bits)


def revise(kind: OperatorKind | str, phi: Formula, mu: Formula, sig: Signature | None = None) -> RevisionResult:
    """Revise formula ``phi`` by formula ``mu`` over ``sig`` (default: their atoms)."""
    if sig is None:
        sig = Signature.from_formulas(phi, mu)
    return revise_by_models(kind, models(phi, sig), models(mu, sig))
