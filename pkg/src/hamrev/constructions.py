"""Flip-based constructions that rebuild revision results without distances.

Each construction flips the candidate models by every prior model, lets a
fixed reference prior (the empty interpretation, or the all-true one) pick
among the flipped sets, and flips the picks back:

* ``beta``  - empty interpretation picks among all flipped candidates
  (best of best);
* ``gamma`` - all-true interpretation picks within each flipped copy, then
  the empty interpretation picks among those picks (best of worst);
* ``sigma`` - as ``gamma``, after padding every prior model with fresh
  adjunction atoms so that distances carry the surprise offsets.

Revising by the empty or the all-true interpretation is evaluated directly:
minimal cardinality, resp. minimal distance to the all-true interpretation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import (
    Interpretation,
    ModelSet,
    Signature,
    SignatureError,
    flip_table,
    interp_text,
    table_members,
)
from .operators import DALAL, DMAX, SMAX, OperatorKind, revise_by_models


def eps_select(table: int) -> int:
    """Members of minimal cardinality."""
    members = table_members(table)
    if not members:
        return 0
    best = min(w.bit_count() for w in members)
    return sum(1 << w for w in members if w.bit_count() == best)


def alpha_select(table: int, full: int) -> int:
    """Members at minimal Hamming distance from the all-true interpretation ``full``."""
    members = table_members(table)
    if not members:
        return 0
    best = min((full ^ w).bit_count() for w in members)
    return sum(1 << w for w in members if (full ^ w).bit_count() == best)


def _flip_union(flips: list[int], table: int) -> int:
    out = 0
    for v in flips:
        out |= flip_table(v, table)
    return out


def _union(sets: list[ModelSet]) -> int:
    t = 0
    for m in sets:
        t |= m.table
    return t


def _check(phi: ModelSet, mu: ModelSet) -> None:
    if phi.sig != mu.sig:
        raise SignatureError("prior and new information are over different signatures")
    if not phi:
        raise ValueError("prior model set is empty")
    if not mu:
        raise ValueError("new information has no models")


def beta(phi: ModelSet, mu: ModelSet) -> ModelSet:
    """Best-of-best set: minimal-cardinality members of ``{w △ v}``."""
    _check(phi, mu)
    return ModelSet(mu.sig, eps_select(_flip_union(phi.bits, mu.table)))


def recover_bob(phi: ModelSet, beta_models: ModelSet, mu: ModelSet) -> ModelSet:
    return ModelSet(mu.sig, _flip_union(phi.bits, beta_models.table) & mu.table)


def gamma(phi: ModelSet, mu: ModelSet) -> ModelSet:
    """Best-of-worst set: per prior model the flipped candidates nearest the all-true
    interpretation, then the minimal-cardinality ones among all of those."""
    _check(phi, mu)
    full = mu.sig.full
    picks = 0
    for v in phi.bits:
        picks |= alpha_select(flip_table(v, mu.table), full)
    return ModelSet(mu.sig, eps_select(picks))


def recover_bow(phi: ModelSet, gamma_models: ModelSet, mu: ModelSet) -> ModelSet:
    return ModelSet(mu.sig, _flip_union(phi.bits, gamma_models.table) & mu.table)


@dataclass(frozen=True)
class CorrectedInterpretation:
    base: Interpretation
    starred: Interpretation
    """``base`` plus every adjunction set except its own, over the extended signature."""


@dataclass(frozen=True)
class AdjunctionSet:
    """Fresh-atom padding: prior model ``v_i`` gets ``x_i`` with ``|x_i| = d(v_i, mu)``."""

    sig: Signature
    extended_sig: Signature
    per_model: tuple[tuple[Interpretation, tuple[str, ...]], ...]

    def x_bits(self, i: int) -> int:
        return sum(1 << self.extended_sig.index(a) for a in self.per_model[i][1])

    def corrected(self) -> list[CorrectedInterpretation]:
        xs = [self.x_bits(i) for i in range(len(self.per_model))]
        union = sum(xs)  # disjoint
        out = []
        for i, (v, _) in enumerate(self.per_model):
            out.append(CorrectedInterpretation(v, Interpretation(self.extended_sig, v.bits | (union ^ xs[i]))))
        return out

    def starred_set(self) -> ModelSet:
        return ModelSet.of(self.extended_sig, [c.starred for c in self.corrected()])

    def to_json(self) -> dict:
        return {
            "extended_signature": list(self.extended_sig.atoms),
            "per_model": [{"model": v.to_json(), "adjunction": list(x)} for v, x in self.per_model],
        }


def adjunction(phi: ModelSet, mu: ModelSet) -> AdjunctionSet:
    """Mint adjunction atoms in the canonical order of the prior's models."""
    _check(phi, mu)
    mu_bits = table_members(mu.table)
    sizes = [min((v ^ w).bit_count() for w in mu_bits) for v in phi.bits]
    ext, fresh = phi.sig.fresh(sum(sizes))
    per_model = []
    k = 0
    for v, size in zip(phi, sizes):
        per_model.append((v, fresh[k : k + size]))
        k += size
    return AdjunctionSet(phi.sig, ext, tuple(per_model))


def corrected(adj: AdjunctionSet, phi: ModelSet | None = None) -> list[CorrectedInterpretation]:
    if phi is not None and [v.bits for v, _ in adj.per_model] != phi.bits:
        raise ValueError("adjunction set was built for a different prior")
    return adj.corrected()


def sigma(phi: ModelSet, mu: ModelSet, adj: AdjunctionSet | None = None) -> ModelSet:
    """Best-surprise set, over the extended signature of the adjunction."""
    _check(phi, mu)
    adj = adj or adjunction(phi, mu)
    ext = adj.extended_sig
    full = ext.full
    picks = 0
    for c in adj.corrected():
        picks |= alpha_select(flip_table(c.starred.bits, mu.table), full)
    return ModelSet(ext, eps_select(picks))


def recover_bows(phi: ModelSet, sigma_models: ModelSet, mu: ModelSet, adj: AdjunctionSet) -> ModelSet:
    """Unflip by the corrected interpretations and keep the models of ``mu``."""
    stars = [c.starred.bits for c in adj.corrected()]
    if sigma_models.sig != adj.extended_sig:
        raise SignatureError("sigma models must be over the adjunction's extended signature")
    return ModelSet(mu.sig, _flip_union(stars, sigma_models.table) & mu.table)


def recover(kind: OperatorKind | str, phi: ModelSet, mu: ModelSet) -> ModelSet:
    """Revision result rebuilt through the construction matching ``kind``."""
    kind = OperatorKind.parse(kind)
    if kind is DALAL:
        return recover_bob(phi, beta(phi, mu), mu)
    if kind is DMAX:
        return recover_bow(phi, gamma(phi, mu), mu)
    adj = adjunction(phi, mu)
    return recover_bows(phi, sigma(phi, mu, adj), mu, adj)


# --------------------------------------------------------------- traces


_ASCII = str.maketrans({"→": "->", "μ": "mu", "φ": "phi", "ε": "eps", "α": "alpha", "β": "beta", "γ": "gamma", "σ": "sigma", "∅": "{}"})


@dataclass(frozen=True)
class Step:
    rule: str
    action: str
    description: str
    inputs: tuple[ModelSet, ...]
    output: ModelSet
    by: Interpretation | None = None

    def text(self, index: int, ascii: bool = False) -> str:
        line = f"Step {index} [{self.rule}]: {self.description} → {self.output.text(ascii)}"
        return line.translate(_ASCII) if ascii else line

    def to_json(self, index: int) -> dict:
        return {
            "step": index,
            "rule": self.rule,
            "action": self.action,
            "description": self.description,
            "inputs": [m.to_json() for m in self.inputs],
            "by": self.by.to_json() if self.by is not None else None,
            "output": self.output.to_json(),
        }


@dataclass(frozen=True)
class DerivationTrace:
    kind: OperatorKind
    steps: tuple[Step, ...]
    final: ModelSet

    def text(self, ascii: bool = False) -> str:
        lines = [s.text(i, ascii) for i, s in enumerate(self.steps, 1)]
        lines.append(f"Result: {self.final.text(ascii)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "operator": self.kind.value,
            "signature": list(self.final.sig.atoms),
            "steps": [s.to_json(i) for i, s in enumerate(self.steps, 1)],
            "final": self.final.to_json(),
        }


def replay(step: Step) -> ModelSet:
    """Recompute a step's output from its inputs alone."""
    a = step.action
    ins = step.inputs
    if a == "split":
        return ins[0]
    if a == "flip":
        return ModelSet(ins[0].sig, flip_table(step.by.bits, ins[0].table))
    if a == "union":
        return ModelSet(ins[0].sig, _union(list(ins)))
    if a == "intersect":
        t = ins[0].table
        for m in ins[1:]:
            t &= m.table
        return ModelSet(ins[0].sig, t)
    if a == "eps-select":
        return ModelSet(ins[0].sig, eps_select(ins[0].table))
    if a == "alpha-select":
        return ModelSet(ins[0].sig, alpha_select(ins[0].table, ins[0].sig.full))
    if a == "adjoin":
        return adjunction(ins[0], ins[1]).starred_set()
    if a == "lift":
        return ins[0].lift(step.output.sig)
    if a == "restrict":
        return ins[0].restrict(step.output.sig)
    raise ValueError(f"unknown step action {a!r}")


def _word(v: Interpretation, ascii: bool = False) -> str:
    return interp_text(v.sig, v.bits, ascii)


def explain(kind: OperatorKind | str, phi: ModelSet, mu: ModelSet) -> DerivationTrace:
    """Derive the revision result step by step through flips and reference priors."""
    kind = OperatorKind.parse(kind)
    _check(phi, mu)
    steps: list[Step] = []

    def add(rule, action, description, inputs, output, by=None) -> ModelSet:
        steps.append(Step(rule, action, description, tuple(inputs), output, by))
        return output

    priors = ", ".join("{" + _word(v) + "}" for v in phi)
    add("R_" + {DALAL: "BoB", DMAX: "BoW", SMAX: "BoWS"}[kind], "split",
        f"split the prior into complete priors {priors}", [phi], phi)

    target = mu
    flips = list(phi)
    if kind is SMAX:
        adj = adjunction(phi, mu)
        ext = adj.extended_sig
        pads = "; ".join(
            f"x for {_word(v)} = {{{', '.join(x)}}}" for v, x in adj.per_model
        )
        stars = add("R_BoWS", "adjoin",
                    f"pad each prior model with the other models' adjunction atoms ({pads})",
                    [phi, mu], adj.starred_set())
        target = add("R_BoWS", "lift", "read the new information over the extended signature",
                     [mu], mu.lift(ext))
        flips = list(stars)

    flipped = [
        add("R_F", "flip", f"flip μ by {_word(v)}", [target], ModelSet(target.sig, flip_table(v.bits, target.table)), v)
        for v in flips
    ]
    if kind is DALAL:
        pool = add("R_BoB", "union", "disjoin the flipped copies of μ", flipped,
                   ModelSet(target.sig, _union(flipped)))
        chosen = add("R_N, R_A", "eps-select", "ε selects the interpretations of minimal cardinality (β)",
                     [pool], ModelSet(target.sig, eps_select(pool.table)))
    else:
        worst = [
            add("R_N, R_A, R_F", "alpha-select",
                f"α selects the flipped models closest to the full interpretation (worst for {_word(v)})",
                [f], ModelSet(f.sig, alpha_select(f.table, f.sig.full)))
            for v, f in zip(flips, flipped)
        ]
        rule = "R_BoW" if kind is DMAX else "R_BoWS"
        pool = add(rule, "union", "disjoin the α-revisions", worst, ModelSet(target.sig, _union(worst)))
        label = "γ" if kind is DMAX else "σ"
        chosen = add("R_N, R_A", "eps-select", f"ε selects the interpretations of minimal cardinality ({label})",
                     [pool], ModelSet(target.sig, eps_select(pool.table)))

    rule = {DALAL: "R_BoB", DMAX: "R_BoW", SMAX: "R_BoWS"}[kind]
    back = [
        add(rule, "flip", f"flip back by {_word(v)}", [chosen], ModelSet(chosen.sig, flip_table(v.bits, chosen.table)), v)
        for v in flips
    ]
    joined = add(rule, "union", "disjoin the flipped-back sets", back, ModelSet(chosen.sig, _union(back)))
    final = add(rule, "intersect", "conjoin with μ", [joined, target], ModelSet(target.sig, joined.table & target.table))
    if kind is SMAX:
        final = add(rule, "restrict", "drop the adjunction atoms", [final], final.restrict(mu.sig))
    return DerivationTrace(kind, tuple(steps), final)


def verify_trace(trace: DerivationTrace) -> bool:
    """Every step's output recomputes from its inputs."""
    return all(replay(s) == s.output for s in trace.steps)


def trace_agrees(trace: DerivationTrace, phi: ModelSet, mu: ModelSet) -> bool:
    return trace.final == revise_by_models(trace.kind, phi, mu).models
