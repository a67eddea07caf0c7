"""Executable revision postulates and exhaustive sweeps over small signatures.

Postulates are evaluated semantically on truth tables (syntax independence
lets every quantifier range over model sets rather than formulas). The one
exception is R4, which is checked by actually revising two syntactically
different formulas per operand.
"""

from __future__ import annotations

import enum
import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .logic import (
    MAX_SWEEP_ATOMS,
    Interpretation,
    LimitError,
    ModelSet,
    Signature,
    check_renaming,
    flip_table,
    formula_from_models,
    models,
    order_key,
    rename_bits,
    table_members,
    table_of,
)
from .operators import DALAL, DMAX, SMAX, OperatorKind, revise_by_models, select
from .syntax import Not


class PostulateId(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R5c = "R5c"
    R6c = "R6c"
    R7 = "R7"
    R8 = "R8"
    RN = "RN"
    RF = "RF"
    RA = "RA"
    RBoB = "RBoB"
    RBoW = "RBoW"
    RBoWS = "RBoWS"

    @classmethod
    def parse(cls, name: str | PostulateId) -> PostulateId:
        if isinstance(name, cls):
            return name
        key = name.strip().replace("_", "").lower()
        for p in cls:
            if p.value.lower() == key:
                return p
        raise ValueError(f"unknown postulate {name!r}")


P = PostulateId

PASS = "PASS"
FAIL = "FAIL"
TIMEOUT = "TIMEOUT"


@dataclass(frozen=True)
class CheckInstance:
    """One point of a postulate's quantifier space.

    ``renaming`` maps atoms to atoms (R_N); ``flip`` is the flipped atom set
    (R_F); ``pair`` and ``fresh`` give the ordered two-model new information and
    the number of fresh atoms added to its second model (R_A).
    """

    phi: ModelSet
    mu: ModelSet
    mu2: ModelSet | None = None
    renaming: tuple[tuple[str, str], ...] | None = None
    flip: Interpretation | None = None
    pair: tuple[Interpretation, Interpretation] | None = None
    fresh: int | None = None

    @property
    def sig(self) -> Signature:
        return self.phi.sig

    def to_json(self) -> dict:
        out: dict = {"signature": list(self.sig.atoms), "phi": self.phi.to_json(), "mu": self.mu.to_json()}
        if self.mu2 is not None:
            out["mu2"] = self.mu2.to_json()
        if self.renaming is not None:
            out["renaming"] = dict(self.renaming)
        if self.flip is not None:
            out["flip"] = self.flip.to_json()
        if self.pair is not None:
            out["pair"] = [w.to_json() for w in self.pair]
        if self.fresh is not None:
            out["fresh"] = self.fresh
        return out

    def text(self, ascii: bool = False) -> str:
        parts = [f"φ={self.phi.text(ascii)}", f"μ={self.mu.text(ascii)}"]
        if self.mu2 is not None:
            parts.append(f"μ2={self.mu2.text(ascii)}")
        if self.renaming is not None:
            parts.append("r=" + ",".join(f"{a}->{b}" for a, b in self.renaming))
        if self.flip is not None:
            parts.append(f"v={self.flip}")
        if self.pair is not None:
            parts.append(f"w1={self.pair[0]} w2={self.pair[1]}")
        if self.fresh is not None:
            parts.append(f"|x|={self.fresh}")
        text = " ".join(parts)
        if ascii:
            text = text.replace("φ", "phi").replace("μ", "mu").replace("∅", "{}")
        return text


@dataclass(frozen=True)
class Counterexample:
    postulate: PostulateId
    operator: OperatorKind
    instance: CheckInstance
    lhs: ModelSet
    rhs: ModelSet
    relation: str
    """The relation between ``lhs`` and ``rhs`` that the postulate requires but fails."""

    def text(self, ascii: bool = False) -> str:
        rel = self.relation
        if ascii:
            rel = rel.replace("⊆", "<=").replace("≠", "!=").replace("∅", "{}")
        return (
            f"{self.postulate.value} fails for {self.operator.value}: {self.instance.text(ascii)}; "
            f"needs {self.lhs.text(ascii)} {rel} {self.rhs.text(ascii)}"
        )

    def to_json(self) -> dict:
        return {
            "postulate": self.postulate.value,
            "operator": self.operator.value,
            "instance": self.instance.to_json(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "relation": self.relation,
        }

    def reproduces(self) -> bool:
        """Re-evaluate the postulate on the stored instance."""
        return check_instance(self.postulate, self.operator, self.instance) is not None


# ------------------------------------------------------------- evaluation


class _Ctx:
    """Operator under test plus an optional memo of results on the base signature."""

    def __init__(self, kind: OperatorKind, sig: Signature, memo: bool = True):
        self.kind = kind
        self.sig = sig
        self._memo: dict[tuple[int, int], int] | None = {} if memo else None
        self._syntax: dict[int, tuple[ModelSet, ModelSet]] = {}

    def syntaxes(self, table: int) -> tuple[ModelSet, ModelSet]:
        """Models of two different formulas for ``table``: its DNF and the negated DNF of its complement."""
        out = self._syntax.get(table)
        if out is None:
            sig = self.sig
            f1 = formula_from_models(ModelSet(sig, table))
            f2 = Not(formula_from_models(ModelSet(sig, sig.universe & ~table)))
            out = self._syntax[table] = (models(f1, sig), models(f2, sig))
        return out

    def rev(self, phi: int, mu: int) -> int:
        if self._memo is None:
            return select(self.kind, phi, mu)
        key = (phi, mu)
        out = self._memo.get(key)
        if out is None:
            out = self._memo[key] = select(self.kind, phi, mu)
        return out


# Each check returns None when the postulate holds, otherwise
# (lhs_table, rhs_table, relation, signature of lhs/rhs).
Violation = tuple[int, int, str, Signature]


def _r1(c: _Ctx, phi: int, mu: int) -> Violation | None:
    res = c.rev(phi, mu)
    if res & ~mu:
        return res, mu, "⊆", c.sig


def _r2(c: _Ctx, phi: int, mu: int) -> Violation | None:
    both = phi & mu
    if both:
        res = c.rev(phi, mu)
        if res != both:
            return res, both, "=", c.sig


def _r3(c: _Ctx, phi: int, mu: int) -> Violation | None:
    if mu and not c.rev(phi, mu):
        return 0, 0, "≠ ∅ (result is empty)", c.sig


def _r4(c: _Ctx, phi: int, mu: int) -> Violation | None:
    p1, p2 = c.syntaxes(phi)
    m1, m2 = c.syntaxes(mu)
    r1 = revise_by_models(c.kind, p1, m1).models.table
    r2 = revise_by_models(c.kind, p2, m2).models.table
    if r1 != r2:
        return r1, r2, "=", c.sig


def _r5(c: _Ctx, phi: int, mu1: int, mu2: int) -> Violation | None:
    lhs = c.rev(phi, mu1) & mu2
    rhs = c.rev(phi, mu1 & mu2)
    if lhs & ~rhs:
        return lhs, rhs, "⊆", c.sig


def _r6(c: _Ctx, phi: int, mu1: int, mu2: int) -> Violation | None:
    lhs = c.rev(phi, mu1) & mu2
    if lhs:
        rhs = c.rev(phi, mu1 & mu2)
        if rhs & ~lhs:
            return rhs, lhs, "⊆", c.sig


def _complete_only(check):
    def wrapped(c: _Ctx, phi: int, *rest):
        if phi.bit_count() != 1:
            return None
        return check(c, phi, *rest)

    return wrapped


def _dual_table(sig: Signature, phi: int) -> int:
    return table_of(sig.full ^ v for v in table_members(phi))


def _r7(c: _Ctx, phi: int, mu: int) -> Violation | None:
    res = c.rev(phi, mu)
    if res & ~_dual_table(c.sig, phi) == 0 and res != mu:
        return res, mu, "=", c.sig


def _r8(c: _Ctx, phi: int, mu: int) -> Violation | None:
    d = _dual_table(c.sig, phi)
    if mu & ~d:
        hit = c.rev(phi, mu) & d
        if hit:
            return hit, 0, "=", c.sig


def _rename_table(perm_bits: list[int], table: int) -> int:
    return table_of(rename_bits(perm_bits, w) for w in table_members(table))


def _rn(c: _Ctx, phi: int, mu: int, perm: tuple[int, ...]) -> Violation | None:
    if phi.bit_count() != 1:
        return None
    pb = [1 << j for j in perm]
    lhs = _rename_table(pb, c.rev(phi, mu))
    rhs = c.rev(_rename_table(pb, phi), _rename_table(pb, mu))
    if lhs != rhs:
        return lhs, rhs, "=", c.sig


def _rf(c: _Ctx, phi: int, mu: int, v: int) -> Violation | None:
    if phi.bit_count() != 1:
        return None
    lhs = flip_table(v, c.rev(phi, mu))
    rhs = c.rev(flip_table(v, phi), flip_table(v, mu))
    if lhs != rhs:
        return lhs, rhs, "=", c.sig


def _ra(c: _Ctx, phi: int, w1: int, w2: int, k: int) -> Violation | None:
    if phi.bit_count() != 1:
        return None
    pair = (1 << w1) | (1 << w2)
    if not c.rev(phi, pair) >> w1 & 1:
        return None
    ext, _ = c.sig.fresh(k)
    x = ((1 << k) - 1) << c.sig.n
    res = select(c.kind, phi, (1 << w1) | (1 << (w2 | x)))
    if res != 1 << w1:
        return res, 1 << w1, "=", ext


def _flip_union(flips: Iterable[int], table: int) -> int:
    out = 0
    for v in flips:
        out |= flip_table(v, table)
    return out


def _rbob(c: _Ctx, phi: int, mu: int) -> Violation | None:
    vs = table_members(phi)
    beta = c.rev(1, _flip_union(vs, mu))
    rhs = _flip_union(vs, beta) & mu
    lhs = c.rev(phi, mu)
    if lhs != rhs:
        return lhs, rhs, "=", c.sig


def _rbow(c: _Ctx, phi: int, mu: int) -> Violation | None:
    vs = table_members(phi)
    alpha = 1 << c.sig.full
    picks = 0
    for v in vs:
        picks |= c.rev(alpha, flip_table(v, mu))
    gamma = c.rev(1, picks)
    rhs = _flip_union(vs, gamma) & mu
    lhs = c.rev(phi, mu)
    if lhs != rhs:
        return lhs, rhs, "=", c.sig


def _rbows(c: _Ctx, phi: int, mu: int) -> Violation | None:
    lhs = c.rev(phi, mu)
    if not mu:
        return (lhs, 0, "=", c.sig) if lhs else None
    vs = sorted(table_members(phi), key=order_key)
    mu_bits = table_members(mu)
    sizes = [min((v ^ w).bit_count() for w in mu_bits) for v in vs]
    ext, _ = c.sig.fresh(sum(sizes))
    xs = []
    offset = c.sig.n
    for s in sizes:
        xs.append(((1 << s) - 1) << offset)
        offset += s
    pad = sum(xs)
    stars = [v | (pad ^ x) for v, x in zip(vs, xs)]
    alpha = 1 << ext.full
    picks = 0
    for v in stars:
        picks |= select(c.kind, alpha, flip_table(v, mu))
    sigma = select(c.kind, 1, picks)
    rhs = _flip_union(stars, sigma) & mu
    if lhs != rhs:
        return lhs, rhs, "=", c.sig


_CHECKS: dict[PostulateId, Callable] = {
    P.R1: _r1,
    P.R2: _r2,
    P.R3: _r3,
    P.R4: _r4,
    P.R5: _r5,
    P.R6: _r6,
    P.R5c: _complete_only(_r5),
    P.R6c: _complete_only(_r6),
    P.R7: _r7,
    P.R8: _r8,
    P.RN: _rn,
    P.RF: _rf,
    P.RA: _ra,
    P.RBoB: _rbob,
    P.RBoW: _rbow,
    P.RBoWS: _rbows,
}

_PAIR = {P.R1, P.R2, P.R3, P.R4, P.R7, P.R8, P.RBoB, P.RBoW, P.RBoWS}
_TRIPLE = {P.R5, P.R6, P.R5c, P.R6c}


def _args_of(p: PostulateId, inst: CheckInstance) -> tuple:
    sig = inst.sig
    if p in _PAIR:
        return inst.phi.table, inst.mu.table
    if p in _TRIPLE:
        if inst.mu2 is None:
            raise ValueError(f"{p.value} needs a second new-information set mu2")
        return inst.phi.table, inst.mu.table, inst.mu2.table
    if p is P.RN:
        if inst.renaming is None:
            raise ValueError("RN needs a renaming")
        r = dict(inst.renaming)
        full = check_renaming(r, sig)
        return inst.phi.table, inst.mu.table, tuple(sig.index(full[a]) for a in sig.atoms)
    if p is P.RF:
        if inst.flip is None:
            raise ValueError("RF needs a flip set")
        return inst.phi.table, inst.mu.table, inst.flip.bits
    if p is P.RA:
        if inst.pair is None or not inst.fresh:
            raise ValueError("RA needs an ordered pair and a positive fresh-atom count")
        w1, w2 = inst.pair
        if inst.mu.table != (1 << w1.bits) | (1 << w2.bits):
            raise ValueError("RA instance: mu must be exactly the pair {w1, w2}")
        return inst.phi.table, w1.bits, w2.bits, inst.fresh
    raise ValueError(f"unknown postulate {p!r}")


def _instance_of(p: PostulateId, sig: Signature, args: tuple) -> CheckInstance:
    phi = ModelSet(sig, args[0])
    if p in _PAIR:
        return CheckInstance(phi, ModelSet(sig, args[1]))
    if p in _TRIPLE:
        return CheckInstance(phi, ModelSet(sig, args[1]), ModelSet(sig, args[2]))
    if p is P.RN:
        perm = args[2]
        return CheckInstance(phi, ModelSet(sig, args[1]),
                             renaming=tuple((a, sig.atoms[j]) for a, j in zip(sig.atoms, perm)))
    if p is P.RF:
        return CheckInstance(phi, ModelSet(sig, args[1]), flip=Interpretation(sig, args[2]))
    if p is P.RA:
        _, w1, w2, k = args
        return CheckInstance(phi, ModelSet(sig, (1 << w1) | (1 << w2)),
                             pair=(Interpretation(sig, w1), Interpretation(sig, w2)), fresh=k)
    raise ValueError(f"unknown postulate {p!r}")


def _counterexample(p, kind, sig, args, violation) -> Counterexample:
    lhs, rhs, rel, vsig = violation
    return Counterexample(p, kind, _instance_of(p, sig, args), ModelSet(vsig, lhs), ModelSet(vsig, rhs), rel)


def check_instance(p: PostulateId | str, op: OperatorKind | str, inst: CheckInstance) -> Counterexample | None:
    """Evaluate one postulate on one instance; ``None`` means it holds."""
    p = PostulateId.parse(p)
    kind = OperatorKind.parse(op)
    for m in (inst.mu, inst.mu2):
        if m is not None and m.sig != inst.sig:
            raise ValueError("instance components are over different signatures")
    if p in (P.RN, P.RF, P.RA) and len(inst.phi) != 1:
        raise ValueError(f"{p.value} is stated for complete priors only")
    args = _args_of(p, inst)
    v = _CHECKS[p](_Ctx(kind, inst.sig, memo=False), *args)
    return None if v is None else _counterexample(p, kind, inst.sig, args, v)


# ---------------------------------------------------------- instance spaces


def _sorted_tables(n: int) -> list[int]:
    """All truth tables over n atoms ordered by (number of models, value)."""
    return sorted(range(1 << (1 << n)), key=lambda t: (t.bit_count(), t))


def _by_size(n: int) -> list[list[int]]:
    """Truth tables over n atoms grouped by number of models."""
    groups: list[list[int]] = [[] for _ in range((1 << n) + 1)]
    for t in range(1 << (1 << n)):
        groups[t.bit_count()].append(t)
    return groups


def _complete_tables(n: int) -> list[int]:
    return [1 << w for w in range(1 << n)]


def _submasks(m: int) -> Iterator[int]:
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


@dataclass(frozen=True)
class SweepLimits:
    max_n: int = 4
    budget_ms: int | None = None
    count_all: bool = False
    minimal: bool = False
    seed: int = 0
    samples: int = 2
    """Renamings drawn per instance when all ``n!`` are too many (n = 4)."""
    workers: int = 1
    """Processes sharing the instance space. The reported counterexample does not depend on it;
    instance and violation counts do unless ``count_all`` is set."""


def _space(p: PostulateId, n: int, limits: SweepLimits) -> tuple[Iterator[tuple[tuple[int, int], tuple]], int]:
    """Instance generator yielding ``(key, args)`` plus the count of excluded degenerate instances."""
    groups = _by_size(n)
    tables = [t for g in groups for t in g]
    complete = _complete_tables(n)

    # Enumeration is ordered by the key, so the first violation found is a smallest one.
    def by_key(priors: list[list[int]], extra):
        for pg in priors:
            for g in groups:
                for phi in pg:
                    for mu in g:
                        for rest in extra(mu):
                            yield (phi.bit_count(), mu.bit_count()), (phi, mu, *rest)

    if p in _PAIR:
        return by_key(groups[1:], lambda mu: ((),)), len(tables)
    if p in _TRIPLE:
        if p in (P.R5c, P.R6c):
            return by_key([complete], lambda mu: ((m2,) for m2 in _submasks(mu))), 0
        return by_key(groups[1:], lambda mu: ((m2,) for m2 in _submasks(mu))), 3 ** (1 << n)
    if p is P.RN:
        perms = list(itertools.permutations(range(n)))
        if n <= 3:
            return by_key([complete], lambda mu: ((r,) for r in perms)), 0
        rng = random.Random(limits.seed)
        return by_key([complete], lambda mu: ((r,) for r in rng.sample(perms, limits.samples))), 0
    if p is P.RF:
        return by_key([complete], lambda mu: ((v,) for v in range(1 << n))), 0
    if p is P.RA:
        worlds = range(1 << n)
        pairs = [(w, w) for w in worlds] + [(a, b) for a in worlds for b in worlds if a != b]
        gen = (
            ((1, 1 if w1 == w2 else 2), (phi, w1, w2, k))
            for w1, w2 in pairs
            for phi in complete
            for k in (1, 2)
        )
        return gen, 0
    raise ValueError(f"unknown postulate {p!r}")


def _cap(p: PostulateId) -> int:
    if p in _TRIPLE or p in (P.RF, P.RA):
        return 3
    return 4


# ------------------------------------------------------------------ reports


EXPECTED: dict[OperatorKind, dict[PostulateId, str]] = {
    DALAL: {
        P.R1: PASS, P.R2: PASS, P.R3: PASS, P.R4: PASS, P.R5: PASS, P.R6: PASS,
        P.R5c: PASS, P.R6c: PASS, P.RN: PASS, P.RF: PASS, P.RA: PASS, P.RBoB: PASS,
    },
    DMAX: {
        P.R1: PASS, P.R2: FAIL, P.R3: PASS, P.R4: PASS, P.R5: PASS, P.R6: PASS,
        P.R5c: PASS, P.R6c: PASS, P.R7: PASS, P.R8: PASS, P.RN: PASS, P.RF: PASS,
        P.RA: PASS, P.RBoW: PASS,
    },
    SMAX: {
        P.R1: PASS, P.R2: FAIL, P.R3: PASS, P.R4: PASS, P.R5: FAIL, P.R6: FAIL,
        P.R5c: PASS, P.R6c: PASS, P.R7: FAIL, P.R8: FAIL, P.RN: PASS, P.RF: PASS,
        P.RA: PASS, P.RBoWS: PASS,
    },
}


def expected_matrix() -> dict[tuple[OperatorKind, PostulateId], str]:
    """Claimed status per (operator, postulate); pairs without a claim are absent."""
    return {(op, p): s for op, row in EXPECTED.items() for p, s in row.items()}


@dataclass
class PostulateOutcome:
    postulate: PostulateId
    status: str
    instances: int
    violations: int
    counterexample: Counterexample | None
    excluded_degenerate: int
    wall_time: float
    expected: str | None = None
    sampled: bool = False
    counted: bool = False
    """True when the sweep kept going after the first violation, so ``violations`` is exact."""

    @property
    def diverges(self) -> bool:
        return self.expected is not None and self.status != self.expected

    def symbol(self, ascii: bool = False) -> str:
        if self.status == PASS:
            return "ok" if ascii else "✓"
        if self.status == FAIL:
            return "X" if ascii else "✗"
        return "?"

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "postulate": self.postulate.value,
            "status": self.status,
            "expected": self.expected,
            "diverges": self.diverges,
            "instances": self.instances,
            "violations": self.violations,
            "excluded_degenerate": self.excluded_degenerate,
            "sampled": self.sampled,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out


@dataclass
class CheckReport:
    operator: OperatorKind
    signature_size: int
    outcomes: dict[PostulateId, PostulateOutcome] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def divergences(self) -> list[PostulateOutcome]:
        return [o for o in self.outcomes.values() if o.diverges]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "operator": self.operator.value,
            "signature_size": self.signature_size,
            "postulates": [o.to_json(timing) for o in self.outcomes.values()],
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out

    def text(self, ascii: bool = False) -> str:
        lines = [f"{self.operator.label} over {self.signature_size} atoms"]
        for o in self.outcomes.values():
            exp = o.expected or "-"
            flag = "  DIVERGES" if o.diverges else ""
            line = f"  {o.postulate.value:<6} {o.status:<7} expected {exp:<4} instances={o.instances}"
            if o.counted:
                line += f" violations={o.violations}"
            if o.excluded_degenerate:
                line += f" excluded(inconsistent prior)={o.excluded_degenerate}"
            if o.sampled:
                line += " (sampled)"
            line += f" [{o.wall_time:.2f}s]{flag}"
            lines.append(line)
            if o.counterexample is not None:
                lines.append("         " + o.counterexample.text(ascii))
        return "\n".join(lines)


def _signature(n: int) -> Signature:
    return Signature.letters(n)


def sweep(
    op: OperatorKind | str,
    p: PostulateId | str,
    n: int,
    limits: SweepLimits = SweepLimits(),
    instances: Iterable[CheckInstance] | None = None,
) -> CheckReport:
    """Check one postulate for one operator over every instance at signature size ``n``.

    With ``instances`` given, only those are checked (their signature must have ``n`` atoms).
    """
    kind = OperatorKind.parse(op)
    p = PostulateId.parse(p)
    start = time.perf_counter()
    outcome = _sweep_one(kind, p, n, limits, instances)
    report = CheckReport(kind, n, {p: outcome}, time.perf_counter() - start)
    return report


@dataclass
class _Partial:
    total: int = 0
    violations: int = 0
    best: tuple | None = None
    timed_out: bool = False

    def merge(self, other: _Partial) -> _Partial:
        best = self.best
        if other.best is not None and (best is None or other.best[0] < best[0]):
            best = other.best
        return _Partial(
            self.total + other.total,
            self.violations + other.violations,
            best,
            self.timed_out or other.timed_out,
        )


def _run(kind, p, sizes, limits, shard, shards, deadline, explicit=None) -> _Partial:
    """Sweep every ``shards``-th instance starting at ``shard`` for each signature size."""
    check = _CHECKS[p]
    out = _Partial()
    for m in sizes:
        if explicit is not None:
            sig, gen = explicit
        else:
            sig, gen = _signature(m), _space(p, m, limits)[0]
        ctx = _Ctx(kind, sig, memo=m <= 3)
        for i, (key, args) in enumerate(gen):
            if i % shards != shard:
                continue
            if deadline is not None and out.total % 256 == 0 and time.perf_counter() > deadline:
                out.timed_out = True
                return out
            out.total += 1
            v = check(ctx, *args)
            if v is None:
                continue
            out.violations += 1
            rank = (key[0], key[1], m, i)
            if out.best is None or rank < out.best[0]:
                out.best = (rank, sig, args, v)
            if not limits.count_all:
                break
    return out


def _sweep_one(kind, p, n, limits, instances) -> PostulateOutcome:
    start = time.perf_counter()
    deadline = None if limits.budget_ms is None else start + limits.budget_ms / 1000
    if n < 1:
        raise LimitError("signature size must be positive")
    if instances is not None:
        if n > MAX_SWEEP_ATOMS:
            raise LimitError(f"sweeps are capped at {MAX_SWEEP_ATOMS} atoms")
        insts = list(instances)
        for inst in insts:
            if inst.sig.n != n:
                raise ValueError("instance signature size does not match n")
        sig = insts[0].sig if insts else _signature(n)
        space = [((len(i.phi), len(i.mu)), _args_of(p, i)) for i in insts]
        part = _run(kind, p, [n], limits, 0, 1, deadline, explicit=(sig, space))
        excluded = 0
    else:
        cap = min(_cap(p), limits.max_n)
        if n > cap:
            raise LimitError(f"{p.value} sweeps are limited to n <= {cap}")
        sizes = list(range(1, n + 1)) if limits.minimal else [n]
        excluded = _space(p, n, limits)[1]
        workers = max(1, limits.workers)
        if workers == 1:
            part = _run(kind, p, sizes, limits, 0, 1, deadline)
        else:
            with ProcessPoolExecutor(workers) as pool:
                futures = [pool.submit(_run, kind, p, sizes, limits, k, workers, deadline) for k in range(workers)]
                part = _Partial()
                for f in futures:
                    part = part.merge(f.result())
    status = FAIL if part.violations else (TIMEOUT if part.timed_out else PASS)
    cex = None
    if part.best is not None:
        _, sig, args, v = part.best
        cex = _counterexample(p, kind, sig, args, v)
    return PostulateOutcome(
        p, status, part.total, part.violations, cex, excluded, time.perf_counter() - start,
        EXPECTED[kind].get(p),
        sampled=(p is P.RN and n > 3 and instances is None),
        counted=limits.count_all,
    )


def check_operator(
    op: OperatorKind | str,
    n: int,
    postulates: Iterable[PostulateId | str] | None = None,
    limits: SweepLimits = SweepLimits(),
) -> CheckReport:
    kind = OperatorKind.parse(op)
    ps = [PostulateId.parse(p) for p in postulates] if postulates is not None else list(PostulateId)
    start = time.perf_counter()
    report = CheckReport(kind, n)
    for p in ps:
        report.outcomes[p] = _sweep_one(kind, p, n, limits, None)
    report.wall_time = time.perf_counter() - start
    return report


def matrix(n: int, limits: SweepLimits = SweepLimits(), postulates=None) -> list[CheckReport]:
    """Sweep every postulate for every operator at signature size ``n``."""
    return [check_operator(kind, n, postulates, limits) for kind in OperatorKind]


def render_matrix(reports: list[CheckReport], ascii: bool = False) -> str:
    """Operators as rows, postulates as columns; ``!`` marks a divergence from the claims."""
    ps = list(reports[0].outcomes)
    head = ["operator"] + [p.value for p in ps]
    rows = [head]
    for r in reports:
        row = [r.operator.value]
        for p in ps:
            o = r.outcomes[p]
            cell = o.symbol(ascii)
            if o.status == FAIL and o.counted:
                cell += str(o.violations)
            if o.expected is None:
                cell += "(–)" if not ascii else "(-)"
            elif o.diverges:
                cell += "!"
            row.append(cell)
        rows.append(row)
    widths = [max(len(r[k]) for r in rows) for k in range(len(head))]
    lines = ["  ".join(c.ljust(widths[k]) for k, c in enumerate(r)).rstrip() for r in rows]
    legend = (
        "ok = holds on every instance, X = violated (with --count-all, followed by the count), (-) = no claim, ! = differs from the claimed status"
        if ascii
        else "✓ = holds on every instance, ✗ = violated (with --count-all, followed by the count), (–) = no claim, ! = differs from the claimed status"
    )
    return "\n".join(lines + ["", legend])


# ------------------------------------------------------------ property sweeps


@dataclass
class PropertyReport:
    name: str
    n: int
    instances: int
    violations: int
    first: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _argmin(items: Iterable[int], score: Callable[[int], int]) -> int:
    items = list(items)
    if not items:
        return 0
    best = min(score(w) for w in items)
    return table_of(w for w in items if score(w) == best)


def sweep_empty_prior(n: int) -> PropertyReport:
    """Revising the empty interpretation selects the minimal-cardinality models."""
    tables = _sorted_tables(n)[1:]
    bad, first, total = 0, None, 0
    for mu in tables:
        oracle = _argmin(table_members(mu), lambda w: bin(w).count("1"))
        for kind in OperatorKind:
            total += 1
            got = select(kind, 1, mu)
            if got != oracle:
                bad += 1
                first = first or (kind, mu, got, oracle)
    return PropertyReport("empty prior", n, total, bad, first)


def sweep_complete_prior(n: int, collapse: bool = True) -> tuple[PropertyReport, PropertyReport]:
    """Complete priors select the models nearest their single model; all operators agree."""
    tables = _sorted_tables(n)[1:]
    bad2 = badc = total = 0
    first2 = firstc = None
    for v in range(1 << n):
        phi = 1 << v
        for mu in tables:
            oracle = _argmin(table_members(mu), lambda w: bin(v ^ w).count("1"))
            got = [select(kind, phi, mu) for kind in OperatorKind]
            total += 1
            for kind, g in zip(OperatorKind, got):
                if g != oracle:
                    bad2 += 1
                    first2 = first2 or (kind, phi, mu, g, oracle)
            if collapse and not got[0] == got[1] == got[2]:
                badc += 1
                firstc = firstc or (phi, mu, got)
    return (
        PropertyReport("complete prior", n, total * 3, bad2, first2),
        PropertyReport("complete-prior collapse", n, total, badc, firstc),
    )
