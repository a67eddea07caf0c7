"""Brute-force reference implementations on plain Python sets.

Interpretations here are frozensets of atom names and formulas are evaluated
by direct recursion, so nothing below shares code with the bit-level package.
"""

from __future__ import annotations

from itertools import chain, combinations

from hamrev import syntax as S


def worlds(atoms):
    atoms = list(atoms)
    return [frozenset(c) for c in chain.from_iterable(combinations(atoms, k) for k in range(len(atoms) + 1))]


def holds(f, w) -> bool:
    if isinstance(f, S.Atom):
        return f.name in w
    if isinstance(f, S.Top):
        return True
    if isinstance(f, S.Bottom):
        return False
    if isinstance(f, S.Not):
        return not holds(f.arg, w)
    if isinstance(f, S.And):
        return holds(f.left, w) and holds(f.right, w)
    if isinstance(f, S.Or):
        return holds(f.left, w) or holds(f.right, w)
    if isinstance(f, S.Implies):
        return (not holds(f.left, w)) or holds(f.right, w)
    if isinstance(f, S.Iff):
        return holds(f.left, w) == holds(f.right, w)
    raise TypeError(f)


def models(f, atoms) -> set[frozenset]:
    return {w for w in worlds(atoms) if holds(f, w)}


def d(v, w) -> int:
    return len(v ^ w)


def revise(kind: str, phi: set, mu: set) -> set:
    """Definitional revision: argmin over mu of the aggregate over phi."""
    if not mu:
        return set()
    if not phi:
        return set(mu)
    if kind == "dalal":
        score = {w: min(d(v, w) for v in phi) for w in mu}
    elif kind == "dmax":
        score = {w: max(d(v, w) for v in phi) for w in mu}
    elif kind == "smax":
        score = {w: max(d(v, w) - min(d(v, u) for u in mu) for v in phi) for w in mu}
    else:
        raise ValueError(kind)
    best = min(score.values())
    return {w for w, s in score.items() if s == best}


def words(ms) -> set[frozenset]:
    """Package ModelSet -> set of frozensets of atom names."""
    return {frozenset(w.atoms) for w in ms}


def to_modelset(sig, sets):
    from hamrev import ModelSet

    return ModelSet.of(sig, [sig.interp(sorted(s)) for s in sets])
