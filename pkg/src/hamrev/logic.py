"""Signatures, interpretations and model sets.

An interpretation over a signature of ``n`` atoms is an ``n``-bit integer
(bit ``i`` set iff ``atoms[i]`` is true). A model set is a ``2**n``-bit
truth table: bit ``w`` set iff interpretation ``w`` is a member. Fresh atoms
are always appended to a signature, so interpretations and truth tables keep
their meaning when a signature is extended.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .syntax import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Bottom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Top,
    UnknownAtomError,
    conjoin,
    disjoin,
    map_atoms,
    parse_formula,
)

MAX_ATOMS = 24
"""Hard cap on signature size for model enumeration."""

MAX_SWEEP_ATOMS = 5
"""Hard cap on signature size for exhaustive sweeps."""

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class SignatureError(ValueError):
    pass


class LimitError(ValueError):
    """A requested computation exceeds the enumeration caps."""


@dataclass(frozen=True)
class Signature:
    """Ordered, finite atom universe. Atom order fixes bit positions."""

    atoms: tuple[str, ...]
    reserved_prefix: str = "_x"

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(set(self.atoms)) != len(self.atoms):
            raise SignatureError(f"duplicate atoms in {self.atoms}")
        minted = re.compile(re.escape(self.reserved_prefix) + r"\d+\Z")
        for a in self.atoms:
            if not isinstance(a, str) or not a:
                raise SignatureError(f"invalid atom {a!r}")
            if a.startswith(self.reserved_prefix):
                if not minted.match(a):
                    raise SignatureError(f"atom {a!r} uses the reserved prefix {self.reserved_prefix!r}")
            elif not _ATOM_RE.match(a):
                raise SignatureError(f"invalid atom name {a!r}")

    @classmethod
    def of(cls, atoms: Iterable[str] | str, reserved_prefix: str = "_x") -> Signature:
        """Build a user signature from names or a comma/space separated string."""
        if isinstance(atoms, str):
            atoms = [a for a in re.split(r"[,\s]+", atoms) if a]
        atoms = tuple(atoms)
        for a in atoms:
            if a.startswith(reserved_prefix):
                raise SignatureError(f"atom {a!r} uses the reserved prefix {reserved_prefix!r}")
        return cls(atoms, reserved_prefix)

    @classmethod
    def letters(cls, n: int) -> Signature:
        """The signature ``a, b, c, ...`` of size ``n``."""
        if not 0 <= n <= 26:
            raise SignatureError("letters() supports 0..26 atoms")
        return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))

    @classmethod
    def from_formulas(cls, *formulas: Formula, reserved_prefix: str = "_x") -> Signature:
        """Default signature: the atoms occurring in ``formulas``, sorted."""
        names: set[str] = set()
        for f in formulas:
            names |= f.atoms()
        return cls(tuple(sorted(names)), reserved_prefix)

    @property
    def n(self) -> int:
        return len(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, atom: object) -> bool:
        return atom in self._index

    @property
    def _index(self) -> dict[str, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {a: i for i, a in enumerate(self.atoms)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, atom: str) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise UnknownAtomError(atom) from None

    @property
    def full(self) -> int:
        """Bits of the all-true interpretation."""
        return (1 << self.n) - 1

    @property
    def universe(self) -> int:
        """Truth table of ``true``."""
        return (1 << (1 << self.n)) - 1

    def check_size(self, cap: int = MAX_ATOMS) -> None:
        if self.n > cap:
            raise LimitError(f"signature has {self.n} atoms; the cap is {cap}")

    def fresh(self, k: int) -> tuple[Signature, tuple[str, ...]]:
        """Append ``k`` newly minted atoms; returns the extended signature and the new names."""
        start = sum(1 for a in self.atoms if a.startswith(self.reserved_prefix))
        new = tuple(f"{self.reserved_prefix}{start + i}" for i in range(k))
        return Signature(self.atoms + new, self.reserved_prefix), new

    def is_prefix_of(self, other: Signature) -> bool:
        return other.atoms[: self.n] == self.atoms

    def interp(self, spec: Iterable[str] | str | int) -> Interpretation:
        """Interpretation from atom names, a word like ``"abe"``, or raw bits."""
        if isinstance(spec, int):
            return Interpretation(self, spec)
        return Interpretation.from_atoms(self, _split_word(self, spec) if isinstance(spec, str) else spec)

    def models(self, *words) -> ModelSet:
        """Model set from words, e.g. ``sig.models("", "abcd")``."""
        return ModelSet.of(self, [self.interp(w) for w in words])

    def parse(self, text: str) -> Formula:
        return parse_formula(text, self.atoms, self.reserved_prefix)


def _split_word(sig: Signature, word: str) -> list[str]:
    word = word.strip()
    if word in ("", "∅", "{}"):
        return []
    if word.startswith("{") and word.endswith("}"):
        return [a for a in re.split(r"[,\s]+", word[1:-1]) if a]
    if "," in word:
        return [a for a in re.split(r"[,\s]+", word) if a]
    if all(len(a) == 1 for a in sig.atoms):
        return list(word)
    return [word]


def _single_letters(sig: Signature) -> bool:
    return all(len(a) == 1 for a in sig.atoms)


@dataclass(frozen=True)
class Interpretation:
    """A truth assignment, identified with its set of true atoms."""

    sig: Signature
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.sig.n:
            raise SignatureError(f"interpretation bits {self.bits:#x} exceed the signature")

    @classmethod
    def from_atoms(cls, sig: Signature, atoms: Iterable[str]) -> Interpretation:
        bits = 0
        for a in atoms:
            bits |= 1 << sig.index(a)
        return cls(sig, bits)

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(a for i, a in enumerate(self.sig.atoms) if self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, atom: str) -> bool:
        return bool(self.bits >> self.sig.index(atom) & 1)

    def __xor__(self, other: Interpretation) -> Interpretation:
        return sym_diff(self, other)

    def __str__(self) -> str:
        return interp_text(self.sig, self.bits)

    def __repr__(self) -> str:
        return f"Interpretation({interp_text(self.sig, self.bits)})"

    def to_json(self) -> list[str]:
        return list(self.atoms)


def interp_text(sig: Signature, bits: int, ascii: bool = False) -> str:
    if not bits:
        return "{}" if ascii else "∅"
    names = [a for i, a in enumerate(sig.atoms) if bits >> i & 1]
    if _single_letters(sig):
        return "".join(names)
    return "{" + ",".join(names) + "}"


def order_key(bits: int) -> tuple[int, ...]:
    """Canonical display order: compare the true-atom index lists lexicographically."""
    return tuple(i for i in range(bits.bit_length()) if bits >> i & 1)


def table_members(table: int) -> list[int]:
    """Interpretations (as bits) in a truth table, ascending numerically."""
    out = []
    while table:
        low = table & -table
        out.append(low.bit_length() - 1)
        table ^= low
    return out


def table_of(members: Iterable[int]) -> int:
    t = 0
    for w in members:
        t |= 1 << w
    return t


@dataclass(frozen=True)
class ModelSet:
    """A set of interpretations over one signature, stored as a truth table."""

    sig: Signature
    table: int

    def __post_init__(self):
        if self.table < 0 or self.table >> (1 << self.sig.n):
            raise SignatureError("truth table exceeds the signature")

    @classmethod
    def of(cls, sig: Signature, members: Iterable[Interpretation | int]) -> ModelSet:
        t = 0
        for w in members:
            if isinstance(w, Interpretation):
                if w.sig != sig:
                    raise SignatureError(f"model {w} is over a different signature")
                w = w.bits
            elif w >> sig.n:
                raise SignatureError(f"model bits {w:#x} exceed the signature")
            t |= 1 << w
        return cls(sig, t)

    @classmethod
    def empty(cls, sig: Signature) -> ModelSet:
        return cls(sig, 0)

    @classmethod
    def all(cls, sig: Signature) -> ModelSet:
        return cls(sig, sig.universe)

    @property
    def bits(self) -> list[int]:
        """Member bits in canonical order."""
        return sorted(table_members(self.table), key=order_key)

    def __iter__(self) -> Iterator[Interpretation]:
        return (Interpretation(self.sig, w) for w in self.bits)

    def __len__(self) -> int:
        return self.table.bit_count()

    def __bool__(self) -> bool:
        return self.table != 0

    def __contains__(self, w: Interpretation | int) -> bool:
        if isinstance(w, Interpretation):
            if w.sig != self.sig:
                return False
            w = w.bits
        return bool(self.table >> w & 1)

    def _same(self, other: ModelSet) -> None:
        if other.sig != self.sig:
            raise SignatureError("model sets are over different signatures")

    def __and__(self, other: ModelSet) -> ModelSet:
        self._same(other)
        return ModelSet(self.sig, self.table & other.table)

    def __or__(self, other: ModelSet) -> ModelSet:
        self._same(other)
        return ModelSet(self.sig, self.table | other.table)

    def __sub__(self, other: ModelSet) -> ModelSet:
        self._same(other)
        return ModelSet(self.sig, self.table & ~other.table)

    def __le__(self, other: ModelSet) -> bool:
        self._same(other)
        return self.table & ~other.table == 0

    def __ge__(self, other: ModelSet) -> bool:
        return other <= self

    def complement(self) -> ModelSet:
        return ModelSet(self.sig, self.sig.universe & ~self.table)

    def lift(self, sig: Signature) -> ModelSet:
        """Reinterpret over an extension of the signature; added atoms are false in every member."""
        if not self.sig.is_prefix_of(sig):
            raise SignatureError("target signature does not extend this one")
        return ModelSet(sig, self.table)

    def restrict(self, sig: Signature) -> ModelSet:
        """Inverse of :meth:`lift`; members must not make any dropped atom true."""
        if not sig.is_prefix_of(self.sig):
            raise SignatureError("target signature is not a prefix of this one")
        if self.table >> (1 << sig.n):
            raise SignatureError("a member makes an atom outside the target signature true")
        return ModelSet(sig, self.table)

    def text(self, ascii: bool = False) -> str:
        return "{" + ", ".join(interp_text(self.sig, w, ascii) for w in self.bits) + "}"

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"ModelSet({self.text()})"

    def to_json(self) -> list[list[str]]:
        return [Interpretation(self.sig, w).to_json() for w in self.bits]


# ------------------------------------------------------------ semantics


@lru_cache(maxsize=None)
def _atom_table(n: int, k: int) -> int:
    """Truth table of the k-th atom over n atoms."""
    half = 1 << k
    block = ((1 << half) - 1) << half
    width = half << 1
    t = block
    total = 1 << n
    while width < total:
        t |= t << width
        width <<= 1
    return t


def truth_table(f: Formula, sig: Signature) -> int:
    sig.check_size()
    full = sig.universe

    def ev(node: Formula) -> int:
        if isinstance(node, Atom):
            return _atom_table(sig.n, sig.index(node.name))
        if isinstance(node, Top):
            return full
        if isinstance(node, Bottom):
            return 0
        if isinstance(node, Not):
            return full ^ ev(node.arg)
        left, right = ev(node.left), ev(node.right)
        if isinstance(node, And):
            return left & right
        if isinstance(node, Or):
            return left | right
        if isinstance(node, Implies):
            return (full ^ left) | right
        if isinstance(node, Iff):
            return full ^ (left ^ right)
        raise TypeError(f"not a formula: {node!r}")

    return ev(f)


def models(f: Formula, sig: Signature) -> ModelSet:
    """All interpretations over ``sig`` satisfying ``f``."""
    return ModelSet(sig, truth_table(f, sig))


def minterm(sig: Signature, bits: int) -> Formula:
    return conjoin([Atom(a) if bits >> i & 1 else Not(Atom(a)) for i, a in enumerate(sig.atoms)])


def formula_from_models(m: ModelSet, sig: Signature | None = None) -> Formula:
    """Canonical full DNF: one complete conjunction per model, in canonical order."""
    if sig is not None and m.sig != sig:
        raise SignatureError("model set is over a different signature")
    return disjoin([minterm(m.sig, w) for w in m.bits]) if m else BOTTOM


def entails(f: Formula, g: Formula, sig: Signature) -> bool:
    return truth_table(f, sig) & ~truth_table(g, sig) == 0


def equivalent(f: Formula, g: Formula, sig: Signature) -> bool:
    return truth_table(f, sig) == truth_table(g, sig)


def is_consistent(f: Formula, sig: Signature) -> bool:
    return truth_table(f, sig) != 0


def is_complete(f: Formula, sig: Signature) -> bool:
    return truth_table(f, sig).bit_count() == 1


def epsilon(sig: Signature) -> Formula:
    """The formula whose only model is the empty interpretation."""
    return minterm(sig, 0)


def alpha(sig: Signature) -> Formula:
    """The formula whose only model makes every atom true."""
    return minterm(sig, sig.full)


def sym_diff(v: Interpretation, w: Interpretation) -> Interpretation:
    if v.sig != w.sig:
        raise SignatureError("interpretations are over different signatures")
    return Interpretation(v.sig, v.bits ^ w.bits)


def dual(f: Formula) -> Formula:
    """Replace every atom occurrence by its negation."""
    return map_atoms(f, lambda a: Not(a))


def dual_set(m: ModelSet) -> ModelSet:
    """Semantic counterpart of :func:`dual`: complement every member."""
    full = m.sig.full
    return ModelSet(m.sig, table_of(full ^ w for w in table_members(m.table)))


# ------------------------------------------------------- renaming / flipping


def check_renaming(r: Mapping[str, str], sig: Signature) -> dict[str, str]:
    """Validate ``r`` as a bijection on the atoms of ``sig``; unmapped atoms stay fixed."""
    full = {a: r.get(a, a) for a in sig.atoms}
    extra = set(r) - set(sig.atoms)
    if extra:
        raise SignatureError(f"renaming mentions atoms outside the signature: {sorted(extra)}")
    if sorted(full.values()) != sorted(sig.atoms):
        raise SignatureError("renaming is not a bijection on the signature")
    return full


def _perm_bits(r: dict[str, str], sig: Signature) -> list[int]:
    return [1 << sig.index(r[a]) for a in sig.atoms]


def rename_bits(perm: list[int], w: int) -> int:
    out = 0
    i = 0
    while w:
        if w & 1:
            out |= perm[i]
        w >>= 1
        i += 1
    return out


def rename_formula(r: Mapping[str, str], f: Formula, sig: Signature | None = None) -> Formula:
    if sig is not None:
        r = check_renaming(r, sig)
    else:
        if sorted(r.keys()) != sorted(r.values()):
            raise SignatureError("renaming is not a bijection")
    return map_atoms(f, lambda a: Atom(r.get(a.name, a.name)))


def rename_interp(r: Mapping[str, str], w: Interpretation) -> Interpretation:
    full = check_renaming(r, w.sig)
    return Interpretation(w.sig, rename_bits(_perm_bits(full, w.sig), w.bits))


def rename_set(r: Mapping[str, str], m: ModelSet) -> ModelSet:
    perm = _perm_bits(check_renaming(r, m.sig), m.sig)
    return ModelSet(m.sig, table_of(rename_bits(perm, w) for w in table_members(m.table)))


def flip_interp(v: Interpretation, w: Interpretation) -> Interpretation:
    return sym_diff(w, v)


def flip_table(v: int, table: int) -> int:
    return table_of(w ^ v for w in table_members(table))


def flip_set(v: Interpretation, m: ModelSet) -> ModelSet:
    if v.sig != m.sig:
        raise SignatureError("flip set and model set are over different signatures")
    return ModelSet(m.sig, flip_table(v.bits, m.table))


def flip_formula(v: Interpretation, f: Formula) -> Formula:
    """Negate every occurrence of the atoms true in ``v``."""
    flipped = set(v.atoms)
    return map_atoms(f, lambda a: Not(a) if a.name in flipped else a)


__all__ = [
    "BOTTOM",
    "TOP",
    "Interpretation",
    "LimitError",
    "MAX_ATOMS",
    "MAX_SWEEP_ATOMS",
    "ModelSet",
    "Signature",
    "SignatureError",
    "alpha",
    "dual",
    "dual_set",
    "entails",
    "epsilon",
    "equivalent",
    "flip_formula",
    "flip_interp",
    "flip_set",
    "formula_from_models",
    "is_complete",
    "is_consistent",
    "models",
    "rename_formula",
    "rename_interp",
    "rename_set",
    "sym_diff",
    "truth_table",
]
