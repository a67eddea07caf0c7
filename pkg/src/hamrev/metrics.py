"""Hamming distance, min/max distance to a model set, and relative surprise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .logic import Interpretation, ModelSet, SignatureError, interp_text

Kind = Literal["distance", "surprise"]


def _same_sig(v: Interpretation, w: Interpretation) -> None:
    if v.sig != w.sig:
        raise SignatureError("interpretations are over different signatures")


def _nonempty(m: ModelSet, what: str = "model set") -> None:
    if not m:
        raise ValueError(f"{what} is empty")


def hamming(v: Interpretation, w: Interpretation) -> int:
    _same_sig(v, w)
    return (v.bits ^ w.bits).bit_count()


def min_dist(v: Interpretation, m: ModelSet) -> int:
    if v.sig != m.sig:
        raise SignatureError("interpretation and model set are over different signatures")
    _nonempty(m)
    return min((v.bits ^ w).bit_count() for w in m.bits)


def max_dist(v: Interpretation, m: ModelSet) -> int:
    if v.sig != m.sig:
        raise SignatureError("interpretation and model set are over different signatures")
    _nonempty(m)
    return max((v.bits ^ w).bit_count() for w in m.bits)


def surprise(v: Interpretation, w: Interpretation, m: ModelSet) -> int:
    """Distance from ``v`` to ``w`` discounted by the best distance ``m`` allows from ``v``.

    Only defined for ``w`` in ``m``; the result is then non-negative.
    """
    _same_sig(v, w)
    if w not in m:
        raise ValueError(f"{w} is not a model of the reference set")
    return hamming(v, w) - min_dist(v, m)


@dataclass(frozen=True)
class DistanceTable:
    """Cells indexed ``[row][col]`` with rows the prior models and columns the candidates.

    ``distances`` always holds the raw Hamming distances; for ``kind="surprise"``
    ``reference[i]`` is the min-distance from row ``i`` to the candidate set and
    ``cells = distances - reference``.
    """

    rows: tuple[Interpretation, ...]
    cols: tuple[Interpretation, ...]
    distances: tuple[tuple[int, ...], ...]
    reference: tuple[int, ...]
    kind: Kind

    @property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        if self.kind == "distance":
            return self.distances
        return tuple(tuple(d - r for d in row) for row, r in zip(self.distances, self.reference))

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.cells]

    @property
    def col_min(self) -> tuple[int, ...]:
        return tuple(min(self.column(j)) for j in range(len(self.cols)))

    @property
    def col_max(self) -> tuple[int, ...]:
        return tuple(max(self.column(j)) for j in range(len(self.cols)))

    def decomposition(self, i: int, j: int) -> str:
        """Cell as ``"d-r"`` for surprise tables, plain value otherwise."""
        if self.kind == "distance":
            return str(self.distances[i][j])
        return f"{self.distances[i][j]}-{self.reference[i]}"

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "rows": [r.to_json() for r in self.rows],
            "cols": [c.to_json() for c in self.cols],
            "cells": [list(r) for r in self.cells],
            "aggregates": {"min": list(self.col_min), "max": list(self.col_max)},
        }
        if self.kind == "surprise":
            out["distances"] = [list(r) for r in self.distances]
            out["reference"] = list(self.reference)
        return out

    def render(self, ascii: bool = False, mark: str | None = None) -> str:
        """Aligned text table: one line per candidate, one column per prior model.

        ``mark`` ("min" or "max") stars the aggregate values that are minimal.
        """
        sym = "s" if self.kind == "surprise" else "d"
        aggs = [("min", self.col_min), ("max", self.col_max)] if self.kind == "distance" else [("max", self.col_max)]
        header = [sym] + [interp_text(r.sig, r.bits, ascii) for r in self.rows] + [name for name, _ in aggs]
        lines = [header]
        for j, w in enumerate(self.cols):
            line = [interp_text(w.sig, w.bits, ascii)]
            line += [self.decomposition(i, j) for i in range(len(self.rows))]
            for name, values in aggs:
                cell = str(values[j])
                if mark == name and values[j] == min(values):
                    cell += "*"
                line.append(cell)
            lines.append(line)
        widths = [max(len(line[k]) for line in lines) for k in range(len(header))]
        text = []
        for line in lines:
            text.append("  ".join(cell.rjust(widths[k]) if k else cell.ljust(widths[k]) for k, cell in enumerate(line)))
        return "\n".join(t.rstrip() for t in text)


def build_table(phi: ModelSet, mu: ModelSet, kind: Kind = "distance") -> DistanceTable:
    """Distance or surprise table for ``phi`` (rows) against ``mu`` (columns)."""
    if phi.sig != mu.sig:
        raise SignatureError("model sets are over different signatures")
    if kind not in ("distance", "surprise"):
        raise ValueError(f"unknown table kind {kind!r}")
    _nonempty(phi, "prior model set")
    _nonempty(mu, "candidate model set")
    rows = tuple(phi)
    cols = tuple(mu)
    distances = tuple(tuple((v.bits ^ w.bits).bit_count() for w in cols) for v in rows)
    reference = tuple(min(r) for r in distances) if kind == "surprise" else tuple(0 for _ in rows)
    return DistanceTable(rows, cols, distances, reference, kind)
