"""Placement delivery arrays: the grid type, structural validation and grid algebra.

A PDA is stored as a read-only ``int64`` array where ``STAR`` (-1) marks a star
and every other entry is a non-negative symbol index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from os import PathLike
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "STAR",
    "CONDITIONS",
    "StructuralError",
    "Pda",
    "Violation",
    "ValidationReport",
    "validate",
    "shift_add",
    "transpose",
    "concat_columns",
    "parse_pda",
    "format_pda",
    "read_pda",
    "write_pda",
]

STAR = -1

# Order in which findings are listed in a report.
CONDITIONS = ("C1", "C2", "C3a", "C3b", "cyclicity")


class StructuralError(ValueError):
    """The input is not a rectangular grid of stars and non-negative integers."""


def _entry(token) -> int:
    if token is None or token == "*" or token == STAR:
        return STAR
    if isinstance(token, str):
        if not token.isdigit():
            raise StructuralError(f"bad PDA token {token!r}")
        return int(token)
    if isinstance(token, (bool, np.bool_)) or int(token) != token or token < 0:
        raise StructuralError(f"bad PDA entry {token!r}")
    return int(token)


class Pda:
    """An ``F x K`` array over ``{STAR} | {0, 1, 2, ...}``.

    Rows index packets (sub-files), columns index users. Instances are
    immutable; every operation returns a new grid.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise StructuralError(f"expected a non-empty 2-D grid, got shape {a.shape}")
        if (a < STAR).any():
            raise StructuralError("entries must be STAR or non-negative integers")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> Pda:
        """Build a grid from nested rows; ``"*"``, ``None`` and ``STAR`` are stars."""
        rows = [[_entry(t) for t in row] for row in rows]
        if not rows:
            raise StructuralError("grid has no rows")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise StructuralError(f"row {i} has {len(row)} entries, expected {width}")
        return cls(rows)

    @classmethod
    def all_stars(cls, F: int, K: int) -> Pda:
        return cls(np.full((F, K), STAR, dtype=np.int64))

    @property
    def entries(self) -> np.ndarray:
        return self._a

    @property
    def F(self) -> int:
        return self._a.shape[0]

    @property
    def K(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def star_mask(self) -> np.ndarray:
        return self._a == STAR

    def symbols(self) -> np.ndarray:
        """Distinct symbols in increasing order."""
        return np.unique(self._a[self._a != STAR])

    def is_star(self, i: int, j: int) -> bool:
        return bool(self._a[i, j] == STAR)

    def __getitem__(self, key):
        return self._a[key]

    def __eq__(self, other):
        if not isinstance(other, Pda):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"Pda(F={self.F}, K={self.K})\n{format_pda(self, header=False)}"

    def tolist(self) -> list[list[int | str]]:
        return [["*" if x == STAR else int(x) for x in row] for row in self._a]


@dataclass(frozen=True)
class Violation:
    """One failed condition. ``cells`` holds the offending (row, col) pair for C3 findings."""

    condition: str
    column: int | None = None
    symbol: int | None = None
    cells: tuple[tuple[int, int], ...] = ()

    def sort_key(self):
        return (
            CONDITIONS.index(self.condition),
            -1 if self.column is None else self.column,
            -1 if self.symbol is None else self.symbol,
            self.cells,
        )

    def __str__(self):
        if self.condition == "C1":
            return f"C1: column {self.column} has a star count different from the other columns"
        if self.condition == "C2":
            if self.symbol is None:
                return "C2: no integer occurs in the array"
            return f"C2: symbol {self.symbol} does not occur"
        if self.condition == "C3a":
            return f"C3a: symbol {self.symbol} repeats in a row or column at {self.cells}"
        if self.condition == "C3b":
            return f"C3b: symbol {self.symbol} at {self.cells} lacks stars at the crossing positions"
        return f"cyclicity: stars of column {self.column} are not cyclically consecutive"


@dataclass(frozen=True)
class ValidationReport:
    F: int
    K: int
    is_pda: bool
    Z: int | None
    S: int
    regular_g: int | None
    cyclic_t: int | None
    violations: tuple[Violation, ...] = field(default=())

    @property
    def summary(self) -> str:
        if not self.is_pda:
            return f"not a PDA ({len(self.violations)} findings)"
        s = f"({self.K},{self.F},{self.Z},{self.S}) PDA"
        if self.regular_g is not None:
            s = f"{self.regular_g}-regular {s}"
        if self.cyclic_t is not None:
            s = f"{self.cyclic_t}-cyclic {s}"
        return s

    def to_dict(self) -> dict:
        return {
            "F": self.F,
            "K": self.K,
            "is_pda": self.is_pda,
            "Z": self.Z,
            "S": self.S,
            "regular_g": self.regular_g,
            "cyclic_t": self.cyclic_t,
            "summary": self.summary,
            "violations": [
                {
                    "condition": v.condition,
                    "column": v.column,
                    "symbol": v.symbol,
                    "cells": [list(c) for c in v.cells],
                    "message": str(v),
                }
                for v in self.violations
            ],
        }


def _modal_count(counts: Iterable[int]) -> int:
    """Most frequent value; ties go to the smallest value."""
    c = Counter(counts)
    best = max(c.values())
    return min(v for v, n in c.items() if n == best)


def _report(F, K, star_counts, symbol_counts, c3, noncyclic_columns, shift_ok) -> ValidationReport:
    # C1 reference count is the most common per-column star count, so the
    # columns that disagree with it are the ones reported.
    violations = list(c3)
    ref = _modal_count(star_counts)
    bad_cols = [j for j, n in enumerate(star_counts) if n != ref]
    violations += [Violation("C1", column=j) for j in bad_cols]
    Z = None if bad_cols else ref

    if not symbol_counts:
        violations.append(Violation("C2"))
    else:
        top = max(symbol_counts)
        violations += [Violation("C2", symbol=s) for s in range(top + 1) if s not in symbol_counts]
    is_pda = not violations

    violations += [Violation("cyclicity", column=j) for j in noncyclic_columns]

    regular_g = None
    if is_pda and len(set(symbol_counts.values())) == 1:
        regular_g = next(iter(symbol_counts.values()))

    cyclic_t = None
    if regular_g is not None and not noncyclic_columns:
        cyclic_t = next((t for t in range(1, F) if shift_ok(t)), None)

    return ValidationReport(
        F=F,
        K=K,
        is_pda=is_pda,
        Z=Z,
        S=len(symbol_counts),
        regular_g=regular_g,
        cyclic_t=cyclic_t,
        violations=tuple(sorted(violations, key=Violation.sort_key)),
    )


def _cyclically_consecutive(col: np.ndarray) -> bool:
    # An interval modulo F has at most one star->non-star boundary going round.
    return int(np.count_nonzero(col & ~np.roll(col, -1))) <= 1


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def validate(p: Pda) -> ValidationReport:
    """Check conditions C1, C2, C3 and report regularity and cyclicity.

    Every violation is collected in one pass. ``cyclic_t`` is the smallest
    ``t >= 1`` such that each column's star rows are the previous column's
    star rows shifted down by ``t`` (mod F), reported only for regular PDAs
    whose columns all hold cyclically consecutive stars.
    """
    if not isinstance(p, Pda):
        raise StructuralError("validate expects a Pda")
    a = p.entries
    F, K = a.shape
    stars = a == STAR

    star_counts = stars.sum(axis=0).tolist()
    sym, cnt = np.unique(a[~stars], return_counts=True)
    symbol_counts = dict(zip(sym.tolist(), cnt.tolist()))

    rows, cols = np.nonzero(~stars)
    vals = a[rows, cols]
    order = np.argsort(vals, kind="stable")
    rows, cols, vals = rows[order], cols[order], vals[order]
    starts = np.flatnonzero(np.r_[True, vals[1:] != vals[:-1]]) if len(vals) else np.array([], int)
    bounds = np.r_[starts, len(vals)]

    c3 = []
    for b0, b1 in zip(bounds[:-1], bounds[1:]):
        if b1 - b0 < 2:
            continue
        r, c = rows[b0:b1], cols[b0:b1]
        x, y = _pairs(len(r))
        r1, c1, r2, c2 = r[x], c[x], r[y], c[y]
        clash = (r1 == r2) | (c1 == c2)
        crossed = stars[r1, c2] & stars[r2, c1]
        s = int(vals[b0])
        for idx in np.flatnonzero(clash | ~crossed):
            pair = tuple(sorted(((int(r1[idx]), int(c1[idx])), (int(r2[idx]), int(c2[idx])))))
            c3.append(Violation("C3a" if clash[idx] else "C3b", symbol=s, cells=pair))

    noncyclic = [j for j in range(K) if not _cyclically_consecutive(stars[:, j])]

    def shift_ok(t: int) -> bool:
        return bool(np.array_equal(stars[:, 1:], np.roll(stars[:, :-1], t, axis=0)))

    return _report(F, K, star_counts, symbol_counts, c3, noncyclic, shift_ok)


def shift_add(p: Pda, b: int) -> Pda:
    """Add ``b`` to every symbol; stars absorb the addition."""
    if b < 0:
        raise ValueError("shift must be non-negative")
    a = p.entries
    return Pda(np.where(a == STAR, STAR, a + b))


def transpose(p: Pda) -> Pda:
    return Pda(p.entries.T)


def concat_columns(parts: Sequence[Pda]) -> Pda:
    """Place grids side by side, in order."""
    if not parts:
        raise StructuralError("nothing to concatenate")
    F = parts[0].F
    for n, q in enumerate(parts):
        if q.F != F:
            raise StructuralError(f"part {n} has {q.F} rows, expected {F}")
    return Pda(np.hstack([q.entries for q in parts]))


def parse_pda(text: str) -> Pda:
    """Parse the text format: a ``F K`` header line, then F lines of K tokens."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise StructuralError("empty PDA text")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise StructuralError(f"bad header line {lines[0]!r}, expected 'F K'")
    F, K = map(int, head)
    body = [ln.split() for ln in lines[1:]]
    if len(body) != F:
        raise StructuralError(f"header declares {F} rows, found {len(body)}")
    for i, row in enumerate(body):
        if len(row) != K:
            raise StructuralError(f"row {i} has {len(row)} tokens, header declares {K}")
    return Pda.from_rows(body)


def format_pda(p: Pda, header: bool = True) -> str:
    lines = [" ".join(str(x) for x in row) for row in p.tolist()]
    if header:
        lines.insert(0, f"{p.F} {p.K}")
    return "\n".join(lines) + "\n"


def read_pda(path: str | PathLike) -> Pda:
    with open(path, encoding="utf-8") as fh:
        return parse_pda(fh.read())


def write_pda(p: Pda, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pda(p))
