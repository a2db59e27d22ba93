"""Placement delivery arrays: parsing, validation, construction, parameters.

A placement delivery array (PDA) is an F x K grid whose entries are either a
star or an integer from [1..S].  Stars mark which share rows each user
caches; each distinct integer names one multicast slot of the delivery
schedule.  The three defining conditions are:

    C1. every column contains the same number Z of stars;
    C2. the integers form the full range [1..S], each occurring at least once;
    C3. two equal integers never share a row or column, and the 2x2 subgrid
        they span is completed by stars.

Rows and columns are 1-based in every report and error message, matching the
convention of the surrounding literature; internal storage is 0-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

#: Grid entry marking a cached (star) cell.
STAR = None


class PdaFormatError(ValueError):
    """Raised when PDA text cannot be parsed into a grid."""


class PDA:
    """An F x K grid of stars and slot integers with derived parameters.

    Immutable after construction.  ``Z`` is the star count of the first
    column; ``validate`` reports a C1 violation if any column disagrees.
    """

    def __init__(self, grid: Iterable[Iterable[Optional[int]]], relabeling: Optional[dict] = None):
        rows = tuple(tuple(cell for cell in row) for row in grid)
        if not rows or not rows[0]:
            raise PdaFormatError("empty grid")
        width = len(rows[0])
        for j, row in enumerate(rows):
            if len(row) != width:
                raise PdaFormatError(f"row {j + 1} has {len(row)} entries, expected {width}")
            for k, cell in enumerate(row):
                if cell is not STAR and (not isinstance(cell, int) or cell < 1):
                    raise PdaFormatError(f"entry at row {j + 1}, column {k + 1} is {cell!r}")
        self.grid = rows
        self.F = len(rows)
        self.K = width
        self.Z = sum(1 for j in range(self.F) if rows[j][0] is STAR)
        counts: Counter = Counter(cell for row in rows for cell in row if cell is not STAR)
        self.S = len(counts)
        self._multiplicity = dict(counts)
        self.relabeling = dict(relabeling) if relabeling else None

    # ------------------------------------------------------------------
    def star_rows(self, k: int) -> tuple[int, ...]:
        """0-based rows carrying a star in 0-based column k."""
        return tuple(j for j in range(self.F) if self.grid[j][k] is STAR)

    def column_slots(self, k: int) -> dict[int, int]:
        """Map slot -> 0-based row for the integers of 0-based column k."""
        return {cell: j for j in range(self.F) for cell in [self.grid[j][k]] if cell is not STAR}

    def slot_cells(self) -> dict[int, list[tuple[int, int]]]:
        """Map slot -> list of 0-based (row, column) cells carrying it."""
        cells: dict[int, list[tuple[int, int]]] = {}
        for j in range(self.F):
            for k in range(self.K):
                cell = self.grid[j][k]
                if cell is not STAR:
                    cells.setdefault(cell, []).append((j, k))
        return cells

    def regularity(self) -> Optional[int]:
        """The shared multiplicity g when every integer occurs equally often."""
        mults = set(self._multiplicity.values())
        if len(mults) == 1:
            return mults.pop()
        return None

    def multiplicity(self, s: int) -> int:
        return self._multiplicity.get(s, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, PDA) and self.grid == other.grid

    def __hash__(self) -> int:
        return hash(self.grid)

    def __repr__(self) -> str:
        return f"PDA(K={self.K}, F={self.F}, Z={self.Z}, S={self.S})"


# ----------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------

def parse_pda(text: str) -> PDA:
    """Parse a whitespace-separated grid of "*" and positive integers.

    Lines starting with "#" (or trailing "#" comments) are ignored.  Integer
    labels that do not already form the contiguous range [1..S] are relabeled
    in order of first appearance; the applied mapping is recorded on the
    returned PDA.
    """
    rows: list[list[Optional[int]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        row: list[Optional[int]] = []
        for tok in body.split():
            if tok == "*":
                row.append(STAR)
            elif tok.isdigit() and int(tok) >= 1:
                row.append(int(tok))
            else:
                raise PdaFormatError(f"bad token {tok!r} on line {lineno}")
        rows.append(row)
    if not rows:
        raise PdaFormatError("empty grid")
    width = len(rows[0])
    for j, row in enumerate(rows):
        if len(row) != width:
            raise PdaFormatError(f"ragged grid: row {j + 1} has {len(row)} entries, expected {width}")

    seen: dict[int, int] = {}
    for row in rows:
        for cell in row:
            if cell is not STAR and cell not in seen:
                seen[cell] = len(seen) + 1
    if set(seen) == set(range(1, len(seen) + 1)):
        return PDA(rows)
    relabeled = [[STAR if cell is STAR else seen[cell] for cell in row] for row in rows]
    return PDA(relabeled, relabeling=seen)


def serialize_pda(pda: PDA) -> str:
    """Render a PDA as aligned text; parse_pda inverts this exactly."""
    tokens = [["*" if cell is STAR else str(cell) for cell in row] for row in pda.grid]
    width = max(len(tok) for row in tokens for tok in row)
    return "\n".join(" ".join(tok.rjust(width) for tok in row) for row in tokens) + "\n"


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    condition: str
    cells: tuple[tuple[int, int], ...]  # 1-based (row, column) pairs
    detail: str

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "cells": [list(c) for c in self.cells],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...] = ()

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def validate(pda: PDA) -> ValidationReport:
    """Check C1, C2 and C3; violations are data, never exceptions."""
    violations: list[Violation] = []

    star_counts = [len(pda.star_rows(k)) for k in range(pda.K)]
    for k, count in enumerate(star_counts):
        if count != pda.Z:
            cells = tuple((j + 1, k + 1) for j in pda.star_rows(k))
            violations.append(
                Violation(
                    "C1",
                    cells,
                    f"column {k + 1} has {count} stars, expected {pda.Z}",
                )
            )

    labels = set(pda._multiplicity)
    expected = set(range(1, pda.S + 1))
    if labels != expected:
        missing = sorted(expected - labels)
        extra = sorted(labels - expected)
        violations.append(
            Violation(
                "C2",
                (),
                f"integers must form [1..{pda.S}]; missing {missing}, out of range {extra}",
            )
        )

    for s, cells in sorted(pda.slot_cells().items()):
        for (j1, k1), (j2, k2) in combinations(cells, 2):
            if j1 == j2 or k1 == k2:
                violations.append(
                    Violation(
                        "C3",
                        ((j1 + 1, k1 + 1), (j2 + 1, k2 + 1)),
                        f"integer {s} repeats in the same {'row' if j1 == j2 else 'column'}",
                    )
                )
                continue
            if pda.grid[j1][k2] is not STAR or pda.grid[j2][k1] is not STAR:
                violations.append(
                    Violation(
                        "C3",
                        ((j1 + 1, k1 + 1), (j2 + 1, k2 + 1)),
                        f"integer {s} at these cells is not crossed by stars at "
                        f"({j1 + 1},{k2 + 1}) and ({j2 + 1},{k1 + 1})",
                    )
                )
    return ValidationReport(valid=not violations, violations=tuple(violations))


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------

def mn_pda(users: int, t: int) -> PDA:
    """The C(K,t) x K array built from t-subsets of the user set.

    Row T (subsets in lexicographic order) holds a star in column k when
    k is in T, and otherwise the rank of T + {k} among the (t+1)-subsets.
    The result is a (t+1)-regular (K, C(K,t), C(K-1,t-1), C(K,t+1)) PDA.
    """
    if users < 1:
        raise ValueError(f"need at least one user, got {users}")
    if not 0 <= t <= users - 1:
        raise ValueError(
            f"t must be in [0, {users - 1}]; t={t} "
            + ("gives an all-star array with no delivery slots" if t == users else "is out of range")
        )
    ids = range(1, users + 1)
    rank = {subset: i + 1 for i, subset in enumerate(combinations(ids, t + 1))}
    grid = []
    for T in combinations(ids, t):
        tset = set(T)
        grid.append(
            [
                STAR if k in tset else rank[tuple(sorted(tset | {k}))]
                for k in ids
            ]
        )
    return PDA(grid)


# ----------------------------------------------------------------------
# derived scheme parameters
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SchemeParams:
    """Cache sizes, rates and subpacketizations a PDA induces for N files."""

    K: int
    F: int
    Z: int
    S: int
    N: int
    g: Optional[int]
    M: Fraction                 # per-user cache size, in file units, keyed scheme
    rate_secret: Fraction       # S/(F-Z)
    rate_plain: Fraction        # S/F for the unkeyed baseline
    subpkt_secret: int          # F-Z
    subpkt_plain: int           # F

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "F": self.F,
            "Z": self.Z,
            "S": self.S,
            "N": self.N,
            "g": self.g,
            "M": _rational_json(self.M),
            "rate_secret": _rational_json(self.rate_secret),
            "rate_plain": _rational_json(self.rate_plain),
            "subpacketization_secret": self.subpkt_secret,
            "subpacketization_plain": self.subpkt_plain,
        }


def _rational_json(x: Fraction) -> dict:
    return {"exact": str(x), "decimal": f"{float(x):.4f}"}


def derive_params(pda: PDA, library_size: int) -> SchemeParams:
    """Exact rational memory/rate parameters for a valid PDA and N files."""
    if library_size < 1:
        raise ValueError(f"library size must be >= 1, got {library_size}")
    if pda.F == pda.Z:
        raise ValueError("PDA has no integer entries (F == Z); no delivery scheme exists")
    secret_len = pda.F - pda.Z
    return SchemeParams(
        K=pda.K,
        F=pda.F,
        Z=pda.Z,
        S=pda.S,
        N=library_size,
        g=pda.regularity(),
        M=Fraction(library_size * pda.Z, secret_len) + 1,
        rate_secret=Fraction(pda.S, secret_len),
        rate_plain=Fraction(pda.S, pda.F),
        subpkt_secret=secret_len,
        subpkt_plain=pda.F,
    )
