"""Placement delivery arrays: data model, validity checker, canonical form.

A placement delivery array (PDA) is an F x K grid whose cells are either a
star or one of S positive integer symbols.  Columns index users, rows index
packet positions.  A star at (j, k) means user k caches packet j of every
file; a symbol s means packet j of user k's demand is served in broadcast
slot s.  The grid is a valid PDA when

  C1  every column holds the same number Z of stars,
  C2  the symbols present are exactly 1..S with no gaps,
  C3  two cells carrying the same symbol lie in distinct rows and distinct
      columns (C3a) and the two opposite corners of the rectangle they span
      are both stars (C3b).

C3 is what makes every slot simultaneously useful: each user served in slot
s has cached everything else that was XORed into it.  A valid grid yields a
caching scheme with memory ratio M/N = Z/F and delivery rate R = S/F; both
are kept as exact rationals throughout.

Internally stars are stored as 0 in a read-only numpy int32 grid, so 0 is
never a symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels

STAR = 0


class PdaError(ValueError):
    """Malformed grid or parameter domain violation."""


@dataclass(frozen=True)
class PdaParams:
    """Counted parameters (K, F, Z, S) of a valid array."""

    k: int
    f: int
    z: int
    s: int

    def __post_init__(self):
        if self.k < 1 or self.f < 1:
            raise PdaError("K and F must be positive")
        if not 0 <= self.z <= self.f:
            raise PdaError("Z must lie in [0, F]")
        if self.s < 1:
            raise PdaError("S must be at least 1")

    @property
    def ratio(self) -> Fraction:
        """Memory ratio M/N = Z/F."""
        return Fraction(self.z, self.f)

    @property
    def rate(self) -> Fraction:
        """Delivery rate R = S/F."""
        return Fraction(self.s, self.f)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k, self.f, self.z, self.s)


@dataclass(frozen=True)
class Violation:
    condition: str  # "C1" | "C2" | "C3a" | "C3b"
    locations: tuple[tuple[int, int], ...]  # 1-based (row, column) pairs
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return f"invalid ({len(self.violations)} violation(s))"


class PdaArray:
    """Immutable F x K grid over {star} | {1..S}; star stored as 0."""

    __slots__ = ("grid",)

    def __init__(self, grid):
        g = np.asarray(grid)
        if g.ndim != 2 or g.shape[0] < 1 or g.shape[1] < 1:
            raise PdaError("grid must be a 2-D array with at least one row and column")
        if not np.issubdtype(g.dtype, np.integer):
            raise PdaError("grid cells must be integers (0 encodes the star)")
        if g.size and int(g.min()) < 0:
            raise PdaError("symbols must be positive; 0 encodes the star")
        if g.size and int(g.max()) > np.iinfo(np.int32).max:
            raise PdaError("symbol values exceed the int32 grid range")
        g = np.ascontiguousarray(g, dtype=np.int32)
        g.flags.writeable = False
        object.__setattr__(self, "grid", g)

    def __setattr__(self, name, value):
        raise AttributeError("PdaArray is immutable")

    @property
    def f(self) -> int:
        return self.grid.shape[0]

    @property
    def k(self) -> int:
        return self.grid.shape[1]

    @property
    def star_mask(self) -> np.ndarray:
        return self.grid == STAR

    @classmethod
    def from_rows(cls, rows) -> "PdaArray":
        """Build from row lists whose cells are '*', None, or positive ints."""
        coded = [
            [STAR if c in ("*", None) else int(c) for c in row]
            for row in rows
        ]
        widths = {len(r) for r in coded}
        if len(widths) != 1:
            raise PdaError("rows have unequal lengths")
        return cls(np.array(coded, dtype=np.int32))

    def to_rows(self) -> list[list[object]]:
        return [
            ["*" if v == STAR else int(v) for v in row]
            for row in self.grid
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PdaArray):
            return NotImplemented
        return self.grid.shape == other.grid.shape and bool(
            np.array_equal(self.grid, other.grid)
        )

    def __hash__(self):
        return hash((self.grid.shape, self.grid.tobytes()))

    def __repr__(self) -> str:
        return f"PdaArray(F={self.f}, K={self.k})"


def _nonzero_sorted(grid: np.ndarray):
    """Non-star cells sorted by (symbol, column), plus group starts."""
    rows, cols = np.nonzero(grid)
    vals = grid[rows, cols]
    order = np.lexsort((rows, cols, vals))
    rows = rows[order].astype(np.int64)
    cols = cols[order].astype(np.int64)
    vals = vals[order]
    uniq, starts = np.unique(vals, return_index=True)
    starts = np.concatenate((starts, [vals.shape[0]])).astype(np.int64)
    return rows, cols, uniq.astype(np.int64), starts


def verify_pda(arr: PdaArray, *, declared_z: int | None = None,
               declared_s: int | None = None) -> VerificationReport:
    """Check C1-C3 and report every violation, not just the first.

    ``declared_z`` / ``declared_s`` let a caller (e.g. the file verifier)
    check against header-declared values instead of counted ones; left to
    None, Z is the most common column star count and S the largest symbol
    present.  Cost of the C3 pass is sum over symbols of (count choose 2),
    grouped by symbol, never (F*K)^2.
    """
    grid = arr.grid
    violations: list[Violation] = []

    # C1: uniform star count per column
    star_counts = (grid == STAR).sum(axis=0)
    if declared_z is not None:
        z_ref = declared_z
    else:
        z_ref = int(np.bincount(star_counts).argmax())
    for k in np.flatnonzero(star_counts != z_ref):
        violations.append(Violation(
            "C1", (),
            f"column {k + 1} has {int(star_counts[k])} stars, expected Z={z_ref}",
        ))

    # C2: symbols present are exactly 1..S
    rows, cols, uniq, starts = _nonzero_sorted(grid)
    if uniq.size == 0:
        violations.append(Violation("C2", (), "array contains no integer symbols"))
        s_ref = 0
    else:
        s_ref = declared_s if declared_s is not None else int(uniq.max())
        present = set(int(v) for v in uniq)
        for s in range(1, s_ref + 1):
            if s not in present:
                violations.append(Violation("C2", (), f"symbol {s} never occurs"))
        for s in sorted(present):
            if s > s_ref:
                where = np.flatnonzero(grid == s)
                locs = tuple(
                    (int(p // grid.shape[1]) + 1, int(p % grid.shape[1]) + 1)
                    for p in where
                )
                violations.append(Violation(
                    "C2", locs, f"symbol {s} exceeds S={s_ref}"))

    # C3: same-symbol pair scan
    c3 = []
    for code, r1, c1, r2, c2 in _kernels.c3_pair_scan(grid, rows, cols, starts):
        s = int(grid[r1, c1])
        loc = ((r1 + 1, c1 + 1), (r2 + 1, c2 + 1))
        if code == 0:
            axis = "row" if r1 == r2 else "column"
            n = (r1 if r1 == r2 else c1) + 1
            c3.append(Violation("C3a", loc, f"symbol {s} repeats in {axis} {n}"))
        else:
            missing = []
            if grid[r1, c2] != STAR:
                missing.append(f"({r1 + 1},{c2 + 1})")
            if grid[r2, c1] != STAR:
                missing.append(f"({r2 + 1},{c1 + 1})")
            c3.append(Violation(
                "C3b", loc,
                f"symbol {s}: cross cell(s) {', '.join(missing)} not a star",
            ))
    c3.sort(key=lambda v: (v.condition, v.locations))
    violations.extend(c3)
    return VerificationReport(tuple(violations))


def params_of(arr: PdaArray) -> PdaParams:
    """Count (K, F, Z, S); rejects arrays whose columns disagree on Z."""
    grid = arr.grid
    star_counts = (grid == STAR).sum(axis=0)
    if star_counts.size and (star_counts != star_counts[0]).any():
        raise PdaError(
            "Z is undefined: column star counts are "
            + ", ".join(str(int(c)) for c in star_counts)
        )
    s = int(grid.max())
    if s == 0:
        raise PdaError("array contains no integer symbols, S must be at least 1")
    return PdaParams(k=arr.k, f=arr.f, z=int(star_counts[0]), s=s)


def canonicalize(arr: PdaArray) -> PdaArray:
    """Renumber symbols to 1..S by first appearance in row-major order.

    The star pattern is untouched and the map is a bijection, so validity and
    counted parameters are preserved; the operation is idempotent.
    """
    flat = arr.grid.ravel()
    nz = flat[flat != STAR]
    if nz.size == 0:
        return PdaArray(arr.grid)
    vals, first_idx = np.unique(nz, return_index=True)
    order = np.argsort(first_idx, kind="stable")
    lut = np.zeros(int(vals.max()) + 1, dtype=np.int32)
    lut[vals[order]] = np.arange(1, vals.size + 1, dtype=np.int32)
    return PdaArray(lut[arr.grid])


def equivalent(a: PdaArray, b: PdaArray) -> bool:
    """True when b is a under some bijective relabeling of its symbols.

    Requires identical dimensions and star pattern; the induced cell-wise
    symbol map must be single-valued in both directions.
    """
    if a.grid.shape != b.grid.shape:
        return False
    ga, gb = a.grid, b.grid
    if not np.array_equal(ga == STAR, gb == STAR):
        return False
    va = ga[ga != STAR]
    vb = gb[gb != STAR]
    if va.size == 0:
        return True
    pairs = np.unique(np.stack((va, vb), axis=1), axis=0)
    return pairs.shape[0] == np.unique(va).size == np.unique(vb).size
