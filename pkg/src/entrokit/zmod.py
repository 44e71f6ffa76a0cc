"""Exact linear algebra for subgroups of Z_d^m.

Subgroups are represented by integer lattices that contain d*Z^m, canonicalized
via a row-style Hermite normal form.  This handles composite moduli uniformly:
non-free submodules such as span{(2,0)} in Z_4^2 need no special casing.  All
orders are exact Python integers; nothing here ever touches floating point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence


def _hermite_rows(rows: Sequence[Sequence[int]], ncols: int, d: int) -> list[list[int]]:
    """Hermite normal form of the lattice spanned by ``rows`` plus d*Z^ncols.

    Returns the full-rank ncols x ncols upper-triangular basis with positive
    pivots and above-pivot entries reduced into [0, pivot).  Because the
    lattice contains d*Z^ncols, every intermediate entry may be reduced mod d,
    which keeps the arithmetic on small nonnegative integers.
    """
    mat = [[x % d for x in row] for row in rows]
    mat = [row for row in mat if any(row)]
    for i in range(ncols):
        e = [0] * ncols
        e[i] = d
        mat.append(e)

    top = 0
    nrows = len(mat)
    for col in range(ncols):
        while True:
            best = -1
            best_val = d + 1
            for idx in range(top, nrows):
                a = mat[idx][col]
                if a and a < best_val:
                    best, best_val = idx, a
            if best < 0:
                break
            if best != top:
                mat[top], mat[best] = mat[best], mat[top]
            piv = mat[top][col]
            prow = mat[top]
            clean = True
            for idx in range(top + 1, nrows):
                a = mat[idx][col]
                if not a:
                    continue
                q = a // piv
                if a - q * piv:
                    clean = False
                row = mat[idx]
                for j in range(col, ncols):
                    row[j] = (row[j] - q * prow[j]) % d
            if clean:
                break
        # full rank is guaranteed by the appended d*I rows
        piv = mat[top][col]
        prow = mat[top]
        for idx in range(top):
            a = mat[idx][col]
            q = a // piv
            if q:
                row = mat[idx]
                for j in range(col, ncols):
                    row[j] = (row[j] - q * prow[j]) % d
        top += 1
    return mat[:ncols]


@dataclass(frozen=True)
class ModMatrix:
    """A rows x cols integer matrix with entries reduced modulo ``d``."""

    rows: tuple[tuple[int, ...], ...]
    d: int
    ncols: int

    @classmethod
    def make(cls, rows: Iterable[Sequence[int]], d: int, ncols: int) -> "ModMatrix":
        if d < 2:
            raise ValueError(f"modulus must be >= 2, got {d}")
        reduced = tuple(tuple(x % d for x in row) for row in rows)
        for row in reduced:
            if len(row) != ncols:
                raise ValueError(f"row of length {len(row)}, expected {ncols}")
        return cls(reduced, d, ncols)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of Z_d^m, stored as the canonical HNF basis of its lift.

    Two subgroups are equal iff their basis tuples are identical; the HNF of a
    full-rank integer lattice is unique, so this is a faithful equality test.
    """

    d: int
    m: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], d: int, m: int) -> "Subgroup":
        if d < 2:
            raise ValueError(f"modulus must be >= 2, got {d}")
        gens = [list(g) for g in gens]
        for g in gens:
            if len(g) != m:
                raise ValueError(f"generator of length {len(g)}, expected {m}")
        hnf = _hermite_rows(gens, m, d)
        return cls(d, m, tuple(tuple(row) for row in hnf))

    @classmethod
    def zero(cls, d: int, m: int) -> "Subgroup":
        return cls.from_generators([], d, m)

    @classmethod
    def full(cls, d: int, m: int) -> "Subgroup":
        eye = [[int(i == j) for j in range(m)] for i in range(m)]
        return cls.from_generators(eye, d, m)

    @property
    def order(self) -> int:
        return prod(self.d // self.basis[i][i] for i in range(self.m))

    @property
    def is_trivial(self) -> bool:
        return all(self.basis[i][i] == self.d for i in range(self.m))

    def generators(self) -> list[tuple[int, ...]]:
        """Canonical basis rows reduced mod d, trivial rows dropped."""
        out = []
        for row in self.basis:
            g = tuple(x % self.d for x in row)
            if any(g):
                out.append(g)
        return out

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.m:
            raise ValueError(f"vector of length {len(v)}, expected {self.m}")
        rem = [x % self.d for x in v]
        for i in range(self.m):
            a = rem[i]
            piv = self.basis[i][i]
            if a % piv:
                return False
            q = a // piv
            if q:
                row = self.basis[i]
                for j in range(i, self.m):
                    rem[j] = (rem[j] - q * row[j]) % self.d
        return True

    def intersect(self, other: "Subgroup") -> "Subgroup":
        if (self.d, self.m) != (other.d, other.m):
            raise ValueError("mismatched ambient groups")
        d, m = self.d, self.m
        # Rows (u, u) for u in self and (w, 0) for w in other span a lattice in
        # Z^{2m} whose vectors with vanishing first block are exactly
        # (0, x) with x in the intersection.
        rows = [list(g) + list(g) for g in self.generators()]
        rows += [list(g) + [0] * m for g in other.generators()]
        hnf = _hermite_rows(rows, 2 * m, d)
        gens = [row[m:] for row in hnf if not any(x % d for x in row[:m])]
        return Subgroup.from_generators(gens, d, m)

    def join(self, other: "Subgroup") -> "Subgroup":
        """Smallest subgroup containing both (the sum)."""
        if (self.d, self.m) != (other.d, other.m):
            raise ValueError("mismatched ambient groups")
        return Subgroup.from_generators(
            self.generators() + other.generators(), self.d, self.m
        )

    def extend(self, v: Sequence[int]) -> "Subgroup":
        return Subgroup.from_generators(self.generators() + [tuple(v)], self.d, self.m)

    def project(self, coords: Sequence[int]) -> "Subgroup":
        """Image under deleting all columns outside ``coords`` (0-based)."""
        coords = list(coords)
        if not coords:
            raise ValueError("empty coordinate set")
        for c in coords:
            if not 0 <= c < self.m:
                raise ValueError(f"coordinate {c} out of range")
        gens = [[g[c] for c in coords] for g in self.generators()]
        return Subgroup.from_generators(gens, self.d, len(coords))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements of the subgroup, in a deterministic order."""
        d, m = self.d, self.m
        ranges = [range(d // self.basis[i][i]) for i in range(m)]
        for cs in itertools.product(*ranges):
            v = [0] * m
            for i, c in enumerate(cs):
                if c:
                    row = self.basis[i]
                    for j in range(i, m):
                        v[j] = (v[j] + c * row[j]) % d
            yield tuple(v)

    def to_json(self) -> str:
        return json.dumps(
            {"d": self.d, "m": self.m, "generators": [list(g) for g in self.generators()]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Subgroup":
        obj = json.loads(text)
        return cls.from_generators(obj["generators"], obj["d"], obj["m"])


def subgroup_from_generators(G: ModMatrix) -> Subgroup:
    return Subgroup.from_generators(G.rows, G.d, G.ncols)


def kernel_mod(A: ModMatrix) -> Subgroup:
    """The subgroup {v in Z_d^m : A v == 0 (mod d)} for an r x m matrix A."""
    d, m = A.d, A.ncols
    r = len(A.rows)
    # Rows (A^T_i, e_i) and (d e_j, 0) span a lattice in Z^{r+m}; members with
    # vanishing first block are (0, v) with A v == 0 mod d.
    rows = []
    for i in range(m):
        e = [0] * m
        e[i] = 1
        rows.append([A.rows[j][i] for j in range(r)] + e)
    hnf = _hermite_rows(rows, r + m, d)
    gens = [row[r:] for row in hnf if not any(x % d for x in row[:r])]
    return Subgroup.from_generators(gens, d, m)
