"""Maps of graded free modules.

A :class:`GradedMatrix` with row degrees ``r`` and column degrees ``c``
describes ``F = (+) S(-c_j) -> G = (+) S(-r_i)``; entry (i, j) is homogeneous
of degree ``c_j - r_i`` (or zero).
"""
from __future__ import annotations

from typing import Sequence

from ..errors import DegreeError
from .poly import PolyRing, WPoly, parse_poly

SCHEMA_GRADED_MATRIX = "godeaux.graded_matrix/1"


class GradedMatrix:
    __slots__ = ("ring", "rowdeg", "coldeg", "entries")

    def __init__(self, ring: PolyRing, rowdeg: Sequence[int], coldeg: Sequence[int],
                 entries: Sequence[Sequence[WPoly]] | None = None, check: bool = True):
        self.ring = ring
        self.rowdeg = tuple(int(d) for d in rowdeg)
        self.coldeg = tuple(int(d) for d in coldeg)
        if entries is None:
            entries = [[ring.zero() for _ in self.coldeg] for _ in self.rowdeg]
        self.entries = [list(row) for row in entries]
        if len(self.entries) != len(self.rowdeg) or any(
                len(row) != len(self.coldeg) for row in self.entries):
            raise DegreeError("entry array does not match degree vectors")
        if check:
            self.check_degrees()

    # -- shape --------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rowdeg), len(self.coldeg)

    @property
    def nrows(self) -> int:
        return len(self.rowdeg)

    @property
    def ncols(self) -> int:
        return len(self.coldeg)

    def __getitem__(self, ij) -> WPoly:
        i, j = ij
        return self.entries[i][j]

    def check_degrees(self):
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if f.terms:
                    want = self.coldeg[j] - self.rowdeg[i]
                    if f.degrees() != {want}:
                        raise DegreeError(
                            f"entry ({i},{j}) has degrees {sorted(f.degrees())}, expected {want}")

    def is_homogeneous(self) -> bool:
        try:
            self.check_degrees()
        except DegreeError:
            return False
        return True

    # -- algebra ------------------------------------------------------------
    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        return matmul(self, other)

    def transpose(self, shift: int | None = None) -> "GradedMatrix":
        """Dual map twisted by ``shift``: new row degrees are shift - coldeg."""
        s = 0 if shift is None else shift
        rows = [s - d for d in self.coldeg]
        cols = [s - d for d in self.rowdeg]
        ent = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMatrix(self.ring, rows, cols, ent, check=False)

    def __neg__(self):
        return GradedMatrix(self.ring, self.rowdeg, self.coldeg,
                            [[-f for f in row] for row in self.entries], check=False)

    def __add__(self, other: "GradedMatrix"):
        if self.shape != other.shape:
            raise DegreeError("shape mismatch in addition")
        return GradedMatrix(self.ring, self.rowdeg, self.coldeg,
                            [[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.entries, other.entries)], check=False)

    def is_zero(self) -> bool:
        return all(not f.terms for row in self.entries for f in row)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.rowdeg == other.rowdeg
                and self.coldeg == other.coldeg and self.entries == other.entries)

    def submatrix(self, rows: Sequence[int] | None = None,
                  cols: Sequence[int] | None = None) -> "GradedMatrix":
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        return GradedMatrix(self.ring, [self.rowdeg[i] for i in rows],
                            [self.coldeg[j] for j in cols],
                            [[self.entries[i][j] for j in cols] for i in rows], check=False)

    def map_entries(self, fn, ring: PolyRing | None = None) -> "GradedMatrix":
        return GradedMatrix(ring or self.ring, self.rowdeg, self.coldeg,
                            [[fn(f) for f in row] for row in self.entries], check=False)

    def column(self, j: int) -> list[WPoly]:
        return [row[j] for row in self.entries]

    def column_vector(self, j: int) -> dict[int, int]:
        """Column j as a module element: packed keys carry component and shift."""
        R = self.ring
        out: dict[int, int] = {}
        for i, row in enumerate(self.entries):
            f = row[j]
            if f.terms:
                off = (self.rowdeg[i] << R.DSH) + i
                for k, c in f.terms.items():
                    out[k + off] = c
        return out

    def is_skew(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i in range(self.nrows):
            if self.entries[i][i].terms:
                return False
            for j in range(i + 1, self.ncols):
                if (self.entries[i][j] + self.entries[j][i]).terms:
                    return False
        return True

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_GRADED_MATRIX,
            "ring": {"names": list(self.ring.names), "weights": list(self.ring.weights),
                     "p": self.ring.p},
            "rowdeg": list(self.rowdeg),
            "coldeg": list(self.coldeg),
            "entries": [[str(f) for f in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict, ring: PolyRing | None = None) -> "GradedMatrix":
        if ring is None:
            r = data["ring"]
            ring = PolyRing(r["names"], r["weights"], r["p"])
        ent = [[parse_poly(ring, s) for s in row] for row in data["entries"]]
        return cls(ring, data["rowdeg"], data["coldeg"], ent)

    def __repr__(self):
        rows = ["[" + ", ".join(str(f) for f in row) + "]" for row in self.entries]
        return (f"GradedMatrix(rowdeg={list(self.rowdeg)}, coldeg={list(self.coldeg)},\n  "
                + "\n  ".join(rows) + ")")


def matmul(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    if A.ncols != B.nrows:
        raise DegreeError(f"shape mismatch {A.shape} x {B.shape}")
    if A.coldeg != B.rowdeg:
        raise DegreeError("column degrees of A differ from row degrees of B")
    if A.ring != B.ring:
        raise DegreeError("matrices over different rings")
    R = A.ring
    p = R.p
    out = []
    for i in range(A.nrows):
        arow = A.entries[i]
        row = []
        for j in range(B.ncols):
            acc: dict[int, int] = {}
            get = acc.get
            for k, a in enumerate(arow):
                if not a.terms:
                    continue
                b = B.entries[k][j]
                if not b.terms:
                    continue
                for ka, ca in a.terms.items():
                    for kb, cb in b.terms.items():
                        key = ka + kb
                        acc[key] = get(key, 0) + ca * cb
            row.append(WPoly(R, {k: v % p for k, v in acc.items() if v % p}))
        out.append(row)
    return GradedMatrix(R, A.rowdeg, B.coldeg, out, check=False)


def identity(ring: PolyRing, degrees: Sequence[int]) -> GradedMatrix:
    n = len(degrees)
    ent = [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
    return GradedMatrix(ring, degrees, degrees, ent)


def from_rows(ring: PolyRing, rows: Sequence[Sequence], rowdeg: Sequence[int] | None = None,
              coldeg: Sequence[int] | None = None) -> GradedMatrix:
    """Build a graded matrix from polynomials or strings, inferring missing
    degree vectors from the entries (row degrees default to 0)."""
    ent = [[parse_poly(ring, f) if isinstance(f, str) else
            (f if isinstance(f, WPoly) else ring.const(int(f))) for f in row] for row in rows]
    nr = len(ent)
    nc = len(ent[0]) if ent else 0
    if rowdeg is None:
        rowdeg = [0] * nr
    if coldeg is None:
        coldeg = []
        for j in range(nc):
            d = None
            for i in range(nr):
                if ent[i][j].terms:
                    d = ent[i][j].degree() + rowdeg[i]
                    break
            if d is None:
                raise DegreeError(f"cannot infer degree of zero column {j}")
            coldeg.append(d)
    return GradedMatrix(ring, rowdeg, coldeg, ent)


def block(ring: PolyRing, blocks: Sequence[Sequence[GradedMatrix | None]]) -> GradedMatrix:
    """Assemble a block matrix; ``None`` stands for a zero block."""
    rowdeg: list[int] = []
    coldeg: list[int] = []
    for brow in blocks:
        for b in brow:
            if b is not None:
                rowdeg.extend(b.rowdeg)
                break
        else:
            raise DegreeError("block row without a nonzero block")
    for j in range(len(blocks[0])):
        for brow in blocks:
            if brow[j] is not None:
                coldeg.extend(brow[j].coldeg)
                break
        else:
            raise DegreeError("block column without a nonzero block")
    ent = []
    for brow in blocks:
        nr = next(b.nrows for b in brow if b is not None)
        for i in range(nr):
            row = []
            for j, b in enumerate(brow):
                if b is None:
                    nc = next(bb[j].ncols for bb in blocks if bb[j] is not None)
                    row.extend(ring.zero() for _ in range(nc))
                else:
                    row.extend(b.entries[i])
            ent.append(row)
    return GradedMatrix(ring, rowdeg, coldeg, ent)
