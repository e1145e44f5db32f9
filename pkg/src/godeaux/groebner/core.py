"""Ideals and submodules of graded free modules, with their Groebner bases."""
from __future__ import annotations

from typing import Sequence

from ..errors import DegreeError
from ..exactalg.matrix import GradedMatrix
from ..exactalg.poly import PolyRing, WPoly
from .engine import Elem, GBStats, Reducer, buchberger


class IdealOrModule:
    """Submodule of F = (+) S(-rowdeg_i) generated by the columns of ``gens``.

    A one-row matrix with row degree 0 is an ideal.  Unless stated otherwise,
    operations that speak of "the module" mean the quotient F / (this).
    """

    def __init__(self, gens: GradedMatrix):
        if not gens.is_homogeneous():
            raise DegreeError("generators must be homogeneous")
        self.gens = gens
        self.ring = gens.ring
        self._gb: GroebnerBasis | None = None

    @classmethod
    def ideal(cls, ring: PolyRing, polys: Sequence[WPoly]) -> "IdealOrModule":
        polys = [f for f in polys if f.terms]
        for f in polys:
            if not f.is_homogeneous():
                raise DegreeError(f"inhomogeneous generator {f}")
        return cls(GradedMatrix(ring, [0], [f.degree() for f in polys], [list(polys)]))

    @property
    def is_ideal(self) -> bool:
        return self.gens.nrows == 1 and self.gens.rowdeg == (0,)

    @property
    def rank(self) -> int:
        return self.gens.nrows

    @property
    def shifts(self) -> tuple[int, ...]:
        return self.gens.rowdeg

    def polys(self) -> list[WPoly]:
        if self.gens.nrows != 1:
            raise ValueError("not an ideal")
        return list(self.gens.entries[0])

    def vectors(self) -> list[dict[int, int]]:
        return [self.gens.column_vector(j) for j in range(self.gens.ncols)]

    def gb(self, degree_bound: int | None = None) -> "GroebnerBasis":
        if degree_bound is None:
            if self._gb is None:
                self._gb = GroebnerBasis.compute(self)
            return self._gb
        return GroebnerBasis.compute(self, degree_bound)

    def __repr__(self):
        kind = "Ideal" if self.is_ideal else "Module"
        return f"{kind}({self.gens.ncols} generators in rank {self.rank})"


class GroebnerBasis:
    def __init__(self, ring: PolyRing, shifts: Sequence[int], elements: list[dict[int, int]],
                 degree_bound: int | None = None, stats: GBStats | None = None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.elements = elements
        self.degree_bound = degree_bound
        self.stats = stats
        self._reducer: Reducer | None = None

    @classmethod
    def compute(cls, M: IdealOrModule, degree_bound: int | None = None) -> "GroebnerBasis":
        stats = GBStats()
        els = buchberger(M.ring, M.vectors(), degree_bound=degree_bound,
                         ideal=M.rank == 1, stats=stats)
        return cls(M.ring, M.shifts, els, degree_bound, stats)

    @property
    def reducer(self) -> Reducer:
        if self._reducer is None:
            r = Reducer(self.ring)
            for i, g in enumerate(self.elements):
                r.add(Elem(self.ring, g, 0, i))
            self._reducer = r
        return self._reducer

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        return self.reducer.reduce(v)

    def contains(self, v: dict[int, int]) -> bool:
        return not self.reducer.reduce(v, full=False)

    def leading_monomials(self) -> dict[int, list[int]]:
        """Component -> exponent words (packed) generating the leading module."""
        R = self.ring
        out: dict[int, list[int]] = {c: [] for c in range(len(self.shifts))}
        for g in self.elements:
            lk = max(g)
            out.setdefault(lk & R.cmask, []).append(R.xpart(lk))
        return out

    def to_matrix(self) -> GradedMatrix:
        return vectors_to_matrix(self.ring, self.shifts, self.elements)

    def is_unit(self) -> bool:
        """True when the submodule is all of F (every basis vector is a leading term)."""
        lm = self.leading_monomials()
        return all(0 in lm.get(c, []) for c in range(len(self.shifts)))


def vector_degree(ring: PolyRing, v: dict[int, int]) -> int:
    return ring.deg(max(v))


def vectors_to_matrix(ring: PolyRing, shifts: Sequence[int], vecs: list[dict[int, int]],
                      degrees: Sequence[int] | None = None) -> GradedMatrix:
    shifts = tuple(shifts)
    r = len(shifts)
    cols = []
    coldeg = []
    for idx, v in enumerate(vecs):
        col: list[dict[int, int]] = [dict() for _ in range(r)]
        for k, c in v.items():
            i = k & ring.cmask
            col[i][k - (shifts[i] << ring.DSH) - i] = c
        cols.append(col)
        if degrees is not None:
            coldeg.append(degrees[idx])
        else:
            coldeg.append(vector_degree(ring, v) if v else 0)
    ent = [[WPoly(ring, cols[j][i]) for j in range(len(vecs))] for i in range(r)]
    return GradedMatrix(ring, shifts, coldeg, ent)


def module_key(ring: PolyRing, mono_key: int, comp: int, shift: int) -> int:
    return mono_key + (shift << ring.DSH) + comp


def groebner_basis(M: IdealOrModule) -> IdealOrModule:
    """Reduced Groebner basis, returned as a new generating set."""
    G = M.gb()
    out = IdealOrModule(G.to_matrix())
    out._gb = G
    return out


def normal_form(M: IdealOrModule, v) -> dict[int, int] | WPoly:
    """Normal form of a polynomial (ideal case) or of a module vector dict."""
    G = M.gb()
    if isinstance(v, WPoly):
        return WPoly(M.ring, G.reduce(dict(v.terms)))
    return G.reduce(v)


def contains(M: IdealOrModule, v) -> bool:
    G = M.gb()
    if isinstance(v, WPoly):
        return G.contains(dict(v.terms))
    return G.contains(v)


def ideal_sum(*ideals: IdealOrModule) -> IdealOrModule:
    ring = ideals[0].ring
    polys: list[WPoly] = []
    for I in ideals:
        polys.extend(I.polys())
    return IdealOrModule.ideal(ring, polys)
