"""Syzygies, minimal free resolutions and Betti tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..exactalg.field import inv
from ..exactalg.matrix import GradedMatrix
from ..exactalg.poly import PolyRing, WPoly
from .core import IdealOrModule, vectors_to_matrix
from .engine import buchberger
from .linear import minimal_kernel_generators, minimal_submodule_generators

# degree offset that makes every term of the target dominate the source terms
_ELIM_SHIFT = 1 << 12


@dataclass
class BettiTable:
    """(homological index, internal degree) -> count."""
    table: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_degrees(cls, degree_lists: Sequence[Sequence[int]]) -> "BettiTable":
        t: dict[tuple[int, int], int] = {}
        for h, degs in enumerate(degree_lists):
            for d in degs:
                t[(h, d)] = t.get((h, d), 0) + 1
        return cls(t)

    def totals(self) -> tuple[int, ...]:
        if not self.table:
            return ()
        top = max(h for h, _ in self.table)
        return tuple(sum(c for (h, _), c in self.table.items() if h == i) for i in range(top + 1))

    def row(self, h: int) -> dict[int, int]:
        return {d: c for (i, d), c in sorted(self.table.items()) if i == h}

    def numerator(self) -> dict[int, int]:
        """Alternating sum of t^deg: the Hilbert numerator of the resolved module."""
        out: dict[int, int] = {}
        for (h, d), c in self.table.items():
            out[d] = out.get(d, 0) + (-1) ** h * c
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        return {"entries": [{"h": h, "deg": d, "count": c}
                            for (h, d), c in sorted(self.table.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls({(e["h"], e["deg"]): e["count"] for e in data["entries"]})

    def __str__(self):
        lines = []
        for h in range(len(self.totals())):
            row = ", ".join(f"{c}@{d}" for d, c in self.row(h).items())
            lines.append(f"{h}: {row}")
        lines.append("total: " + " ".join(str(t) for t in self.totals()))
        return "\n".join(lines)


@dataclass
class Resolution:
    maps: list[GradedMatrix]
    betti: BettiTable

    def is_complex(self) -> bool:
        return all((self.maps[i] @ self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))

    def is_minimal(self) -> bool:
        return not any(f.terms and f.degree() == 0
                       for m in self.maps for row in m.entries for f in row)


def _syzygies_gb(M: GradedMatrix) -> list[tuple[dict[int, int], int]]:
    """Syzygy vectors from a Groebner basis of the graph module (target terms
    pushed up by a large degree offset, so they dominate and can be eliminated)."""
    R = M.ring
    r = M.nrows
    big = _ELIM_SHIFT << R.DSH
    gens = []
    for j in range(M.ncols):
        v = {k + big: c for k, c in M.column_vector(j).items()}
        v[R.key_from_x(0, r + j, M.coldeg[j])] = 1
        gens.append(v)
    G = buchberger(R, gens)
    out = []
    for g in G:
        if (max(g) & R.cmask) >= r:
            out.append(({k - r: c for k, c in g.items()}, R.deg(max(g))))
    return out


def syzygies(M: GradedMatrix, degree_bound: int | None = None) -> GradedMatrix:
    """Minimal generators of the syzygy module of the columns of M.

    Without a degree bound the syzygies come from an elimination Groebner basis
    and are then minimalized; with a bound, generators of degree <= bound are
    found degree by degree with linear algebra.
    """
    R = M.ring
    if M.ncols == 0:
        return GradedMatrix(R, (), ())
    if degree_bound is None:
        found = _syzygies_gb(M)
        vecs = [v for v, _ in found]
        keep = minimal_submodule_generators(R, M.coldeg, vecs)
        keep.sort(key=lambda i: (found[i][1], i))
        return vectors_to_matrix(R, M.coldeg, [vecs[i] for i in keep],
                                 [found[i][1] for i in keep])
    lo = min(M.coldeg)
    gens, degs = minimal_kernel_generators(M, list(range(lo, degree_bound + 1)))
    return vectors_to_matrix(R, M.coldeg, gens, degs)


def prune_units(phi: GradedMatrix) -> GradedMatrix:
    """Remove unit entries by row/column operations; the cokernel is unchanged."""
    R = phi.ring
    p = R.p
    rows = list(range(phi.nrows))
    cols = list(range(phi.ncols))
    E = [list(r) for r in phi.entries]
    rowdeg, coldeg = list(phi.rowdeg), list(phi.coldeg)
    while True:
        hit = None
        for i in rows:
            for j in cols:
                f = E[i][j]
                if f.terms and rowdeg[i] == coldeg[j]:
                    hit = (i, j, f.constant_value())
                    break
            if hit:
                break
        if hit is None:
            break
        i0, j0, c = hit
        s = inv(c, p)
        rows.remove(i0)
        cols.remove(j0)
        # column op: col_j -= col_j0 * (E[i0][j] / c)
        for j in cols:
            f = E[i0][j]
            if not f.terms:
                continue
            g = f.scale(s)
            for i in rows:
                if E[i][j0].terms:
                    E[i][j] = E[i][j] - E[i][j0] * g
    return GradedMatrix(R, [rowdeg[i] for i in rows], [coldeg[j] for j in cols],
                        [[E[i][j] for j in cols] for i in rows])


def minimal_presentation(phi: GradedMatrix) -> GradedMatrix:
    phi = prune_units(phi)
    vecs = [phi.column_vector(j) for j in range(phi.ncols)]
    keep = minimal_submodule_generators(phi.ring, phi.rowdeg, vecs)
    keep.sort(key=lambda j: (phi.coldeg[j], j))
    return phi.submatrix(None, keep)


def minimal_free_resolution(M: IdealOrModule | GradedMatrix, length_bound: int = 4,
                            degree_bound: int | None = None) -> Resolution:
    """Minimal free resolution of F / M (or of coker M for a presentation matrix).

    ``length_bound`` counts maps.  With a ``degree_bound`` each syzygy step
    only looks for generators up to that internal degree.
    """
    if length_bound < 1:
        raise ValueError("length_bound must be >= 1")
    phi = M.gens if isinstance(M, IdealOrModule) else M
    phi = minimal_presentation(phi)
    maps = [phi]
    while len(maps) < length_bound:
        nxt = syzygies(maps[-1], degree_bound)
        if nxt.ncols == 0:
            break
        maps.append(nxt)
    degs = [maps[0].rowdeg] + [m.coldeg for m in maps]
    return Resolution(maps, BettiTable.from_degrees(degs))


def koszul_matrix(ring: PolyRing, forms: Sequence[WPoly]) -> GradedMatrix:
    """The skew 3x3 matrix [[0,w,-v],[-w,0,u],[v,-u,0]] for forms (u,v,w)."""
    u, v, w = forms
    z = ring.zero()
    d = u.degree()
    return GradedMatrix(ring, [d, d, d], [2 * d] * 3,
                        [[z, w, -v], [-w, z, u], [v, -u, z]])
