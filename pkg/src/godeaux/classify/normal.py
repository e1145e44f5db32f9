"""Splitting type of the normal bundle of a line in a complete intersection.

For a line spanned by V = <P, Q> in P^(n-1) on V(f_1..f_r) we use
    0 -> N_{l|X} -> O(1) (x) (k^n / V) -> (+) O(deg f_i) -> 0,
the right map being the Jacobian restricted to the line.  Over the binary
ring B = k[s, t] this is a map of graded free modules; the kernel is free
and its generator degrees give the splitting type.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import SingularityError
from ..exactalg.binary import bf_gcd_many, binary_coeffs
from ..exactalg.linalg import kernel_basis
from ..exactalg.matrix import GradedMatrix
from ..exactalg.poly import PolyRing, WPoly, ring_binary
from ..groebner.linear import minimal_kernel_generators
from ..qgeom.core import Line, quadrics
from ..qgeom.loci import minors


@dataclass
class NormalBundle:
    degrees: list[int]

    @property
    def h0(self) -> int:
        return sum(max(a + 1, 0) for a in self.degrees)

    @property
    def h1(self) -> int:
        return sum(max(-a - 1, 0) for a in self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "h0": self.h0, "h1": self.h1}


def partial(f: WPoly, i: int) -> WPoly:
    R = f.ring
    out = {}
    for k, c in f.terms.items():
        e = list(R.exps(k))
        if e[i]:
            m = e[i]
            e[i] -= 1
            nk = R.key(e)
            out[nk] = (out.get(nk, 0) + c * m) % R.p
    return WPoly(R, {k: v for k, v in out.items() if v})


def normal_bundle_of(rows: Sequence[Sequence[int]], polys: Sequence[WPoly],
                     ring: PolyRing, p: int) -> NormalBundle:
    """Splitting type of N_{l|X}, l spanned by the two rows, X = V(polys)."""
    n = ring.n
    B = ring_binary(p)
    s, t = B.var("x0"), B.var("x1")
    r0, r1 = rows
    forms = [s.scale(int(a) % p) + t.scale(int(b) % p) for a, b in zip(r0, r1)]
    # complement W of V in k^n: unit vectors outside the pivots of V
    V = np.array([list(r0), list(r1)], dtype=np.int64) % p
    from ..exactalg.linalg import rref
    _, piv = rref(V, p)
    comp = [j for j in range(n) if j not in piv]
    if not polys:
        return NormalBundle([1] * len(comp))
    jac = [[partial(f, j).map(forms, B) if f.terms else B.zero() for j in range(n)]
           for f in polys]
    degs = [f.degree() for f in polys]
    # singular points of X on l: all maximal minors of the Jacobian vanish
    if len(polys) <= len(comp):
        ms = [g for g in minors(jac, len(polys), B) if g.terms]
        if not ms:
            raise SingularityError("Jacobian drops rank along the whole line")
        g = bf_gcd_many([binary_coeffs(h) for h in ms], p)
        if len(g) > 1:
            raise SingularityError("line meets the singular locus")
    # source O(1)^|W| in shift frame: column degree 1, target O(d_i) -> row degree 2 - d_i
    top = max(degs)
    rowdeg = [top - d for d in degs]
    ent = [[jac[i][j] for j in comp] for i in range(len(polys))]
    phi = GradedMatrix(B, [r + 1 for r in rowdeg], [top] * len(comp),
                       [[e for e in row] for row in ent], check=False)
    # kernel generators of degree D correspond to summands O(top - D + 1)
    want = len(comp) - len(polys)
    gens, gdeg = minimal_kernel_generators(phi, list(range(top, top + len(comp) * 2 + 2)))
    if len(gens) != want:
        raise SingularityError(f"kernel has {len(gens)} generators, expected {want}")
    return NormalBundle(sorted((top + 1 - d for d in gdeg), reverse=True))


def normal_bundle(line: Line) -> NormalBundle:
    q = quadrics(line.p).q
    return normal_bundle_of(line.rows, list(q), q[0].ring, line.p)
