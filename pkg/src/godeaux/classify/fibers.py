"""Torsion and hyperelliptic fibers along a line.

A point of the line gives a bicanonical fiber; it is a torsion fiber when
e has rank at most 2 there and hyperelliptic when a has rank exactly 3.
Both loci on the line are cut out by the gcd of the corresponding minors.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateLineError, DerivationError
from ..exactalg.binary import (BinaryRoots, bf_div, bf_gcd, bf_gcd_many, bf_monic, bf_roots,
                               binary_coeffs)
from ..exactalg.linalg import rank
from ..exactalg.poly import WPoly, ring_binary
from ..godeaux_data.derive import derive_relations
from ..qgeom.core import Line, line_in_q
from ..qgeom.loci import minors

TORSION_GROUPS = {0: "trivial", 1: "Z3", 2: "Z5"}


@dataclass
class FiberData:
    torsion_form: list[int]
    torsion: BinaryRoots
    hyperelliptic_form: list[int]
    hyperelliptic: BinaryRoots | None
    rank_checks: dict = field(default_factory=dict)

    @property
    def b(self) -> int:
        return self.torsion.geometric_count if self.torsion.degree > 0 else 0

    @property
    def hyperelliptic_count(self) -> int:
        if self.hyperelliptic is None or self.hyperelliptic.degree == 0:
            return 0
        return self.hyperelliptic.geometric_count

    @property
    def torsion_group(self) -> str:
        return TORSION_GROUPS.get(self.b, "indeterminate")

    def to_json(self) -> dict:
        return {"torsion_points": self.torsion.to_json(), "b": self.b,
                "hyperelliptic_points": self.hyperelliptic.to_json() if self.hyperelliptic else [],
                "hyperelliptic_count": self.hyperelliptic_count,
                "torsion_group": self.torsion_group, "rank_checks": dict(self.rank_checks),
                "torsion_form": list(self.torsion_form),
                "hyperelliptic_form": list(self.hyperelliptic_form)}

    @classmethod
    def from_json(cls, data: dict) -> "FiberData":
        hyp = data.get("hyperelliptic_points")
        hform = list(data.get("hyperelliptic_form", []))
        return cls(list(data["torsion_form"]), BinaryRoots.from_json(data["torsion_points"]),
                   hform, BinaryRoots.from_json(hyp) if hform else None,
                   dict(data.get("rank_checks", {})))


def _on_line(M: list[list[WPoly]], line: Line) -> list[list[WPoly]]:
    B = ring_binary(line.p)
    return [[line.restrict(f, B) if f.terms else B.zero() for f in row] for row in M]


def _minor_gcd(M: list[list[WPoly]], k: int, p: int) -> list[int] | None:
    """gcd of the k x k minors (monic), or None when they all vanish."""
    forms = [binary_coeffs(f) for f in minors(M, k, M[0][0].ring) if f.terms]
    if not forms:
        return None
    return bf_monic(bf_gcd_many(forms, p), p)


def _rank_at(M: list[list[WPoly]], pt: tuple[int, int], p: int) -> int:
    return rank(np.array([[f.evaluate(list(pt)) if f.terms else 0 for f in row] for row in M],
                         dtype=np.int64), p)


def _strip(h: list[int], g: list[int], p: int) -> list[int]:
    """Remove from h every factor it shares with g."""
    while len(h) > 1:
        c = bf_gcd(h, g, p)
        if len(c) <= 1:
            break
        h = bf_div(h, c, p)
    return h


def classify_fibers(line: Line) -> FiberData:
    p = line.p
    if not line_in_q(line):
        raise DerivationError("line does not lie on Q")
    sys = derive_relations(p)
    e = _on_line(sys.e_matrix(), line)
    a = _on_line(sys.a_matrix(), line)
    g = _minor_gcd(e, 3, p)
    if g is None:
        raise DegenerateLineError("e has rank at most 2 along the whole line")
    tors = bf_roots(g, p) if len(g) > 1 else BinaryRoots(degree=0)
    checks = {}
    for (pt, _m) in tors.roots:
        r = _rank_at(e, pt, p)
        if r > 2:
            raise DerivationError(f"rank of e at a torsion root {pt} is {r}")
        checks[f"e@{pt[0]}:{pt[1]}"] = r
    h = _minor_gcd(a, 4, p)
    hyp = None
    hform: list[int] = []
    if h is None:
        checks["a_rank_at_most_3_everywhere"] = True
    else:
        h = _strip(h, g, p)
        # rational roots where a drops rank further are not hyperelliptic
        if len(h) > 1:
            for (pt, _m) in bf_roots(h, p).roots:
                r = _rank_at(a, pt, p)
                checks[f"a@{pt[0]}:{pt[1]}"] = r
                if r < 3:
                    lin = [pt[1] % p, (-pt[0]) % p]       # vanishes at (pt0 : pt1)
                    h = _strip(h, lin, p)
        hform = h
        hyp = bf_roots(h, p) if len(h) > 1 else BinaryRoots(degree=0)
    return FiberData(g, tors, hform, hyp, checks)
