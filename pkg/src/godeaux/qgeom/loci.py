"""Named special loci in Q, as ideals of S_a (the quadrics are added implicitly)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from ..errors import ConfigError
from ..exactalg.binary import bf_gcd_many, binary_coeffs
from ..exactalg.field import DEFAULT_PRIME
from ..exactalg.poly import PolyRing, WPoly, ring_Sa
from ..godeaux_data.derive import derive_relations
from ..groebner.core import IdealOrModule
from ..groebner.invariants import saturate_by_variable
from ..groebner.linear import minimal_submodule_generators
from .core import Line, quadrics
from .families import hyp_param, random_hyp_point
from .sampling import rng_for, sample_on

# the three linear P^3's in V(I_3(e)) cap Q, by their surviving coordinates
E3_LINEAR_SUPPORTS = (
    ("a_0_0_1", "a_1_0_1", "a_2_2_3", "a_3_2_3"),
    ("a_0_0_2", "a_2_0_2", "a_1_1_3", "a_3_1_3"),
    ("a_0_0_3", "a_3_0_3", "a_1_1_2", "a_2_1_2"),
)

H1C2_TYPE_A = ("a_0_0_3", "a_1_1_3", "a_2_2_3", "a_3_1_3", "a_3_2_3",
               "a_2_1_2*a_2_0_2 - a_1_1_2*a_1_0_1 + a_0_0_2*a_0_0_1")
H1C2_TYPE_B = ("a_0_0_3", "a_1_1_2", "a_2_2_3", "a_3_2_3",
               "a_2_1_2*a_2_0_2 + a_0_0_2*a_0_0_1", "a_3_1_3*a_3_0_3 + a_1_1_3*a_1_0_1")

A_ROW0 = ("a_0_0_1", "a_0_0_2", "a_0_0_3")
H0C1_ROW0_B = A_ROW0 + ("a_1_0_1", "a_2_0_2", "a_3_0_3")


def det(M: list[list[WPoly]], R: PolyRing) -> WPoly:
    n = len(M)
    if n == 1:
        return M[0][0]
    out = R.zero()
    for j in range(n):
        if M[0][j].terms:
            t = M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]], R)
            out = out + t if j % 2 == 0 else out - t
    return out


def minors(M: list[list[WPoly]], k: int, R: PolyRing) -> list[WPoly]:
    out = []
    for rows in combinations(range(len(M)), k):
        for cols in combinations(range(len(M[0])), k):
            f = det([[M[r][c] for c in cols] for r in rows], R)
            if f.terms and not any((f - g).is_zero() or (f + g).is_zero() for g in out):
                out.append(f)
    return out


@lru_cache(maxsize=None)
def i3_e(p: int = DEFAULT_PRIME) -> tuple[WPoly, ...]:
    R = ring_Sa(p)
    return tuple(minors(derive_relations(p).e_matrix(R), 3, R))


@lru_cache(maxsize=None)
def i4_a(p: int = DEFAULT_PRIME) -> tuple[WPoly, ...]:
    R = ring_Sa(p)
    return tuple(minors(derive_relations(p).a_matrix(R), 4, R))


@dataclass
class Locus:
    name: str
    gens: list[WPoly]
    description: str
    sampler: Callable[[int], list[int]] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.gens[0].ring

    def ideal(self) -> IdealOrModule:
        R = self.ring
        return IdealOrModule.ideal(R, list(quadrics(R.p).q) + list(self.gens))

    def contains(self, pt: Sequence[int]) -> bool:
        return all(f.evaluate(pt) == 0 for f in list(quadrics(self.ring.p).q) + self.gens)

    def sample(self, seed: int = 0) -> list[int]:
        if self.sampler is not None:
            return self.sampler(seed)
        return sample_on(list(quadrics(self.ring.p).q) + self.gens, seed)

    def gens_or_none(self):
        return None if self.sampler is not None else self.gens

    def meet_form(self, line: Line) -> list[int]:
        """gcd of the generators restricted to the line (binary coefficients);
        [] when the line lies in the locus."""
        p = self.ring.p
        forms = []
        for f in self.gens:
            g = line.restrict(f)
            if g.terms:
                forms.append(binary_coeffs(g))
        if not forms:
            return []
        return bf_gcd_many(forms, p)

    def meets(self, line: Line) -> bool:
        g = self.meet_form(line)
        return not g or len(g) > 1

    def to_json(self) -> dict:
        from ..exactalg.poly import format_poly
        return {"name": self.name, "description": self.description,
                "gens": [format_poly(f) for f in self.gens], **self.meta}


def _parse(R: PolyRing, gens: Sequence[str]) -> list[WPoly]:
    return [R.parse(g) for g in gens]


def _h0c1_row0_a(R: PolyRing) -> list[WPoly]:
    """Other component of V(row 0 of a) in Q: saturate away a_1_0_1."""
    I = IdealOrModule.ideal(R, list(quadrics(R.p).q) + _parse(R, A_ROW0))
    gens = list(saturate_by_variable(I, "a_1_0_1").gb().to_matrix().entries[0])
    vecs = [dict(f.terms) for f in gens]
    keep = minimal_submodule_generators(R, [0], vecs)
    return sorted((gens[i] for i in keep), key=lambda f: (f.degree(), f.leading_key()))


class LocusLibrary:
    """Stable keys: e3_linear_0/1/2, h1c2_typeA, h1c2_typeB, h0c1_row0_a,
    h0c1_row0_b, i3e, i4a, hyp."""

    def __init__(self, p: int = DEFAULT_PRIME):
        self.p = p
        R = ring_Sa(p)
        self.ring = R
        self._loci: dict[str, Locus] = {}
        from ..exactalg.poly import A_NAMES
        for i, keep in enumerate(E3_LINEAR_SUPPORTS):
            zero = [n for n in A_NAMES if n not in keep]
            self._add(Locus(f"e3_linear_{i}", _parse(R, zero),
                            "linear P^3 in V(I_3(e)) cap Q", meta={"support": list(keep)}))
        self._add(Locus("h1c2_typeA", _parse(R, H1C2_TYPE_A),
                        "component of the support of H_1(C_2), 5 linear + 1 quadric"))
        self._add(Locus("h1c2_typeB", _parse(R, H1C2_TYPE_B),
                        "component of the support of H_1(C_2), 4 linear + 2 quadrics"))
        self._lazy = {"h0c1_row0_a": lambda: Locus(
            "h0c1_row0_a", _h0c1_row0_a(R),
            "component of V(row 0 of a) in Q with 3 linear, 4 quadric, 1 cubic generators")}
        self._add(Locus("h0c1_row0_b", _parse(R, H0C1_ROW0_B) + [quadrics(p).q[0]],
                        "component of V(row 0 of a) in Q with 6 linear + 1 quadric"))
        self._lazy["i3e"] = lambda: Locus("i3e", list(i3_e(p)), "V(I_3(e)) cap Q")
        self._lazy["i4a"] = lambda: Locus("i4a", list(i4_a(p)), "V(I_4(a)) cap Q")
        self._lazy["hyp"] = lambda: Locus(
            "hyp", list(i4_a(p)),
            "hyperelliptic locus: points from the parametrization, membership via I_4(a) + I(Q)",
            sampler=lambda seed: hyp_param(random_hyp_point(rng_for(seed, 7)), p))

    def _add(self, L: Locus):
        self._loci[L.name] = L

    def names(self) -> list[str]:
        return sorted(set(self._loci) | set(self._lazy))

    def __getitem__(self, name: str) -> Locus:
        if name not in self._loci:
            if name not in self._lazy:
                raise ConfigError(f"unknown locus {name!r}; known: {', '.join(self.names())}")
            self._loci[name] = self._lazy[name]()
        return self._loci[name]

    def __contains__(self, name: str) -> bool:
        return name in self._loci or name in self._lazy


@lru_cache(maxsize=None)
def locus_library(p: int = DEFAULT_PRIME) -> LocusLibrary:
    return LocusLibrary(p)


def random_vector(rng: np.random.Generator, p: int) -> list[int]:
    return [int(v) for v in rng.integers(0, p, size=12)]
