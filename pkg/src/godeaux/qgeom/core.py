"""Q = V(q0..q3) in P^11, lines in Stiefel coordinates and the S4 symmetry."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

import numpy as np

from ..errors import DerivationError, StiefelError
from ..exactalg.field import DEFAULT_PRIME, signed
from ..exactalg.linalg import as_mod, rank
from ..exactalg.poly import A_NAMES, PolyRing, WPoly, ring_Sa, ring_binary
from ..godeaux_data.derive import derive_relations
from ..godeaux_data.reference import pfaffian4, pfaffian_matrices

# Printed 12-vectors (Stiefel matrices, parametrizations) list the coordinates
# of P^11 in this order; internally points are indexed by A_NAMES.
DISPLAY_ORDER = tuple(reversed(A_NAMES))
_DISPLAY_TO_NATURAL = [A_NAMES.index(n) for n in DISPLAY_ORDER]


def from_display(vec: Sequence[int]) -> list[int]:
    out = [0] * 12
    for pos, v in enumerate(vec):
        out[_DISPLAY_TO_NATURAL[pos]] = v
    return out


def to_display(vec: Sequence[int]) -> list[int]:
    return [vec[_DISPLAY_TO_NATURAL[pos]] for pos in range(12)]


@dataclass(frozen=True)
class Quadrics:
    q: tuple[WPoly, ...]
    M: tuple[tuple[tuple[WPoly, ...], ...], ...]

    def evaluate(self, pt: Sequence[int]) -> list[int]:
        return [f.evaluate(pt) for f in self.q]


@lru_cache(maxsize=None)
def quadrics(p: int = DEFAULT_PRIME) -> Quadrics:
    R = ring_Sa(p)
    Ms = pfaffian_matrices(R)
    q = tuple(derive_relations(p).quadrics)
    for f, M in zip(q, Ms):
        if f != pfaffian4(M):
            raise DerivationError("quadric differs from the Pfaffian of its matrix")
    return Quadrics(q, tuple(tuple(tuple(r) for r in M) for M in Ms))


def jacobian(pt: Sequence[int], p: int = DEFAULT_PRIME) -> np.ndarray:
    """4 x 12 Jacobian matrix of the quadrics at a point."""
    R = ring_Sa(p)
    J = np.zeros((4, 12), dtype=np.int64)
    for k, f in enumerate(quadrics(p).q):
        for key, c in f.terms.items():
            e = R.exps(key)
            vs = [i for i, x in enumerate(e) if x]
            for i in vs:
                other = 1
                for j in vs:
                    other = other * pow(pt[j], e[j] - (j == i), p) % p
                J[k, i] = (J[k, i] + c * e[i] * other) % p
    return J


def jacobian_rank(pt: Sequence[int], p: int = DEFAULT_PRIME) -> int:
    return rank(jacobian(pt, p), p)


def tangent_forms(pt: Sequence[int], p: int = DEFAULT_PRIME) -> list[WPoly]:
    """Linear forms cutting out the embedded tangent space T_pt Q."""
    R = ring_Sa(p)
    out = []
    for row in jacobian(pt, p):
        f = R.from_dict({tuple(int(i == j) for j in range(12)): int(c)
                         for i, c in enumerate(row) if c})
        if f.terms:
            out.append(f)
    return out


# -- lines ------------------------------------------------------------------------

@dataclass
class Line:
    """The line spanned by the rows of a 2 x 12 matrix (columns in A_NAMES order)."""
    stiefel: np.ndarray
    provenance: dict = field(default_factory=lambda: {"kind": "explicit"})
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        S = as_mod(np.asarray(self.stiefel, dtype=np.int64), self.p)
        if S.shape != (2, 12):
            raise StiefelError(f"Stiefel matrix must be 2 x 12, got {S.shape}")
        if rank(S, self.p) != 2:
            raise StiefelError("Stiefel matrix does not have rank 2")
        self.stiefel = S

    @property
    def rows(self) -> tuple[list[int], list[int]]:
        return [int(v) for v in self.stiefel[0]], [int(v) for v in self.stiefel[1]]

    def point(self, s: int, t: int) -> list[int]:
        r0, r1 = self.rows
        return [(s * a + t * b) % self.p for a, b in zip(r0, r1)]

    def forms(self, ring: PolyRing | None = None) -> list[WPoly]:
        """a_v = row0[v] x0 + row1[v] x1 in a ring whose first variables are x0, x1."""
        R = ring or ring_binary(self.p)
        x0, x1 = R.var("x0"), R.var("x1")
        r0, r1 = self.rows
        return [x0.scale(a) + x1.scale(b) for a, b in zip(r0, r1)]

    def restrict(self, f: WPoly, ring: PolyRing | None = None) -> WPoly:
        """Pull back a form on P^11 to the line."""
        R = ring or ring_binary(self.p)
        return f.map(self.forms(R), R)

    def to_json(self) -> dict:
        return {"stiefel": [[str(int(v)) for v in row] for row in self.stiefel],
                "coordinates": list(A_NAMES), "provenance": self.provenance, "field": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Line":
        p = int(data.get("field", DEFAULT_PRIME))
        S = np.array([[int(v) for v in row] for row in data["stiefel"]], dtype=np.int64)
        names = data.get("coordinates")
        if names and tuple(names) != A_NAMES:
            idx = [list(names).index(n) for n in A_NAMES]
            S = S[:, idx]
        return cls(S, dict(data.get("provenance", {"kind": "explicit"})), p)

    @classmethod
    def through(cls, P: Sequence[int], Qp: Sequence[int], provenance: dict | None = None,
                p: int = DEFAULT_PRIME) -> "Line":
        return cls(np.array([list(P), list(Qp)], dtype=np.int64),
                   provenance or {"kind": "explicit"}, p)


def _quadric_path(line: Line) -> bool:
    p = line.p
    r0, r1 = line.rows
    both = [(a + b) % p for a, b in zip(r0, r1)]
    for f in quadrics(p).q:
        u, v, w = f.evaluate(r0), f.evaluate(r1), f.evaluate(both)
        if u or v or (w - u - v) % p:
            return False
    return True


def _ep_path(line: Line) -> bool:
    p = line.p
    sys = derive_relations(p)
    B = ring_binary(p)
    forms = dict(zip(A_NAMES, line.forms(B)))

    def sub(M):
        return [[f.map([forms[n] for n in A_NAMES], B) if f.terms else B.zero() for f in row]
                for row in M]
    e = sub(sys.e_matrix())
    pm = sub(sys.p_matrix())
    for i in range(3):
        for l in range(8):
            acc = B.zero()
            for k in range(12):
                if e[i][k].terms and pm[k][l].terms:
                    acc = acc + e[i][k] * pm[k][l]
            if acc.terms:
                return False
    return True


def line_in_q(line: Line) -> bool:
    """True iff the line lies on Q; the 12 quadric coefficients and the identity
    e(l) p(l) = 0 are evaluated independently and must agree."""
    a, b = _quadric_path(line), _ep_path(line)
    if a != b:
        raise DerivationError("quadric evaluation and e.p disagree on a line")
    return a


# -- S4 action on the marked points ------------------------------------------------

def _relabel(sigma: Sequence[int], name: str) -> str:
    _, k, i, j = name.split("_")
    k2, i2, j2 = sigma[int(k)], sigma[int(i)], sigma[int(j)]
    i2, j2 = min(i2, j2), max(i2, j2)
    return f"a_{k2}_{i2}_{j2}"


@lru_cache(maxsize=None)
def s4_action(sigma: tuple[int, ...], p: int = DEFAULT_PRIME) -> tuple[tuple[int, int], ...]:
    """For a permutation of the points P0..P3, the signed coordinate map
    (target index, sign) per coordinate, with signs chosen so that Q is preserved."""
    if sorted(sigma) != [0, 1, 2, 3]:
        raise ValueError("sigma must be a permutation of 0..3")
    R = ring_Sa(p)
    perm = [A_NAMES.index(_relabel(sigma, n)) for n in A_NAMES]
    qs = quadrics(p).q
    ideal_basis = _span(qs, R)
    for signs in product((1, -1), repeat=12):
        if signs[0] != 1:
            continue
        imgs = [R.zero()] * 12
        for v in range(12):
            imgs[v] = R.var(A_NAMES[perm[v]]).scale(signs[v] % p)
        if all(_in_span(f.map(imgs, R), ideal_basis, R) for f in qs):
            return tuple((perm[v], signs[v]) for v in range(12))
    raise DerivationError(f"no signed permutation for sigma={sigma} preserves Q")


def _span(polys, R):
    keys = sorted({k for f in polys for k in f.terms})
    M = np.array([[f.terms.get(k, 0) for k in keys] for f in polys], dtype=np.int64)
    return keys, M


def _in_span(f: WPoly, basis, R) -> bool:
    keys, M = basis
    if any(k not in keys for k in f.terms):
        return False
    v = np.array([[f.terms.get(k, 0) for k in keys]], dtype=np.int64)
    return rank(np.vstack([M, v]), R.p) == rank(M, R.p)


def apply_s4_point(sigma: Sequence[int], pt: Sequence[int], p: int = DEFAULT_PRIME) -> list[int]:
    act = s4_action(tuple(sigma), p)
    out = [0] * 12
    for v, (tgt, s) in enumerate(act):
        out[tgt] = (s * pt[v]) % p
    return out


def apply_s4_line(sigma: Sequence[int], line: Line) -> Line:
    r0, r1 = line.rows
    prov = {"kind": "s4", "sigma": list(sigma), "of": line.provenance}
    return Line.through(apply_s4_point(sigma, r0, line.p), apply_s4_point(sigma, r1, line.p),
                        prov, line.p)


def all_permutations() -> list[tuple[int, ...]]:
    return list(permutations(range(4)))


def signed_value(v: int, p: int = DEFAULT_PRIME) -> int:
    return signed(v, p)
