"""Degree-by-degree linear algebra on graded free modules.

Everything here works in one internal degree at a time with dense matrices
over F_p: graded pieces of free modules get explicit monomial bases, maps of
free modules become matrices, and minimal generators of a submodule in
degree d are the vectors independent of S_+ times lower degrees.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..exactalg.linalg import as_mod, independent_rows, kernel_basis, row_space
from ..exactalg.matrix import GradedMatrix
from ..exactalg.poly import PolyRing


class GradedFree:
    """F = (+) S(-shift_i) with monomial bases of each graded piece."""

    def __init__(self, ring: PolyRing, shifts: Sequence[int]):
        self.ring = ring
        self.shifts = tuple(shifts)
        self._basis: dict[int, tuple[list[int], dict[int, int]]] = {}
        self._mult: dict[tuple[int, int], np.ndarray] = {}

    def basis(self, d: int) -> tuple[list[int], dict[int, int]]:
        b = self._basis.get(d)
        if b is None:
            R = self.ring
            keys: list[int] = []
            for i, s in enumerate(self.shifts):
                off = (s << R.DSH) + i
                keys.extend(m + off for m in R.monomials(d - s))
            b = (keys, {k: t for t, k in enumerate(keys)})
            self._basis[d] = b
        return b

    def dim(self, d: int) -> int:
        return len(self.basis(d)[0])

    def mult_index(self, var: int, d: int) -> np.ndarray:
        """Position in degree d of x_var times each basis vector of degree d - w."""
        key = (var, d)
        if key not in self._mult:
            w = self.ring.weights[var]
            src, _ = self.basis(d - w)
            _, idx = self.basis(d)
            vk = self.ring.var_key(var)
            self._mult[key] = np.array([idx[k + vk] for k in src], dtype=np.int64)
        return self._mult[key]

    def multiply_rows(self, V: np.ndarray, var: int, d: int) -> np.ndarray:
        """Rows of V live in degree d - w(var); return x_var * V in degree d."""
        out = np.zeros((V.shape[0], self.dim(d)), dtype=np.int64)
        if V.shape[0]:
            out[:, self.mult_index(var, d)] = V
        return out

    def to_dense(self, vecs: list[dict[int, int]], d: int) -> np.ndarray:
        _, idx = self.basis(d)
        out = np.zeros((len(vecs), len(idx)), dtype=np.int64)
        for r, v in enumerate(vecs):
            for k, c in v.items():
                out[r, idx[k]] = c
        return out

    def from_dense(self, V: np.ndarray, d: int) -> list[dict[int, int]]:
        keys, _ = self.basis(d)
        out = []
        for row in V:
            nz = np.nonzero(row)[0]
            out.append({keys[t]: int(row[t]) for t in nz})
        return out


def map_matrix(phi: GradedMatrix, d: int, src: GradedFree | None = None,
               tgt: GradedFree | None = None) -> np.ndarray:
    """Matrix of phi in degree d: rows index the target basis, columns the source."""
    R = phi.ring
    src = src or GradedFree(R, phi.coldeg)
    tgt = tgt or GradedFree(R, phi.rowdeg)
    skeys, _ = src.basis(d)
    _, tidx = tgt.basis(d)
    cols = [phi.column_vector(j) for j in range(phi.ncols)]
    M = np.zeros((len(tidx), len(skeys)), dtype=np.int64)
    cm = R.cmask
    for t, k in enumerate(skeys):
        j = k & cm
        mono = k - (src.shifts[j] << R.DSH) - j
        for kk, c in cols[j].items():
            M[tidx[kk + mono], t] = c
    return M


class DegreewiseSpan:
    """Subspaces V_d of a graded free module closed under multiplication by
    variables, built degree by degree, with minimal generators recorded."""

    def __init__(self, F: GradedFree):
        self.F = F
        self.p = F.ring.p
        self.spaces: dict[int, np.ndarray] = {}
        self.generators: dict[int, np.ndarray] = {}

    def lower_span(self, d: int) -> np.ndarray:
        R = self.F.ring
        blocks = []
        for v, w in enumerate(R.weights):
            V = self.spaces.get(d - w)
            if V is not None and V.shape[0]:
                blocks.append(self.F.multiply_rows(V, v, d))
        if not blocks:
            return np.zeros((0, self.F.dim(d)), dtype=np.int64)
        return np.vstack(blocks)

    def add_degree(self, d: int, candidates: np.ndarray) -> np.ndarray:
        """Record degree d given vectors spanning (a superset of new part of) V_d.

        Returns the minimal generators found in degree d.
        """
        low = self.lower_span(d)
        low = row_space(low, self.p) if low.shape[0] else low
        nlow = low.shape[0]
        cand = as_mod(candidates, self.p).reshape(-1, self.F.dim(d))
        if cand.shape[0] == 0:
            self.spaces[d] = low
            self.generators[d] = cand
            return cand
        stack = np.vstack([low, cand])
        piv = independent_rows(stack, self.p)
        new_rows = [r - nlow for r in piv if r >= nlow]
        gens = cand[new_rows]
        self.spaces[d] = row_space(stack, self.p)
        self.generators[d] = gens
        return gens


def minimal_kernel_generators(phi: GradedMatrix, degrees: Sequence[int]
                              ) -> tuple[list[dict[int, int]], list[int]]:
    """Minimal homogeneous generators of ker(phi) in the given (increasing) degrees.

    Returned vectors are module elements of the source of phi.
    """
    R = phi.ring
    src = GradedFree(R, phi.coldeg)
    tgt = GradedFree(R, phi.rowdeg)
    span = DegreewiseSpan(src)
    gens: list[dict[int, int]] = []
    gdeg: list[int] = []
    lo = min(degrees) if degrees else 0
    for d in range(min(lo, min(phi.coldeg, default=lo)), max(degrees, default=lo - 1) + 1):
        if src.dim(d) == 0:
            span.spaces[d] = np.zeros((0, 0), dtype=np.int64)
            continue
        M = map_matrix(phi, d, src, tgt)
        K = kernel_basis(M, R.p) if M.shape[0] else np.eye(M.shape[1], dtype=np.int64)
        new = span.add_degree(d, K)
        if d in degrees:
            for v in src.from_dense(new, d):
                gens.append(v)
                gdeg.append(d)
    return gens, gdeg


def minimal_submodule_generators(ring: PolyRing, shifts: Sequence[int],
                                 vecs: list[dict[int, int]]) -> list[int]:
    """Indices of a minimal generating subset (greedy in degree order)."""
    F = GradedFree(ring, shifts)
    span = DegreewiseSpan(F)
    by_deg: dict[int, list[int]] = {}
    for i, v in enumerate(vecs):
        if v:
            by_deg.setdefault(ring.deg(max(v)), []).append(i)
    keep: list[int] = []
    if not by_deg:
        return keep
    w = max(ring.weights)
    for d in range(min(by_deg), max(by_deg) + 1):
        idx = by_deg.get(d, [])
        cand = F.to_dense([vecs[i] for i in idx], d) if idx else np.zeros((0, F.dim(d)), np.int64)
        low = span.lower_span(d)
        low = row_space(low, ring.p) if low.shape[0] else low
        if idx:
            stack = np.vstack([low, cand])
            piv = independent_rows(stack, ring.p)
            keep.extend(idx[r - low.shape[0]] for r in piv if r >= low.shape[0])
            span.spaces[d] = row_space(stack, ring.p)
        else:
            span.spaces[d] = low
        # drop spaces no longer needed
        for old in [k for k in span.spaces if k < d - w]:
            del span.spaces[old]
    return keep


def graded_piece_dims(phi: GradedMatrix, degrees: Sequence[int]) -> dict[int, int]:
    """dim (coker phi)_d by rank computations."""
    from ..exactalg.linalg import rank
    R = phi.ring
    src = GradedFree(R, phi.coldeg)
    tgt = GradedFree(R, phi.rowdeg)
    out = {}
    for d in degrees:
        n = tgt.dim(d)
        if n == 0 or src.dim(d) == 0:
            out[d] = n
            continue
        out[d] = n - rank(map_matrix(phi, d, src, tgt), R.p)
    return out


Callback = Callable[[int], None]
