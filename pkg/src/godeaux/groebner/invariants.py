"""Hilbert data, codimension, annihilators and ideal quotients."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

import numpy as np

from ..exactalg.linalg import kernel_basis
from ..exactalg.matrix import GradedMatrix
from ..exactalg.poly import PolyRing, WPoly
from .core import IdealOrModule, vectors_to_matrix
from .linear import DegreewiseSpan, GradedFree, map_matrix
from .monomial import format_tpoly, hilbert_numerator, krull_dim, series_coefficients
from .resolution import Resolution, syzygies


@dataclass
class HilbertData:
    numerator: dict[int, int]
    values: dict[int, int]

    def numerator_str(self) -> str:
        return format_tpoly(self.numerator)

    def to_json(self) -> dict:
        return {"numerator": self.numerator_str(),
                "values": [{"deg": d, "dim": v} for d, v in sorted(self.values.items())]}


def hilbert_numerator_of(M: IdealOrModule | Resolution) -> dict[int, int]:
    if isinstance(M, Resolution):
        return M.betti.numerator()
    R = M.ring
    lm = M.gb().leading_monomials()
    out: dict[int, int] = {}
    for c, s in enumerate(M.shifts):
        for k, v in hilbert_numerator(R, lm.get(c, [])).items():
            out[k + s] = out.get(k + s, 0) + v
    return {k: v for k, v in out.items() if v}


def hilbert_values(numer: dict[int, int], weights: Sequence[int],
                   degrees: Sequence[int]) -> dict[int, int]:
    degrees = list(degrees)
    if not degrees:
        return {}
    lo = min(min(numer, default=0), min(degrees))
    coeffs = series_coefficients({k - lo: v for k, v in numer.items()}, weights,
                                 max(degrees) - lo)
    return {d: coeffs[d - lo] if d >= lo else 0 for d in degrees}


def hilbert(M: IdealOrModule | Resolution, degrees: Sequence[int] = range(11),
            ring: PolyRing | None = None) -> HilbertData:
    """Numerator with respect to prod(1 - t^w) and the values on ``degrees``."""
    numer = hilbert_numerator_of(M)
    R = ring or (M.maps[0].ring if isinstance(M, Resolution) else M.ring)
    return HilbertData(numer, hilbert_values(numer, R.weights, degrees))


def cokernel_dims(phi: GradedMatrix, degrees: Sequence[int]) -> dict[int, int]:
    """dim (coker phi)_d by counting ranks in each degree."""
    from .linear import graded_piece_dims
    return graded_piece_dims(phi, degrees)


# -- dimension ----------------------------------------------------------------

def module_krull_dim(M: IdealOrModule) -> int:
    """Krull dimension of F / M from its leading module; -1 when F / M = 0."""
    R = M.ring
    lm = M.gb().leading_monomials()
    return max(krull_dim(R, lm.get(c, [])) for c in range(M.rank))


def _random_form(R: PolyRing, d: int, rng: np.random.Generator) -> WPoly:
    mons = R.monomials(d)
    vals = rng.integers(1, R.p, size=len(mons))
    return WPoly(R, {m: int(v) for m, v in zip(mons, vals)})


def _sliced(M: IdealOrModule, forms: list[WPoly]) -> IdealOrModule:
    R = M.ring
    cols = [M.gens.column(j) for j in range(M.gens.ncols)]
    coldeg = list(M.gens.coldeg)
    for f in forms:
        for c, s in enumerate(M.shifts):
            col = [R.zero()] * M.rank
            col[c] = f
            cols.append(col)
            coldeg.append(s + f.degree())
    ent = [[cols[j][i] for j in range(len(cols))] for i in range(M.rank)]
    return IdealOrModule(GradedMatrix(R, M.shifts, coldeg, ent))


def is_finite_length(M: IdealOrModule) -> bool:
    return module_krull_dim(M) <= 0


def codim(I: IdealOrModule, mode: str = "exact", seed: int = 0, trials: int = 1) -> int:
    """Codimension of V(I) (of the support of F / I for a module).

    ``exact`` reads the dimension off the leading-term module.
    ``probabilistic`` cuts with k random forms of degree lcm(weights) and finds
    the least k leaving a module of finite length; n - k is a lower bound for
    the codimension, equal to it unless all trials pick special forms.
    """
    R = I.ring
    n = R.n
    if I.gens.ncols == 0 or all(f.is_zero() for row in I.gens.entries for f in row):
        return 0
    if mode == "exact":
        d = module_krull_dim(I)
        return n - d if d >= 0 else n + 1
    if mode != "probabilistic":
        raise ValueError(f"unknown mode {mode!r}")
    L = lcm(*R.weights)
    best = 0
    for t in range(trials):
        rng = np.random.Generator(np.random.Philox(key=[seed, t]))
        forms = [_random_form(R, L, rng) for _ in range(n)]
        lo, hi = 0, n      # finite length with hi forms is certain
        if is_finite_length(I):
            hi = 0
        while lo < hi:
            mid = (lo + hi) // 2
            if is_finite_length(_sliced(I, forms[:mid])):
                hi = mid
            else:
                lo = mid + 1
        best = max(best, n - hi)
    return best


# -- quotients ----------------------------------------------------------------

@dataclass
class AnnihilatorResult:
    ideal: IdealOrModule
    degree_bound: int
    bound_limited: bool


def annihilator(presentation: GradedMatrix, degree_bound: int = 9) -> AnnihilatorResult:
    """ann(coker presentation) up to ``degree_bound``.

    In each degree d this is the intersection over basis vectors e_i of
    {f : f e_i in image}, found by linear algebra; minimal generators are
    then extracted.  The flag is set when no generator at all was found.
    """
    phi = presentation
    R = phi.ring
    p = R.p
    src = GradedFree(R, phi.coldeg)
    tgt = GradedFree(R, phi.rowdeg)
    S1 = GradedFree(R, [0])
    span = DegreewiseSpan(S1)
    gens: list[dict[int, int]] = []
    degs: list[int] = []
    for d in range(0, degree_bound + 1):
        nS = S1.dim(d)
        if nS == 0:
            continue
        W = np.eye(nS, dtype=np.int64)      # current candidate space, rows
        for i, s in enumerate(phi.rowdeg):
            if W.shape[0] == 0:
                break
            e = d + s
            keys, idx = tgt.basis(e)
            if not keys:
                continue
            # f e_i for the basis of the current space
            monos, _ = S1.basis(d)
            off = (s << R.DSH) + i
            Mult = np.zeros((len(keys), nS), dtype=np.int64)
            for t, m in enumerate(monos):
                Mult[idx[m + off], t] = 1
            Fw = (Mult @ W.T) % p
            Im = map_matrix(phi, e, src, tgt) if src.dim(e) else np.zeros((len(keys), 0), np.int64)
            K = kernel_basis(np.hstack([Fw, Im]), p)
            coeff = K[:, :W.shape[0]]
            W = (coeff @ W) % p if coeff.shape[0] else np.zeros((0, nS), np.int64)
            W = _row_basis(W, p)
        new = span.add_degree(d, W)
        for v in S1.from_dense(new, d):
            gens.append(v)
            degs.append(d)
    ideal = IdealOrModule(vectors_to_matrix(R, [0], gens, degs))
    return AnnihilatorResult(ideal, degree_bound, bound_limited=not gens)


def _row_basis(W: np.ndarray, p: int) -> np.ndarray:
    from ..exactalg.linalg import row_space
    if W.shape[0] == 0:
        return W
    return row_space(W, p)


def ideal_quotient(I: IdealOrModule, f: WPoly) -> IdealOrModule:
    """I : f for an ideal I, from the syzygies of (f, generators of I)."""
    R = I.ring
    polys = [f] + I.polys()
    row = GradedMatrix(R, [0], [g.degree() for g in polys], [polys])
    Z = syzygies(row)
    gens = [Z[0, j].monic() for j in range(Z.ncols) if Z[0, j].terms]
    return IdealOrModule.ideal(R, gens)


def intersect(I: IdealOrModule, J: IdealOrModule) -> IdealOrModule:
    R = I.ring
    a, b = I.polys(), J.polys()
    row = GradedMatrix(R, [0], [g.degree() for g in a + b], [a + b])
    Z = syzygies(row)
    out = []
    for j in range(Z.ncols):
        g = R.zero()
        for i, h in enumerate(a):
            g = g + Z[i, j] * h
        if g.terms:
            out.append(g)
    return IdealOrModule.ideal(R, out)


def _same_ideal(I: IdealOrModule, J: IdealOrModule) -> bool:
    GI, GJ = I.gb(), J.gb()
    return (all(GI.contains(dict(g.terms)) for g in J.polys())
            and all(GJ.contains(dict(g.terms)) for g in I.polys()))


def saturation(I: IdealOrModule, J: IdealOrModule) -> IdealOrModule:
    """I : J^infinity, as the intersection over generators h of I : h^infinity."""
    parts = []
    for h in J.polys():
        cur = I
        while True:
            nxt = ideal_quotient(cur, h)
            if _same_ideal(nxt, cur):
                break
            cur = nxt
        parts.append(cur)
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def saturate_by_variable(I: IdealOrModule, var: str) -> IdealOrModule:
    """I : v^infinity for a variable v.

    With v last, grevlex leading terms are divisible by v only if the whole
    element is, so dividing the Groebner basis by the largest powers of v
    gives a basis of the saturation.
    """
    R = I.ring
    i = R.index[var]
    order = [j for j in range(R.n) if j != i] + [i]
    R2 = PolyRing([R.names[j] for j in order], [R.weights[j] for j in order], R.p)
    to2 = [R2.var(R.names[j]) for j in range(R.n)]
    back = [R.var(n) for n in R2.names]
    G = IdealOrModule.ideal(R2, [f.map(to2, R2) for f in I.polys()]).gb()
    W = R2.W * (R2.n - 1)
    out = []
    for g in G.elements:
        e = min((R2.xpart(k) >> W) & R2.fmask for k in g)
        shift = R2.key_from_x(e << W, 0, 0) - R2.key_from_x(0, 0, 0)
        h = WPoly(R2, {k - shift: c for k, c in g.items()})
        out.append(h.map(back, R))
    return IdealOrModule.ideal(R, out)
