"""Assemble d1 and d2 from a line and a solution of the unfolding system.

d2 = [[o, n, b3], [-n^t, b4, p], [-b3^t, -p^t, 0]] and the lower seven rows
d1' = [[a, b1, c], [0, e, b2]] are written down directly; the first row of d1
is then recovered as a syzygy of d2 in degrees (6, 7, 8), modulo the
S-multiples of the rows of d1'.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import AssemblyError
from ..exactalg.linalg import kernel_basis, rank, rref, solve
from ..exactalg.matrix import GradedMatrix, block
from ..exactalg.poly import PolyRing, WPoly, ring_S
from ..godeaux_data.derive import RelationSystem, derive_relations, o_name, o_normal_positions
from ..godeaux_data.standard import StandardComplex, standard_complex
from ..groebner.linear import GradedFree, map_matrix
from ..qgeom.core import Line
from .second_step import N_UNKNOWNS, unknown_values

D1_ROWDEG = [0, 4, 4, 4, 4, 5, 5, 5]
D1_COLDEG = [6] * 6 + [7] * 12 + [8] * 8
D2_COLDEG = [11] * 6 + [10] * 12 + [9] * 8
FLAGS = ("complex_ok", "skew_ok", "restriction_ok", "hilbert_ok", "rc_ok")


@dataclass
class ResolutionCandidate:
    d1: GradedMatrix
    d2: GradedMatrix
    line: Line
    solution: list[int]
    flags: dict = field(default_factory=lambda: {k: None for k in FLAGS})
    meta: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.d1.ring

    @property
    def d1_lower(self) -> GradedMatrix:
        return self.d1.submatrix(list(range(1, 8)), None)

    def to_json(self) -> dict:
        return {"schema": "godeaux.resolution/1", "d1": self.d1.to_json(),
                "d2": self.d2.to_json(), "line": self.line.to_json(),
                "solution": [str(int(v)) for v in self.solution],
                "flags": dict(self.flags), "meta": dict(self.meta)}

    @classmethod
    def from_json(cls, data: dict) -> "ResolutionCandidate":
        d1 = GradedMatrix.from_json(data["d1"])
        return cls(d1, GradedMatrix.from_json(data["d2"], d1.ring), Line.from_json(data["line"]),
                   [int(v) for v in data["solution"]], dict(data.get("flags", {})),
                   dict(data.get("meta", {})))


def lift_to_S(M: GradedMatrix, S: PolyRing) -> GradedMatrix:
    """A matrix over k[y0..y3] viewed over S."""
    ys = [S.var(f"y{i}") for i in range(4)]
    return M.map_entries(lambda f: f.map(ys, S) if f.terms else S.zero(), S)


def _binary(S: PolyRing, c: list[int]) -> WPoly:
    x0, x1 = S.var("x0"), S.var("x1")
    if len(c) == 2:
        return x0.scale(c[0]) + x1.scale(c[1])
    return (x0 * x0).scale(c[0]) + (x0 * x1).scale(c[1]) + (x1 * x1).scale(c[2])


def _eval_row(expr: dict[str, WPoly], vals: dict[str, WPoly], line: Line, S: PolyRing) -> WPoly:
    out = S.zero()
    for u, f in expr.items():
        out = out + line.restrict(f, S) * vals[u]
    return out


def unfolding_blocks(line: Line, sol, sys: RelationSystem | None = None) -> dict:
    """The x-dependent blocks a, e, p, o, n, c over S for a solution vector."""
    p = line.p
    sys = sys or derive_relations(p)
    S = ring_S(p)
    raw = unknown_values(sol, sys, p)
    vals = {u: _binary(S, c) for u, c in raw.items()}
    for u, ex in sys.c_elim.items():
        vals[u] = _eval_row(ex, vals, line, S)
    n = [[_eval_row(sys.n_expr[f"n_{j}_{k}"], vals, line, S) for k in range(12)]
         for j in range(6)]
    c = [[vals[f"c_{r}_{l}"] for l in range(8)] for r in range(4)]
    ys = [S.var(f"y{m}") for m in range(4)]
    o = [[S.zero()] * 6 for _ in range(6)]
    for (i, k, m) in o_normal_positions(p):
        o[i][k] = o[i][k] + vals[o_name(i, k, m)] * ys[m]
    for i in range(6):
        for k in range(i):
            o[i][k] = -o[k][i]

    def on_line(M):
        return [[line.restrict(f, S) if f.terms else S.zero() for f in row] for row in M]
    return {"a": on_line(sys.a_matrix()), "e": on_line(sys.e_matrix()),
            "p": on_line(sys.p_matrix()), "o": o, "n": n, "c": c}


def build_d2(S: PolyRing, C: StandardComplex, blk: dict) -> GradedMatrix:
    b3, b4 = lift_to_S(C.b3, S), lift_to_S(C.b4, S)
    o = GradedMatrix(S, [6] * 6, [11] * 6, blk["o"], check=False)
    n = GradedMatrix(S, [6] * 6, [10] * 12, blk["n"], check=False)
    pm = GradedMatrix(S, [7] * 12, [9] * 8, blk["p"], check=False)
    return block(S, [[o, n, b3],
                     [-n.transpose(17), b4, pm],
                     [-b3.transpose(17), -pm.transpose(17), None]])


def build_d1_lower(S: PolyRing, C: StandardComplex, blk: dict) -> GradedMatrix:
    b1, b2 = lift_to_S(C.b1, S), lift_to_S(C.b2, S)
    a = GradedMatrix(S, [4] * 4, [6] * 6, blk["a"], check=False)
    c = GradedMatrix(S, [4] * 4, [8] * 8, blk["c"], check=False)
    e = GradedMatrix(S, [5] * 3, [7] * 12, blk["e"], check=False)
    return block(S, [[a, b1, c], [None, e, b2]])


def _vec_of_row(M: GradedMatrix, i: int, F: GradedFree, mono: int) -> dict[int, int]:
    """mono * (row i of M) as an element of F (component j <-> column j)."""
    R = M.ring
    out = {}
    for j, f in enumerate(M.entries[i]):
        off = mono + (F.shifts[j] << R.DSH) + j
        for k, c in f.terms.items():
            out[k + off] = c
    return out


def first_row(d2: GradedMatrix, lower: GradedMatrix, b0: GradedMatrix) -> tuple[GradedMatrix, dict]:
    """The row r0 with r0 d2 = 0, entries of degrees (6, 7, 8), restricting to b0
    mod (x0, x1), in reduced form against the S-multiples of the rows of d1'."""
    S = d2.ring
    p = S.p
    phi = d2.transpose(17)          # source component k has shift 17 - rowdeg_k
    F = GradedFree(S, phi.coldeg)
    Mphi = map_matrix(phi, 17, F, GradedFree(S, phi.rowdeg))
    K = kernel_basis(Mphi, p)
    urows = []
    for i in range(lower.nrows):
        for m in S.monomials(lower.rowdeg[i]):
            urows.append(_vec_of_row(lower, i, F, m))
    U = F.to_dense(urows, 17)
    rU = rank(U, p)
    if rank(np.vstack([K, U]), p) != K.shape[0]:
        raise AssemblyError("rows of d1' are not syzygies of d2")
    extra = K.shape[0] - rU
    if extra < 1:
        raise AssemblyError("no syzygy of d2 beyond the rows of d1'")
    E, piv = rref(U, p)
    E = E[:rU]

    def reduce(v):
        v = v.copy() % p
        for r, c in enumerate(piv[:rU]):
            if v[c]:
                v = (v - v[c] * E[r]) % p
        return v
    W = np.array([reduce(v) for v in K])
    W, _ = rref(W, p)
    W = W[:extra]
    # restriction mod (x0, x1): coefficients of the y-quadrics in the first six entries
    keys, idx = F.basis(17)
    ycols, target = [], []
    b0ent = b0.entries[0]
    for t, k in enumerate(keys):
        j = k & S.cmask
        mono = k - (F.shifts[j] << S.DSH) - j
        e = S.exps(mono)
        if e[0] == 0 and e[1] == 0:
            ycols.append(t)
            target.append(b0ent[j].terms.get(mono, 0) if j < 6 else 0)
    A = W[:, ycols].T % p               # restriction of combination = A @ coeffs
    tvec = np.array(target, dtype=np.int64) % p
    coeffs = solve(A, tvec, p)
    if coeffs is None:
        raise AssemblyError("no syzygy row of d2 restricts to b0")
    r0 = (coeffs @ W) % p
    # canonical choice: reduce by the combinations that vanish mod (x0, x1)
    Z = kernel_basis(A, p)
    if Z.shape[0]:
        Zr, zp = rref((Z @ W) % p, p)
        for r, c in enumerate(zp):
            if r0[c]:
                r0 = (r0 - r0[c] * Zr[r]) % p
    vec = F.from_dense(r0.reshape(1, -1), 17)[0]
    acc: list[dict[int, int]] = [{} for _ in range(d2.nrows)]
    for k, c in vec.items():
        j = k & S.cmask
        acc[j][k - (F.shifts[j] << S.DSH) - j] = c
    ent = [WPoly(S, a) for a in acc]
    row = GradedMatrix(S, [0], list(d2.rowdeg), [ent], check=False)
    return row, {"syzygy_dim": int(K.shape[0]), "lower_span_dim": int(rU),
                 "extra_dim": int(extra)}


def restriction_mod_x(M: GradedMatrix) -> GradedMatrix:
    S = M.ring
    return M.map_entries(lambda f: WPoly(S, {k: c for k, c in f.terms.items()
                                             if not (S.exps(k)[0] or S.exps(k)[1])}))


def standard_blocks(S: PolyRing, C: StandardComplex) -> tuple[GradedMatrix, GradedMatrix]:
    """d1 and d2 at x0 = x1 = 0."""
    b0, b1, b2, b3, b4 = (lift_to_S(M, S) for M in (C.b0, C.b1, C.b2, C.b3, C.b4))
    d1 = block(S, [[b0, None, None], [None, b1, None], [None, None, b2]])
    d2 = block(S, [[None, None, b3], [None, b4, None], [-b3.transpose(17), None, None]])
    return d1, d2


def assemble(line: Line, sol=None, sys: RelationSystem | None = None) -> ResolutionCandidate:
    p = line.p
    sys = sys or derive_relations(p)
    sol = [0] * N_UNKNOWNS if sol is None else [int(v) % p for v in sol]
    if len(sol) != N_UNKNOWNS:
        raise ValueError(f"solution must have {N_UNKNOWNS} entries")
    S = ring_S(p)
    C = standard_complex(p)
    blk = unfolding_blocks(line, sol, sys)
    d2 = build_d2(S, C, blk)
    lower = build_d1_lower(S, C, blk)
    row, meta = first_row(d2, lower, lift_to_S(C.b0, S))
    d1 = block(S, [[row], [lower]])
    cand = ResolutionCandidate(d1, d2, line, sol, meta=meta)
    std1, std2 = standard_blocks(S, C)
    cand.flags["complex_ok"] = (d1 @ d2).is_zero()
    cand.flags["skew_ok"] = d2.is_skew()
    cand.flags["restriction_ok"] = (restriction_mod_x(d1).entries == std1.entries
                                    and restriction_mod_x(d2).entries == std2.entries)
    return cand
