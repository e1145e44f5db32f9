"""The linear system for the unfolding variables o and c along a line in Q.

Along a line every a-variable becomes a binary linear form, o a binary linear
form and c a binary quadric.  The relations l1 * o = 0 and l2 * c + q * o = 0
then become polynomial identities in (x0, x1) whose coefficients are linear
in the 84 unknowns (12 o's with two coefficients, 20 c's with three).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DerivationError
from ..exactalg.binary import binary_coeffs
from ..exactalg.linalg import kernel_basis, rank, solve
from ..exactalg.matrix import GradedMatrix
from ..exactalg.poly import A_NAMES, PolyRing, WPoly, ring_S, ring_binary
from ..godeaux_data.derive import RelationSystem, derive_relations, o_normal_positions
from ..godeaux_data.standard import PAIRS, standard_complex
from ..qgeom.core import Line, line_in_q
from ..qgeom.sampling import rng_for

N_O, N_C = 12, 20
N_UNKNOWNS = 2 * N_O + 3 * N_C      # 84


def o_index(j: int, t: int) -> int:
    return 2 * j + t


def c_index(j: int, s: int) -> int:
    return 2 * N_O + 3 * j + s


def _restricted(M: GradedMatrix, line: Line, B: PolyRing) -> list[list[list[int] | None]]:
    out = []
    for row in M.entries:
        r = []
        for f in row:
            g = line.restrict(f, B) if f.terms else B.zero()
            r.append(binary_coeffs(g) if g.terms else None)
        out.append(r)
    return out


def structured_system(line: Line, sys: RelationSystem | None = None) -> np.ndarray:
    """The 156 x 84 coefficient matrix: rows are (l1 row, coefficient of the
    quadric identity) then ([l2 | q] row, coefficient of the cubic identity)."""
    p = line.p
    sys = sys or derive_relations(p)
    B = ring_binary(p)
    l1 = _restricted(sys.l1, line, B)
    l2 = _restricted(sys.l2, line, B)
    qb = _restricted(sys.qblock, line, B)
    n1, n2 = len(l1), len(l2)
    M = np.zeros((3 * n1 + 4 * n2, N_UNKNOWNS), dtype=np.int64)
    for i, row in enumerate(l1):
        for j, f in enumerate(row):
            if f is None:
                continue
            for a, fa in enumerate(f):          # degree 1 times degree 1
                for t in range(2):
                    M[3 * i + a + t, o_index(j, t)] += fa
    base = 3 * n1
    for i in range(n2):
        for j, f in enumerate(l2[i]):
            if f is None:
                continue
            for a, fa in enumerate(f):          # degree 1 times degree 2
                for s in range(3):
                    M[base + 4 * i + a + s, c_index(j, s)] += fa
        for j, f in enumerate(qb[i]):
            if f is None:
                continue
            for a, fa in enumerate(f):          # degree 2 times degree 1
                for t in range(2):
                    M[base + 4 * i + a + t, o_index(j, t)] += fa
    return M % p


@dataclass
class SolutionSpace:
    line: Line
    matrix: np.ndarray
    basis: np.ndarray           # rows span the kernel

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def projective_dim(self) -> int:
        return self.dim - 1

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.int64) % self.line.p
        return not np.any((self.matrix @ v) % self.line.p)

    def combination(self, coeffs) -> np.ndarray:
        p = self.line.p
        c = np.asarray(coeffs, dtype=np.int64) % p
        if c.shape != (self.dim,):
            raise ValueError(f"need {self.dim} coefficients")
        out = np.zeros(N_UNKNOWNS, dtype=np.int64)
        for ci, row in zip(c, self.basis):
            out = (out + int(ci) * row) % p
        return out

    def generic(self, seed: int = 0) -> np.ndarray:
        """Pseudorandom combination of the kernel basis."""
        if self.dim == 0:
            return np.zeros(N_UNKNOWNS, dtype=np.int64)
        rng = rng_for(seed, 11)
        return self.combination(rng.integers(1, self.line.p, size=self.dim))

    def to_json(self) -> dict:
        return {"schema": "godeaux.solution_space/1", "line": self.line.to_json(),
                "dim": self.dim, "projective_dim": self.projective_dim,
                "basis": [[str(int(v)) for v in row] for row in self.basis]}

    @classmethod
    def from_json(cls, data: dict, sys: RelationSystem | None = None) -> "SolutionSpace":
        line = Line.from_json(data["line"])
        basis = np.array([[int(v) for v in row] for row in data["basis"]],
                         dtype=np.int64).reshape(-1, N_UNKNOWNS)
        return cls(line, structured_system(line, sys), basis)


def solve_second_step(line: Line, sys: RelationSystem | None = None) -> SolutionSpace:
    if not line_in_q(line):
        raise DerivationError("line does not lie on Q")
    M = structured_system(line, sys)
    return SolutionSpace(line, M, kernel_basis(M, line.p))


def unknown_values(sol, sys: RelationSystem, p: int) -> dict[str, list[int]]:
    """Binary coefficient lists of o (linear) and c (quadric) for a solution
    vector, with the column sign renaming undone."""
    v = [int(x) % p for x in sol]
    out: dict[str, list[int]] = {}
    for j, (u, s) in enumerate(zip(sys.o_vars, sys.o_signs)):
        out[u] = [s * v[o_index(j, t)] % p for t in range(2)]
    for j, (u, s) in enumerate(zip(sys.c_vars, sys.c_signs)):
        out[u] = [s * v[c_index(j, k)] % p for k in range(3)]
    return out


def identity_residuals(line: Line, sol, sys: RelationSystem | None = None) -> list[WPoly]:
    """The 42 relation polynomials in (x0, x1) after substitution, computed
    with polynomial arithmetic rather than the coefficient matrix."""
    p = line.p
    sys = sys or derive_relations(p)
    B = ring_binary(p)
    x0, x1 = B.var("x0"), B.var("x1")
    vals = unknown_values(sol, sys, p)

    def form(c):
        if len(c) == 2:
            return x0.scale(c[0]) + x1.scale(c[1])
        return (x0 * x0).scale(c[0]) + (x0 * x1).scale(c[1]) + (x1 * x1).scale(c[2])
    ov = [form(vals[u]).scale(s % p) for u, s in zip(sys.o_vars, sys.o_signs)]
    cv = [form(vals[u]).scale(s % p) for u, s in zip(sys.c_vars, sys.c_signs)]
    out = []
    for row in sys.l1.entries:
        acc = B.zero()
        for f, o in zip(row, ov):
            if f.terms:
                acc = acc + line.restrict(f, B) * o
        out.append(acc)
    for r2, rq in zip(sys.l2.entries, sys.qblock.entries):
        acc = B.zero()
        for f, c in zip(r2, cv):
            if f.terms:
                acc = acc + line.restrict(f, B) * c
        for f, o in zip(rq, ov):
            if f.terms:
                acc = acc + line.restrict(f, B) * o
        out.append(acc)
    return out


# -- independent oracle: expand d1' d2 = 0 with all of o, n, c unknown --------------------

def _lift(M: GradedMatrix, S: PolyRing) -> list[list[WPoly]]:
    ys = [S.var(f"y{i}") for i in range(4)]
    return [[f.map(ys, S) if f.terms else S.zero() for f in row] for row in M.entries]


def _solve_ep(line: Line, S: PolyRing):
    """e (3x12) and p (12x8) as x-linear forms, solved from a b3 + b1 p = 0 and
    e b4 = b2 p^t one x-coefficient at a time."""
    P = line.p
    C = standard_complex(P)

    def ycoef(M):
        T = M.ring
        out = np.zeros((M.nrows, M.ncols, 4), dtype=np.int64)
        for i, row in enumerate(M.entries):
            for j, f in enumerate(row):
                for k, c in f.terms.items():
                    e = T.exps(k)
                    out[i, j, e.index(1)] = c
        return out
    b1, b2, b3, b4 = (ycoef(M) for M in (C.b1, C.b2, C.b3, C.b4))
    rows = line.rows
    names = {}
    for v, n in enumerate(A_NAMES):
        _, k, i, j = n.split("_")
        names[(int(k), (int(i), int(j)))] = v
    es, ps = [], []
    for t in range(2):
        A = np.zeros((4, 6), dtype=np.int64)
        for (k, pair), v in names.items():
            A[k, PAIRS.index(pair)] = rows[t][v]
        # p: 96 unknowns; equation (a b3 + b1 p)[r, l] coefficient of y_m
        M = np.zeros((4 * 8 * 4, 96), dtype=np.int64)
        rhs = np.zeros(4 * 8 * 4, dtype=np.int64)
        for r in range(4):
            for l in range(8):
                for m in range(4):
                    eq = (r * 8 + l) * 4 + m
                    for k in range(12):
                        M[eq, k * 8 + l] += b1[r, k, m]
                    rhs[eq] = -sum(int(A[r, j]) * int(b3[j, l, m]) for j in range(6))
        x = solve(M % P, rhs % P, P)
        if x is None:
            raise DerivationError("no p solves a b3 + b1 p = 0")
        pt = x.reshape(12, 8)
        # e: 36 unknowns; (e b4 - b2 p^t)[i, k] coefficient of y_m
        M = np.zeros((3 * 12 * 4, 36), dtype=np.int64)
        rhs = np.zeros(3 * 12 * 4, dtype=np.int64)
        for i in range(3):
            for k in range(12):
                for m in range(4):
                    eq = (i * 12 + k) * 4 + m
                    for kk in range(12):
                        M[eq, i * 12 + kk] += b4[kk, k, m]
                    rhs[eq] = sum(int(b2[i, l, m]) * int(pt[k, l]) for l in range(8))
        x = solve(M % P, rhs % P, P)
        if x is None:
            raise DerivationError("no e solves e b4 = b2 p^t")
        es.append(x.reshape(3, 12))
        ps.append(pt)
    x0, x1 = S.var("x0"), S.var("x1")

    def forms(c0, c1):
        return [[x0.scale(int(u)) + x1.scale(int(v)) for u, v in zip(r0, r1)]
                for r0, r1 in zip(c0, c1)]
    return forms(*es), forms(*ps)


class _Lin:
    """Polynomial entries linear in the unknowns: key -> {unknown: coeff};
    unknown -1 is the constant part."""

    def __init__(self, terms=None):
        self.t: dict[int, dict[int, int]] = terms or {}

    @staticmethod
    def known(f: WPoly) -> "_Lin":
        return _Lin({k: {-1: c} for k, c in f.terms.items()})

    @staticmethod
    def unknown(monos: list[int], idx: list[int], sign: int = 1) -> "_Lin":
        return _Lin({k: {u: sign} for k, u in zip(monos, idx)})

    def is_known(self) -> bool:
        return all(set(d) <= {-1} for d in self.t.values())

    def neg(self) -> "_Lin":
        return _Lin({k: {u: -c for u, c in d.items()} for k, d in self.t.items()})


def _lin_mul_acc(acc: dict, A: _Lin, B: _Lin):
    if not A.t or not B.t:
        return
    if not (A.is_known() or B.is_known()):
        raise DerivationError("product of two unknown entries")
    for ka, da in A.t.items():
        for kb, db in B.t.items():
            tgt = acc.setdefault(ka + kb, {})
            for ua, ca in da.items():
                for ub, cb in db.items():
                    u = ub if ua == -1 else ua
                    tgt[u] = tgt.get(u, 0) + ca * cb


def raw_system(line: Line) -> tuple[np.ndarray, np.ndarray]:
    """Expand d1' d2 = 0 with every entry of o (normal form), n and c unknown.

    Returns (coefficient matrix over the 336 unknowns, constant column); the
    constant part vanishes exactly when the line lies in Q.
    """
    p = line.p
    S = ring_S(p)
    C = standard_complex(p)
    b1, b2, b3, b4 = (_lift(M, S) for M in (C.b1, C.b2, C.b3, C.b4))
    forms = dict(zip(A_NAMES, line.forms(S)))
    a = [[S.zero()] * 6 for _ in range(4)]
    for n, f in forms.items():
        _, k, i, j = n.split("_")
        a[int(k)][PAIRS.index((int(i), int(j)))] = f
    e, pm = _solve_ep(line, S)

    x1k, x0k = S.var_key(1), S.var_key(0)
    lin_monos = [x0k, x1k]
    quad_monos = [2 * x0k, x0k + x1k, 2 * x1k]
    ys = [S.var_key(2 + m) for m in range(4)]
    nxt = 0

    def fresh(k):
        nonlocal nxt
        out = list(range(nxt, nxt + k))
        nxt += k
        return out
    z = _Lin()
    o = [[z] * 6 for _ in range(6)]
    for (i, k, m) in o_normal_positions(p):
        idx = fresh(2)
        monos = [mm + ys[m] for mm in lin_monos]
        t = _Lin.unknown(monos, idx)
        # several normal-form positions may share (i, k)
        merged = dict(o[i][k].t)
        for kk, d in t.t.items():
            merged[kk] = d
        o[i][k] = _Lin(merged)
        o[k][i] = o[i][k].neg()
    n = [[_Lin.unknown(quad_monos, fresh(3)) for _ in range(12)] for _ in range(6)]
    c = [[_Lin.unknown(quad_monos, fresh(3)) for _ in range(8)] for _ in range(4)]
    K = _Lin.known
    # d1' = [[a, b1, c], [0, e, b2]]
    d1 = [[K(a[r][j]) for j in range(6)] + [K(b1[r][k]) for k in range(12)] + c[r]
          for r in range(4)]
    d1 += [[z] * 6 + [K(e[i][k]) for k in range(12)] + [K(b2[i][l]) for l in range(8)]
           for i in range(3)]
    # d2 = [[o, n, b3], [-n^t, b4, p], [-b3^t, -p^t, 0]]
    d2 = [o[i] + n[i] + [K(b3[i][l]) for l in range(8)] for i in range(6)]
    d2 += [[n[j][k].neg() for j in range(6)] + [K(b4[k][kk]) for kk in range(12)]
           + [K(pm[k][l]) for l in range(8)] for k in range(12)]
    d2 += [[K(-b3[j][l]) for j in range(6)] + [K(-pm[k][l]) for k in range(12)] + [z] * 8
           for l in range(8)]
    rows, consts = [], []
    for i in range(7):
        for j in range(26):
            acc: dict[int, dict[int, int]] = {}
            for k in range(26):
                _lin_mul_acc(acc, d1[i][k], d2[k][j])
            for key in sorted(acc):
                d = {u: v % p for u, v in acc[key].items() if v % p}
                if not d:
                    continue
                r = np.zeros(nxt, dtype=np.int64)
                for u, v in d.items():
                    if u >= 0:
                        r[u] = v
                rows.append(r)
                consts.append(d.get(-1, 0))
    if not rows:
        return np.zeros((0, nxt), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.array(rows), np.array(consts, dtype=np.int64)


def raw_kernel_dim(line: Line) -> int:
    """Dimension of the unfolding space from the raw expansion of d1' d2 = 0."""
    M, consts = raw_system(line)
    if np.any(consts % line.p):
        raise DerivationError("constant part of d1' d2 does not vanish: line not in Q")
    return M.shape[1] - rank(M, line.p)
