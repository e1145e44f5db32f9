"""Generators of the ideal of the bi-tricanonical model in P^1 x P^3.

coker d1 is a ring with unit e_0, so ann(coker d1) is the kernel of
f -> f e_0.  Its bihomogeneous part J (x of bidegree (1,0), y of (0,1)) is
the ideal of the image in P^1 x P^3.  We work in the singly graded ring:
normal forms of m e_0 against a Groebner basis of the image of d1 decide
membership, one bidegree at a time, and minimal generators in bidegree
(p, q) are counted modulo x * J(p-1, q) + y * J(p, q-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..exactalg.linalg import kernel_basis, rank
from ..exactalg.poly import PolyRing
from ..groebner.core import IdealOrModule

DEFAULT_MAX_BIDEGREE = (9, 9)


@dataclass
class BidegreeTable:
    counts: dict[tuple[int, int], int]
    max_bidegree: tuple[int, int]
    dims: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def bound_limited(self) -> bool:
        """True when generators sit on the boundary of the searched box."""
        P, Q = self.max_bidegree
        return any(p == P or q == Q for (p, q) in self.counts)

    def to_json(self) -> list[dict]:
        return [{"p": p, "q": q, "count": c} for (p, q), c in sorted(self.counts.items())]

    @classmethod
    def from_json(cls, rows: list[dict], max_bidegree) -> "BidegreeTable":
        return cls({(r["p"], r["q"]): r["count"] for r in rows}, tuple(max_bidegree))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.counts)


def bihomogeneous_monomials(R: PolyRing, p: int, q: int) -> list[int]:
    """Monomials of S with x-degree p and y-degree q."""
    out = []
    for m in R.monomials(2 * p + 3 * q):
        e = R.exps(m)
        if e[0] + e[1] == p:
            out.append(m)
    return out


def bitri_table(cand, max_bidegree: tuple[int, int] = DEFAULT_MAX_BIDEGREE) -> BidegreeTable:
    d1 = cand.d1 if hasattr(cand, "d1") else cand
    R = d1.ring
    P, Q = max_bidegree
    G = IdealOrModule(d1).gb()
    comp0 = (d1.rowdeg[0] << R.DSH)        # e_0 carries shift rowdeg[0] = 0
    nx = 2
    spaces: dict[tuple[int, int], np.ndarray] = {}
    monos: dict[tuple[int, int], dict[int, int]] = {}
    counts: dict[tuple[int, int], int] = {}
    dims: dict[tuple[int, int], int] = {}
    for p in range(P + 1):
        for q in range(Q + 1):
            ms = bihomogeneous_monomials(R, p, q)
            idx = {m: t for t, m in enumerate(ms)}
            monos[(p, q)] = idx
            nfs = [G.reduce({m + comp0: 1}) for m in ms]
            keys = sorted({k for v in nfs for k in v})
            if keys:
                kpos = {k: t for t, k in enumerate(keys)}
                N = np.zeros((len(keys), len(ms)), dtype=np.int64)
                for t, v in enumerate(nfs):
                    for k, c in v.items():
                        N[kpos[k], t] = c
                J = kernel_basis(N, R.p)
            else:
                J = np.eye(len(ms), dtype=np.int64)
            spaces[(p, q)] = J
            dims[(p, q)] = J.shape[0]
            if J.shape[0] == 0:
                continue
            low = []
            for (pp, qq, vars_) in ((p - 1, q, range(nx)), (p, q - 1, range(nx, R.n))):
                if pp < 0 or qq < 0 or spaces[(pp, qq)].shape[0] == 0:
                    continue
                src = list(monos[(pp, qq)])
                for v in vars_:
                    vk = R.var_key(v)
                    pos = np.array([idx[m + vk] for m in src], dtype=np.int64)
                    L = np.zeros((spaces[(pp, qq)].shape[0], len(ms)), dtype=np.int64)
                    L[:, pos] = spaces[(pp, qq)]
                    low.append(L)
            r = rank(np.vstack(low), R.p) if low else 0
            if J.shape[0] > r:
                counts[(p, q)] = J.shape[0] - r
    return BidegreeTable(counts, (P, Q), dims)
