"""Rational points by random linear slicing, and lines through them.

A target of projective dimension d is cut with a random linear P^(11-d);
the finitely many intersection points are read off from the eigenvalues of
multiplication operators on a graded piece of the quotient ring, and any
F_p-rational simple point is returned.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
from sympy.polys import galoistools as gt
from sympy.polys.domains import ZZ

from ..errors import SamplingError
from ..exactalg.field import DEFAULT_PRIME
from ..exactalg.linalg import inverse, kernel_basis, matmul_mod, rank
from ..exactalg.poly import PolyRing, WPoly, ring_Sa
from ..groebner.core import IdealOrModule
from ..groebner.monomial import krull_dim
from .core import Line, line_in_q, quadrics, tangent_forms

MAX_ATTEMPTS = 200


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[int(seed), int(stream)]))


def projective_dim(gens: Sequence[WPoly]) -> int:
    """dim V(gens) in P^(n-1); -1 when empty."""
    R = gens[0].ring
    I = IdealOrModule.ideal(R, gens)
    return krull_dim(R, I.gb().leading_monomials()[0]) - 1


def fp_roots(coeffs_high_first: list[int], p: int) -> list[int]:
    """Distinct roots in F_p of a univariate polynomial."""
    f = gt.gf_strip([int(c) % p for c in coeffs_high_first])
    if len(f) <= 1:
        return []
    f = gt.gf_monic(f, p, ZZ)[1]
    h = gt.gf_sqf_part(f, p, ZZ)
    xp = gt.gf_pow_mod([1, 0], p, h, p, ZZ)
    lin = gt.gf_gcd(gt.gf_sub(xp, [1, 0], p, ZZ), h, p, ZZ)
    if len(lin) <= 1:
        return []
    return sorted(int((-fac[1]) % p) for fac in gt.gf_edf_zassenhaus(lin, 1, p, ZZ))


def _minpoly(A: np.ndarray, v: np.ndarray, p: int) -> list[int]:
    """Minimal polynomial of A relative to v (coefficients, highest first)."""
    vecs = [v % p]
    while True:
        nxt = matmul_mod(A, vecs[-1].reshape(-1, 1), p).ravel()
        K = np.vstack(vecs + [nxt]).T
        ker = kernel_basis(K, p)
        if ker.shape[0]:
            c = ker[0]
            return [int(x) for x in c[::-1]]
        vecs.append(nxt)


def _standard(R: PolyRing, lms: list[int], d: int) -> list[int]:
    H = R.guard
    return [m for m in R.monomials(d)
            if not any(((R.xpart(m) | H) - L) & H == H for L in lms)]


def zero_dim_points(R: PolyRing, gens: Sequence[WPoly], rng: np.random.Generator,
                    max_degree: int = 40) -> list[list[int]]:
    """F_p-rational simple points (with first coordinate 1) of a homogeneous
    ideal whose zero set is finite and misses t0 = 0."""
    p = R.p
    I = IdealOrModule.ideal(R, gens)
    G = I.gb()
    lms = G.leading_monomials()[0]
    if krull_dim(R, lms) != 1:
        return []
    D = max(R.deg(max(g)) for g in G.elements)
    while True:
        B0 = _standard(R, lms, D)
        B1 = _standard(R, lms, D + 1)
        if len(B0) == len(B1):
            break
        D += 1
        if D > max_degree:
            return []
    N = len(B0)
    if N == 0:
        return []
    idx1 = {m: t for t, m in enumerate(B1)}
    mats = []
    for i in range(R.n):
        M = np.zeros((N, N), dtype=np.int64)
        vk = R.var_key(i)
        for t, m in enumerate(B0):
            nf = G.reduce({m + vk: 1})
            for k, c in nf.items():
                M[idx1[k], t] = c
        mats.append(M)
    if rank(mats[0], p) < N:
        return []
    M0i = inverse(mats[0], p)
    ops = [matmul_mod(M0i, M, p) for M in mats[1:]]
    coeffs = rng.integers(1, p, size=len(ops))
    A = np.zeros((N, N), dtype=np.int64)
    for c, Op in zip(coeffs, ops):
        A = (A + int(c) * Op) % p
    v = rng.integers(0, p, size=N)
    pts = []
    for lam in fp_roots(_minpoly(A, v, p), p):
        K = kernel_basis((A - lam * np.eye(N, dtype=np.int64)) % p, p)
        if K.shape[0] != 1:
            continue
        w = K[0]
        piv = int(np.nonzero(w)[0][0])
        winv = pow(int(w[piv]), p - 2, p)
        pt = [1] + [int(matmul_mod(Op, w.reshape(-1, 1), p)[piv, 0]) * winv % p for Op in ops]
        if all(g.evaluate(pt) == 0 for g in gens):
            pts.append(pt)
    return pts


def sample_on(gens: Sequence[WPoly], seed: int, stream: int = 0,
              dim: int | None = None, avoid: Sequence[Sequence[int]] = ()) -> list[int]:
    """A random F_p-rational point of V(gens) in P^11, deterministic in the seed."""
    gens = [g for g in gens if g.terms]
    R = gens[0].ring
    p = R.p
    n = R.n
    d = projective_dim(gens) if dim is None else dim
    if d < 0:
        raise SamplingError("target is empty")
    m = n - d                   # parameters of the slicing subspace P^(m-1)
    T = PolyRing([f"t{i}" for i in range(m)], None, p)
    tv = T.gens()
    for attempt in range(MAX_ATTEMPTS):
        rng = rng_for(seed, stream * 100003 + attempt)
        Bm = rng.integers(0, p, size=(n, m))
        imgs = [_lin(T, tv, Bm[v]) for v in range(n)]
        J = [g.map(imgs, T) for g in gens]
        J = [f for f in J if f.terms]
        if not J:
            continue
        pts = zero_dim_points(T, J, rng)
        for t in pts:
            x = [int(sum(int(Bm[v, i]) * t[i] for i in range(m)) % p) for v in range(n)]
            if any(x) and not any(_proportional(x, a, p) for a in avoid):
                return x
    raise SamplingError(f"no rational point found after {MAX_ATTEMPTS} slices")


def _lin(T: PolyRing, tv, row) -> WPoly:
    f = T.zero()
    for c, t in zip(row, tv):
        if int(c):
            f = f + t.scale(int(c))
    return f


def _proportional(x: Sequence[int], y: Sequence[int], p: int) -> bool:
    return rank(np.array([list(x), list(y)], dtype=np.int64), p) < 2


def sample_point(target=None, seed: int = 0, p: int = DEFAULT_PRIME) -> list[int]:
    """A point on Q, or on a library locus (a Locus object or generator list)."""
    gens = _target_gens(target, p)
    return sample_on(gens, seed)


def _target_gens(target, p: int) -> list[WPoly]:
    q = list(quadrics(p).q)
    if target is None or target == "Q":
        return q
    if hasattr(target, "sample"):
        raise TypeError("use the locus' own sampler")
    if hasattr(target, "gens"):
        return q + list(target.gens)
    return q + list(target)


def line_through(P: Sequence[int], second=None, seed: int = 0,
                 p: int = DEFAULT_PRIME, provenance: dict | None = None) -> Line:
    """A line from P to a random point q of T_P Q cap Q (cap the second target)."""
    q = list(quadrics(p).q)
    if any(f.evaluate(P) for f in q):
        raise SamplingError("starting point is not on Q")
    gens = q + tangent_forms(P, p)
    if second is not None and second != "Q":
        gens += list(second.gens) if hasattr(second, "gens") else list(second)
    for attempt in range(MAX_ATTEMPTS):
        try:
            Qpt = sample_on(gens, seed, stream=1 + attempt, avoid=[P])
        except SamplingError:
            continue
        line = Line.through(P, Qpt, provenance or {"kind": "random", "seed": seed}, p)
        if line_in_q(line):
            return line
    raise SamplingError("could not find a second point on the tangent cone")


def random_line(seed: int = 0, p: int = DEFAULT_PRIME, through=None, second=None) -> Line:
    """A random line in Q; ``through``/``second`` optionally name loci for the
    two spanning points."""
    if through is None:
        P = sample_point(None, seed, p)
    elif hasattr(through, "sample"):
        P = through.sample(seed)
    else:
        P = sample_point(through, seed, p)
    names = [getattr(t, "name", None) for t in (through, second) if t is not None]
    prov = {"kind": "through_loci" if names else "random", "seed": seed}
    if names:
        prov["loci"] = names
    if hasattr(second, "sample"):
        second = second.gens_or_none()
    return line_through(P, second, seed, p, prov)


def ring_for_points(p: int = DEFAULT_PRIME) -> PolyRing:
    return ring_Sa(p)
