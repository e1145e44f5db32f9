"""Combinatorics of monomial ideals given as packed exponent words."""
from __future__ import annotations

from itertools import combinations

from ..exactalg.poly import PolyRing

Poly = dict[int, int]   # univariate integer polynomial in t: degree -> coefficient


def minimalize(ring: PolyRing, gens: list[int]) -> list[int]:
    H = ring.guard
    gens = sorted(set(gens), key=ring.wdeg_x)
    out: list[int] = []
    for X in gens:
        if not any(((X | H) - Y) & H == H for Y in out):
            out.append(X)
    return out


def _support(ring: PolyRing, X: int) -> int:
    """Bitmask of variables occurring in the monomial."""
    s = 0
    W, m = ring.W, ring.fmask
    for i in range(ring.n):
        if (X >> (W * i)) & m:
            s |= 1 << i
    return s


def krull_dim(ring: PolyRing, gens: list[int]) -> int:
    """dim S / (gens); -1 for the unit ideal."""
    gens = minimalize(ring, gens)
    if 0 in gens:
        return -1
    supports = {_support(ring, X) for X in gens}
    n = ring.n
    # smallest set of variables meeting every support
    for size in range(n + 1):
        for C in combinations(range(n), size):
            mask = sum(1 << i for i in C)
            if all(s & mask for s in supports):
                return n - size
    return 0


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _padd(a: Poly, b: Poly, shift: int = 0) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + v
    return {k: v for k, v in out.items() if v}


def hilbert_numerator(ring: PolyRing, gens: list[int]) -> Poly:
    """N(t) with HS(S/L) = N(t) / prod(1 - t^w_i)."""
    gens = minimalize(ring, gens)
    return _numer(ring, gens)


def _numer(ring: PolyRing, gens: list[int]) -> Poly:
    if not gens:
        return {0: 1}
    if 0 in gens:
        return {}
    W, m = ring.W, ring.fmask
    # pairwise coprime generators: product formula
    sup = [_support(ring, X) for X in gens]
    coprime = True
    acc = 0
    for s in sup:
        if acc & s:
            coprime = False
            break
        acc |= s
    if coprime:
        out: Poly = {0: 1}
        for X in gens:
            out = _pmul(out, {0: 1, ring.wdeg_x(X): -1})
        return out
    # pivot on the variable occurring in the most non-pure generators
    counts = [0] * ring.n
    for X, s in zip(gens, sup):
        if s & (s - 1):
            for i in range(ring.n):
                if (s >> i) & 1:
                    counts[i] += 1
    i = max(range(ring.n), key=lambda j: counts[j])
    # exponent taken from mixed generators only: a pure power x_i^e already in
    # L would make L + (piv) = L and the recursion would not shrink
    exps = sorted((X >> (W * i)) & m for X, s in zip(gens, sup)
                  if (s & (s - 1)) and (X >> (W * i)) & m)
    e = exps[len(exps) // 2]
    piv = e << (W * i)
    H = ring.guard
    # L + (piv)
    plus = [X for X in gens if not (((X | H) - piv) & H == H)] + [piv]
    # L : piv
    colon = []
    for X in gens:
        xi = (X >> (W * i)) & m
        colon.append(X - (min(xi, e) << (W * i)))
    n1 = _numer(ring, minimalize(ring, plus))
    n2 = _numer(ring, minimalize(ring, colon))
    return _padd(n1, n2, ring.wdeg_x(piv))


def series_coefficients(numer: Poly, weights, upto: int) -> list[int]:
    """Coefficients 0..upto of numer(t) / prod(1 - t^w)."""
    c = [0] * (upto + 1)
    for k, v in numer.items():
        if 0 <= k <= upto:
            c[k] += v
    for w in weights:
        for d in range(w, upto + 1):
            c[d] += c[d - w]
    return c


def format_tpoly(numer: Poly) -> str:
    if not numer:
        return "0"
    parts = []
    for k in sorted(numer):
        v = numer[k]
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        a = abs(v)
        body = (str(a) if not mono else (mono if a == 1 else f"{a}*{mono}"))
        parts.append(("-" if v < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
