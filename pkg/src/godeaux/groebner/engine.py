"""Buchberger's algorithm for submodules of graded free modules.

Module elements are dicts mapping packed keys (see :mod:`exactalg.poly`) to
nonzero residues; the component index lives in the low bits of each key.
Ideals are the one-component case.  Pairs are pruned with the
Gebauer-Moeller criteria (the coprime criterion is used only for ideals,
where it is valid) and selected by sugar degree, which for homogeneous
input is the ordinary degree, so a degree bound truncates correctly.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from ..exactalg.field import inv
from ..exactalg.poly import PolyRing


class Elem:
    __slots__ = ("terms", "lk", "lx", "comp", "deg", "sugar", "tail", "idx")

    def __init__(self, ring: PolyRing, terms: dict[int, int], sugar: int, idx: int):
        lk = max(terms)
        self.terms = terms
        self.lk = lk
        self.lx = ring.xpart(lk)
        self.comp = lk & ring.cmask
        self.deg = ring.deg(lk)
        self.sugar = sugar
        self.tail = [(k, c) for k, c in terms.items() if k != lk]
        self.idx = idx


def monic(terms: dict[int, int], p: int) -> dict[int, int]:
    lc = terms[max(terms)]
    if lc == 1:
        return terms
    s = inv(lc, p)
    return {k: c * s % p for k, c in terms.items()}


def top_degree(ring: PolyRing, terms: dict[int, int]) -> int:
    return max(ring.deg(k) for k in terms)


class Reducer:
    """Normal forms with respect to a growing list of monic elements."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.by_comp: dict[int, list[Elem]] = {}
        self._hit: dict[int, Elem] = {}
        self._miss: set[int] = set()

    def add(self, e: Elem):
        lst = self.by_comp.setdefault(e.comp, [])
        lst.append(e)
        lst.sort(key=lambda g: (g.deg, len(g.tail)))
        self._miss.clear()

    def find(self, k: int) -> Elem | None:
        g = self._hit.get(k)
        if g is not None:
            return g
        if len(self._hit) > 1 << 21:
            self._hit.clear()
        if k in self._miss:
            return None
        R = self.ring
        lst = self.by_comp.get(k & R.cmask)
        if lst:
            X = R.xpart(k)
            H = R.guard
            XH = X | H
            for g in lst:
                if (XH - g.lx) & H == H:
                    self._hit[k] = g
                    return g
        self._miss.add(k)
        return None

    def reduce(self, f: dict[int, int], full: bool = True) -> dict[int, int]:
        """Normal form of f (a new dict is returned; f is not modified)."""
        if not f:
            return {}
        p = self.ring.p
        f = dict(f)
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem: dict[int, int] = {}
        pop, push = heapq.heappop, heapq.heappush
        find = self.find
        while heap:
            k = -pop(heap)
            c = f.get(k)
            if c is None:
                continue
            g = find(k)
            if g is None:
                rem[k] = f.pop(k)
                if not full:
                    rem.update(f)
                    return rem
                continue
            del f[k]
            shift = k - g.lk
            m = p - c
            for kg, vg in g.tail:
                kk = kg + shift
                old = f.get(kk)
                if old is None:
                    f[kk] = m * vg % p
                    push(heap, -kk)
                else:
                    nv = (old + m * vg) % p
                    if nv:
                        f[kk] = nv
                    else:
                        del f[kk]
        return rem


@dataclass
class GBStats:
    pairs: int = 0
    reductions_to_zero: int = 0
    pruned: int = 0


def _lcm_key(ring: PolyRing, a: Elem, b: Elem) -> int:
    X = ring.x_lcm(a.lx, b.lx)
    # degree of the lcm: component shift of a plus weighted degree of X
    shift = a.deg - ring.wdeg_x(a.lx)
    return ring.key_from_x(X, a.comp, shift)


def spoly(ring: PolyRing, a: Elem, b: Elem, lcm: int) -> dict[int, int]:
    p = ring.p
    sa = lcm - a.lk
    sb = lcm - b.lk
    out: dict[int, int] = {}
    for k, c in a.tail:
        out[k + sa] = c
    for k, c in b.tail:
        kk = k + sb
        v = (out.get(kk, 0) - c) % p
        if v:
            out[kk] = v
        else:
            out.pop(kk, None)
    return out


def buchberger(ring: PolyRing, gens: list[dict[int, int]], degree_bound: int | None = None,
               ideal: bool = False, stats: GBStats | None = None) -> list[dict[int, int]]:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    With ``degree_bound`` only pairs and generators of degree <= bound are
    processed; for homogeneous input the result is then a Groebner basis in
    all degrees up to the bound.
    """
    p = ring.p
    stats = stats if stats is not None else GBStats()
    H = ring.guard
    red = Reducer(ring)
    elems: list[Elem] = []
    active: list[bool] = []
    queue: list[tuple] = []
    counter = 0
    for g in gens:
        g = {k: c % p for k, c in g.items() if c % p}
        if not g:
            continue
        s = top_degree(ring, g)
        if degree_bound is not None and s > degree_bound:
            continue
        heapq.heappush(queue, (s, max(g), counter, 0, g))
        counter += 1
    pairs: dict[tuple[int, int], int] = {}   # (i, j) -> lcm key

    def divides_x(Xa, Xb):
        return ((Xb | H) - Xa) & H == H

    def update(h: Elem):
        nonlocal counter
        hi = h.idx
        cand = [(i, _lcm_key(ring, elems[i], h)) for i in range(len(elems) - 1)
                if active[i] and elems[i].comp == h.comp]
        # chain criterion among the new pairs (Gebauer-Moeller "M" and "F")
        cand.sort(key=lambda t: t[1])
        kept: list[tuple[int, int]] = []
        seen_lcms: set[int] = set()
        for i, l in cand:
            if l in seen_lcms:
                stats.pruned += 1
                continue
            Xl = ring.xpart(l)
            if any(divides_x(ring.xpart(l2), Xl) for _, l2 in kept):
                stats.pruned += 1
                continue
            seen_lcms.add(l)
            kept.append((i, l))
        new = []
        for i, l in kept:
            g = elems[i]
            if ideal and ring.x_lcm(g.lx, h.lx) == g.lx + h.lx:
                stats.pruned += 1   # coprime leading monomials
                continue
            new.append((i, l))
        # prune old pairs made redundant by h
        hx = h.lx
        for (i, j), l in list(pairs.items()):
            if elems[i].comp != h.comp:
                continue
            Xl = ring.xpart(l)
            if divides_x(hx, Xl):
                li = _lcm_key(ring, elems[i], h)
                lj = _lcm_key(ring, elems[j], h)
                if li != l and lj != l:
                    del pairs[(i, j)]
                    stats.pruned += 1
        for i, l in new:
            pairs[(i, hi)] = l
            a, b = elems[i], h
            s = max(a.sugar + (ring.deg(l) - a.deg), b.sugar + (ring.deg(l) - b.deg))
            if degree_bound is not None and ring.deg(l) > degree_bound:
                continue
            heapq.heappush(queue, (s, l, counter, 1, (i, hi)))
            counter += 1
        # elements whose leading term is now redundant stay usable for reduction
        for i in range(len(elems) - 1):
            if active[i] and elems[i].comp == h.comp and divides_x(hx, elems[i].lx):
                active[i] = False

    while queue:
        s, _l, _c, kind, data = heapq.heappop(queue)
        if kind == 0:
            f = data
        else:
            if data not in pairs:
                continue
            i, j = data
            l = pairs.pop(data)
            stats.pairs += 1
            f = spoly(ring, elems[i], elems[j], l)
        h = red.reduce(f)
        if not h:
            if kind == 1:
                stats.reductions_to_zero += 1
            continue
        h = monic(h, p)
        e = Elem(ring, h, s, len(elems))
        elems.append(e)
        active.append(True)
        red.add(e)
        update(e)

    return interreduce(ring, [e.terms for e in elems])


def interreduce(ring: PolyRing, polys: list[dict[int, int]]) -> list[dict[int, int]]:
    """Reduced basis from a Groebner basis: minimal leading terms, tails reduced."""
    p = ring.p
    H = ring.guard
    items = sorted((monic(f, p) for f in polys if f), key=lambda f: max(f))
    minimal: list[dict[int, int]] = []
    lts: list[tuple[int, int]] = []
    for f in items:
        lk = max(f)
        X, c = ring.xpart(lk), lk & ring.cmask
        if any(c == c2 and ((X | H) - X2) & H == H for c2, X2 in lts):
            continue
        minimal.append(f)
        lts.append((c, X))
    out = []
    for idx, f in enumerate(minimal):
        red = Reducer(ring)
        for j, g in enumerate(minimal):
            if j != idx:
                red.add(Elem(ring, g, 0, j))
        lk = max(f)
        tail = {k: c for k, c in f.items() if k != lk}
        t = red.reduce(tail)
        t[lk] = 1
        out.append(t)
    out.sort(key=lambda f: max(f))
    return out
