"""Weighted polynomial rings over F_p with packed monomial keys.

A monomial ``x^e`` (optionally tagged with a module component ``c`` and a
degree shift) is stored as one Python integer

    K = (deg << DSH) - (X << WC) + c,     X = sum(e_i << (W * i))

where ``deg`` is the weighted degree plus the shift.  Comparing keys as
integers is exactly the order "weighted degree, then graded reverse
lexicographic, then component index", and multiplying monomials is adding
keys.  Exponent fields carry a guard bit so divisibility is a single
subtraction (SWAR trick).
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .field import DEFAULT_PRIME, check_prime, inv, signed


class PolyRing:
    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None,
                 p: int = DEFAULT_PRIME, exp_bits: int = 10, comp_bits: int = 16):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        weights = [1] * len(names) if weights is None else [int(w) for w in weights]
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.p = check_prime(p)
        self.n = len(names)
        self.W = exp_bits
        self.WC = comp_bits
        self.WN = self.W * self.n
        self.DSH = self.WC + self.WN
        self.fmask = (1 << self.W) - 1
        self.xmask = (1 << self.WN) - 1
        self.cmask = (1 << self.WC) - 1
        self.guard = sum(1 << (self.W * i + self.W - 1) for i in range(self.n))
        self.max_exp = (1 << (self.W - 1)) - 1
        self.index = {v: i for i, v in enumerate(self.names)}
        self._var_keys = [self.key(tuple(int(i == j) for j in range(self.n)))
                          for i in range(self.n)]
        self._mono_cache: dict[int, list[int]] = {}

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.weights == other.weights and self.p == other.p)

    def __hash__(self):
        return hash((self.names, self.weights, self.p))

    def __repr__(self):
        vs = ", ".join(f"{v}:{w}" for v, w in zip(self.names, self.weights))
        return f"PolyRing[{vs}] over F_{self.p}"

    def with_field(self, p: int) -> "PolyRing":
        return PolyRing(self.names, self.weights, p, self.W, self.WC)

    # -- monomial keys --------------------------------------------------
    def key(self, exps: Sequence[int], comp: int = 0, shift: int = 0) -> int:
        X = 0
        d = shift
        for i, e in enumerate(exps):
            if e:
                if e > self.max_exp or e < 0:
                    raise OverflowError("exponent out of packed range")
                X |= e << (self.W * i)
                d += e * self.weights[i]
        return (d << self.DSH) - (X << self.WC) + comp

    def xpart(self, K: int) -> int:
        return (-((K - (K & self.cmask)) >> self.WC)) & self.xmask

    def comp(self, K: int) -> int:
        return K & self.cmask

    def deg(self, K: int) -> int:
        V = (K - (K & self.cmask)) >> self.WC
        return (V + ((-V) & self.xmask)) >> self.WN

    def exps(self, K: int) -> tuple[int, ...]:
        X = self.xpart(K)
        W, m = self.W, self.fmask
        return tuple((X >> (W * i)) & m for i in range(self.n))

    def wdeg_x(self, X: int) -> int:
        W, m = self.W, self.fmask
        return sum(((X >> (W * i)) & m) * w for i, w in enumerate(self.weights))

    def key_from_x(self, X: int, comp: int = 0, shift: int = 0) -> int:
        return ((self.wdeg_x(X) + shift) << self.DSH) - (X << self.WC) + comp

    def x_divides(self, X1: int, X2: int) -> bool:
        H = self.guard
        return ((X2 | H) - X1) & H == H

    def x_lcm(self, X1: int, X2: int) -> int:
        H = self.guard
        ge = ((X1 | H) - X2) & H      # guard set where e1 >= e2
        m = (ge >> (self.W - 1)) * self.fmask
        return (X1 & m) | (X2 & ~m & self.xmask)

    def var_key(self, i: int) -> int:
        return self._var_keys[i]

    def monomials(self, d: int) -> list[int]:
        """Keys of all monomials of weighted degree d, descending."""
        if d in self._mono_cache:
            return self._mono_cache[d]
        out: list[int] = []
        if d >= 0:
            for e in _exponents(self.weights, d):
                out.append(self.key(e))
        out.sort(reverse=True)
        self._mono_cache[d] = out
        return out

    def dim(self, d: int) -> int:
        return len(self.monomials(d))

    # -- constructors ---------------------------------------------------
    def zero(self) -> "WPoly":
        return WPoly(self, {})

    def one(self) -> "WPoly":
        return WPoly(self, {self.key((0,) * self.n): 1})

    def const(self, c: int) -> "WPoly":
        c %= self.p
        return WPoly(self, {self.key((0,) * self.n): c} if c else {})

    def var(self, name) -> "WPoly":
        i = name if isinstance(name, int) else self.index[name]
        return WPoly(self, {self._var_keys[i]: 1})

    def gens(self) -> list["WPoly"]:
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "WPoly":
        c = coeff % self.p
        return WPoly(self, {self.key(exps): c} if c else {})

    def from_dict(self, d: Mapping[tuple, int]) -> "WPoly":
        terms: dict[int, int] = {}
        p = self.p
        for e, c in d.items():
            k = self.key(e)
            v = (terms.get(k, 0) + c) % p
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return WPoly(self, terms)

    def parse(self, text: str) -> "WPoly":
        return parse_poly(self, text)

    def __call__(self, text: str) -> "WPoly":
        return self.parse(text)


def _exponents(weights: Sequence[int], d: int):
    n = len(weights)
    if n == 0:
        if d == 0:
            yield ()
        return

    def rec(i, rem):
        if i == n - 1:
            if rem % weights[i] == 0:
                yield (rem // weights[i],)
            return
        for e in range(rem // weights[i] + 1):
            for tail in rec(i + 1, rem - e * weights[i]):
                yield (e,) + tail

    yield from rec(0, d)


class WPoly:
    """Sparse polynomial: dict from packed monomial key to a nonzero residue."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int | None:
        if not self.terms:
            return None
        return self.ring.deg(max(self.terms))

    def degrees(self) -> set[int]:
        return {self.ring.deg(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading_key(self) -> int:
        return max(self.terms)

    def lc(self) -> int:
        return self.terms[max(self.terms)] if self.terms else 0

    def items(self):
        """(exponent tuple, coefficient) pairs in descending order."""
        R = self.ring
        return [(R.exps(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(self.ring.key(exps), 0)

    def variables(self) -> set[int]:
        out = set()
        for k in self.terms:
            for i, e in enumerate(self.ring.exps(k)):
                if e:
                    out.add(i)
        return out

    def constant_value(self) -> int | None:
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            k, c = next(iter(self.terms.items()))
            if k == 0:
                return c
        return None

    # -- arithmetic -----------------------------------------------------
    def _check(self, other):
        if isinstance(other, WPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(int(other))

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.p
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = (t.get(k, 0) + c) % p
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return WPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return WPoly(self.ring, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "WPoly":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        return WPoly(self.ring, {k: v * c % p for k, v in self.terms.items()})

    def mul_term(self, key: int, c: int) -> "WPoly":
        p = self.ring.p
        return WPoly(self.ring, {k + key: v * c % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WPoly):
            return self.scale(int(other))
        other = self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        p = self.ring.p
        t: dict[int, int] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return WPoly(self.ring, {k: v % p for k, v in t.items() if v % p})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, WPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def monic(self) -> "WPoly":
        if not self.terms:
            return self
        return self.scale(inv(self.lc(), self.ring.p))

    # -- evaluation and maps ------------------------------------------------
    def evaluate(self, point: Sequence[int]) -> int:
        R = self.ring
        p = R.p
        point = [int(a) for a in point]
        total = 0
        for k, c in self.terms.items():
            v = c
            for i, e in enumerate(R.exps(k)):
                if e:
                    v = v * pow(point[i], e, p) % p
            total += v
        return total % p

    def map(self, images: Sequence["WPoly"], target: PolyRing | None = None) -> "WPoly":
        """Ring homomorphism sending variable i to images[i]."""
        R = self.ring
        if target is None:
            target = images[0].ring if images else R
        result: dict[int, int] = {}
        p = target.p
        powers: dict[tuple[int, int], WPoly] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[key]

        for k, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(R.exps(k)):
                if e:
                    term = term * power(i, e)
            for kk, v in term.terms.items():
                nv = (result.get(kk, 0) + v) % p
                if nv:
                    result[kk] = nv
                else:
                    result.pop(kk, None)
        return WPoly(target, result)

    def substitute(self, values: Mapping) -> "WPoly":
        """Replace some variables (by name or index) with polynomials or ints."""
        R = self.ring
        images = []
        for i in range(R.n):
            v = values.get(R.names[i], values.get(i))
            if v is None:
                images.append(R.var(i))
            elif isinstance(v, WPoly):
                images.append(v)
            else:
                images.append(R.const(int(v)))
        return self.map(images, R)

    def coefficients_in(self, var_indices: Sequence[int]) -> dict[tuple, "WPoly"]:
        """Split by the exponents of the given variables."""
        R = self.ring
        out: dict[tuple, dict[int, int]] = {}
        for k, c in self.terms.items():
            e = list(R.exps(k))
            sel = tuple(e[i] for i in var_indices)
            for i in var_indices:
                e[i] = 0
            out.setdefault(sel, {})[R.key(e)] = c
        return {s: WPoly(R, t) for s, t in out.items()}

    # -- text -------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"WPoly({format_poly(self)})"


def format_monomial(ring: PolyRing, exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: WPoly) -> str:
    """Canonical text: descending order, symmetric integer coefficients."""
    if not f.terms:
        return "0"
    R = f.ring
    out = []
    for k in sorted(f.terms, reverse=True):
        c = signed(f.terms[k], R.p)
        mono = format_monomial(R, R.exps(k))
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(ring: PolyRing, text: str) -> WPoly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ring.zero()
    terms: dict[int, int] = {}
    p = ring.p
    pos = 0
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign, body = m.groups()
        coeff = -1 if sign == "-" else 1
        exps = [0] * ring.n
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, e = factor.partition("^")
            if name not in ring.index:
                raise ValueError(f"unknown variable {name!r}")
            exps[ring.index[name]] += int(e) if e else 1
        k = ring.key(exps)
        v = (terms.get(k, 0) + coeff) % p
        if v:
            terms[k] = v
        else:
            terms.pop(k, None)
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return WPoly(ring, terms)


# -- the named rings -----------------------------------------------------------

A_NAMES = ("a_0_0_1", "a_0_0_2", "a_0_0_3", "a_1_0_1", "a_1_1_2", "a_1_1_3",
           "a_2_0_2", "a_2_1_2", "a_2_2_3", "a_3_0_3", "a_3_1_3", "a_3_2_3")


@lru_cache(maxsize=None)
def ring_S(p: int = DEFAULT_PRIME) -> PolyRing:
    """k[x0,x1,y0..y3] with weights (2,2,3,3,3,3)."""
    return PolyRing(["x0", "x1", "y0", "y1", "y2", "y3"], [2, 2, 3, 3, 3, 3], p)


@lru_cache(maxsize=None)
def ring_T(p: int = DEFAULT_PRIME) -> PolyRing:
    """k[y0..y3], each of weight 3."""
    return PolyRing(["y0", "y1", "y2", "y3"], [3, 3, 3, 3], p)


@lru_cache(maxsize=None)
def ring_Sa(p: int = DEFAULT_PRIME) -> PolyRing:
    """Coordinate ring of P^11 in the surviving a-variables."""
    return PolyRing(A_NAMES, None, p)


@lru_cache(maxsize=None)
def ring_binary(p: int = DEFAULT_PRIME) -> PolyRing:
    return PolyRing(["x0", "x1"], [1, 1], p)


def all_monomials(ring: PolyRing, degrees: Iterable[int]) -> list[int]:
    out = []
    for d in degrees:
        out.extend(ring.monomials(d))
    return out


def binary_form(ring: PolyRing, coeffs: Sequence[int]) -> WPoly:
    """sum coeffs[i] x0^(d-i) x1^i in a two-variable ring."""
    d = len(coeffs) - 1
    return ring.from_dict({(d - i, i): c for i, c in enumerate(coeffs) if c % ring.p})

