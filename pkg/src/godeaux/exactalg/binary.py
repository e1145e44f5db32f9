"""Binary forms over F_p: arithmetic, gcds, and projective roots.

A binary form of degree d is a coefficient list ``c`` with
``f = sum c[i] * x0^(d-i) * x1^i``.  Leading zeros in ``c`` are factors of
x1, i.e. the root (1:0).  Univariate factorization work is delegated to
sympy's finite-field routines.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from sympy.polys import galoistools as gt
from sympy.polys.domains import ZZ

from ..errors import ZeroFormError
from .field import inv
from .poly import WPoly


def bf_trim(c: list[int], p: int) -> list[int]:
    return [int(v) % p for v in c]


def bf_is_zero(c) -> bool:
    return all(v == 0 for v in c)


def bf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return out


def bf_add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) != len(b):
        raise ValueError("adding binary forms of different degrees")
    return [(x + y) % p for x, y in zip(a, b)]


def bf_scale(a: list[int], s: int, p: int) -> list[int]:
    return [x * s % p for x in a]


def bf_eval(c: list[int], pt: tuple[int, int], p: int) -> int:
    d = len(c) - 1
    a, b = pt
    return sum(v * pow(a, d - i, p) * pow(b, i, p) for i, v in enumerate(c)) % p


def _split_x1(c: list[int]) -> tuple[int, list[int]]:
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1
    return k, [int(v) for v in c[k:]]


def bf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd of two binary forms (zero forms are neutral)."""
    if bf_is_zero(a):
        return bf_monic(b, p)
    if bf_is_zero(b):
        return bf_monic(a, p)
    ka, ga = _split_x1(a)
    kb, gb = _split_x1(b)
    g = [int(v) for v in gt.gf_gcd(ga, gb, p, ZZ)]
    return [0] * min(ka, kb) + g


def bf_gcd_many(forms, p: int) -> list[int]:
    g: list[int] = [0]
    for f in forms:
        g = bf_gcd(g, f, p)
        if len(g) == 1 and not bf_is_zero(g):
            break
    return g


def bf_monic(c: list[int], p: int) -> list[int]:
    if bf_is_zero(c):
        return list(c)
    k, g = _split_x1(c)
    s = inv(g[0], p)
    return [0] * k + [v * s % p for v in g]


def bf_div(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact quotient a / b of binary forms."""
    ka, ga = _split_x1(a)
    kb, gb = _split_x1(b)
    if kb > ka:
        raise ValueError("non-exact binary form division")
    q, r = gt.gf_div(ga, gb, p, ZZ)
    if r:
        raise ValueError("non-exact binary form division")
    return [0] * (ka - kb) + [int(v) for v in q]


def bf_degree(c: list[int]) -> int:
    return len(c) - 1


def bf_squarefree_part(c: list[int], p: int) -> list[int]:
    if bf_is_zero(c):
        raise ZeroFormError("squarefree part of the zero form")
    k, g = _split_x1(c)
    out = [1]
    if len(g) > 1:
        _, facs = gt.gf_sqf_list(g, p, ZZ)
        for h, _m in facs:
            out = [int(v) for v in gt.gf_mul(out, h, p, ZZ)]
    return ([0] if k else []) + out


def bf_distinct_roots_count(c: list[int], p: int) -> int:
    """Number of distinct roots over the algebraic closure."""
    return bf_degree(bf_squarefree_part(c, p))


@dataclass
class BinaryRoots:
    degree: int
    roots: list[tuple[tuple[int, int], int]] = field(default_factory=list)
    residual: int = 0
    residual_factors: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def rational_count(self) -> int:
        return len(self.roots)

    @property
    def geometric_count(self) -> int:
        """Distinct roots over the algebraic closure."""
        return len(self.roots) + sum(deg * cnt for deg, _m, cnt in self.residual_factors)

    def to_json(self) -> list[dict]:
        out: list[dict] = [{"root": [a, b], "mult": m} for (a, b), m in self.roots]
        for deg, m, cnt in self.residual_factors:
            out.append({"residual_deg": deg, "mult": m, "count": cnt})
        return out

    @classmethod
    def from_json(cls, data: list[dict]) -> "BinaryRoots":
        roots = [((int(e["root"][0]), int(e["root"][1])), int(e["mult"]))
                 for e in data if "root" in e]
        facs = [(int(e["residual_deg"]), int(e["mult"]), int(e["count"]))
                for e in data if "residual_deg" in e]
        residual = sum(d * m * c for d, m, c in facs)
        return cls(sum(m for _, m in roots) + residual, roots, residual, facs)


def _rational_roots_sqf(h: list[int], p: int) -> tuple[list[int], list[int]]:
    """Roots in F_p of a squarefree monic h, and the rootless cofactor."""
    if len(h) <= 1:
        return [], h
    xp = gt.gf_pow_mod([1, 0], p, h, p, ZZ)
    lin = gt.gf_gcd(gt.gf_sub(xp, [1, 0], p, ZZ), h, p, ZZ)
    roots: list[int] = []
    if len(lin) > 1:
        for fac in gt.gf_edf_zassenhaus(lin, 1, p, ZZ):
            roots.append(int((-fac[1]) % p))
    rest = gt.gf_quo(h, lin, p, ZZ)
    return sorted(roots), [int(v) for v in rest]


def bf_roots(c: list[int], p: int) -> BinaryRoots:
    c = bf_trim(c, p)
    if bf_is_zero(c):
        raise ZeroFormError("roots of the zero form")
    d = len(c) - 1
    k, g = _split_x1(c)
    out = BinaryRoots(degree=d)
    if k:
        out.roots.append(((1, 0), k))
    residual_deg = 0
    if len(g) > 1:
        _, facs = gt.gf_sqf_list(g, p, ZZ)
        for h, m in facs:
            h = [int(v) for v in h]
            rts, rest = _rational_roots_sqf(h, p)
            for r in rts:
                out.roots.append(((r, 1), int(m)))
            if len(rest) > 1:
                residual_deg += (len(rest) - 1) * int(m)
                for prod, deg in gt.gf_ddf_zassenhaus(rest, p, ZZ):
                    cnt = (len(prod) - 1) // deg
                    out.residual_factors.append((int(deg), int(m), int(cnt)))
    out.residual = residual_deg
    out.roots.sort(key=lambda t: (t[0][1], t[0][0]))
    out.residual_factors.sort()
    return out


def binary_coeffs(f: WPoly) -> list[int]:
    """Coefficient list of a form in a ring whose first two variables are the
    binary coordinates (other variables must not occur)."""
    R = f.ring
    if not f.terms:
        raise ZeroFormError("zero binary form")
    exps = [R.exps(k) for k in f.terms]
    if any(any(e[2:]) for e in exps):
        raise ValueError("form involves more than two variables")
    tot = {e[0] + e[1] for e in exps}
    if len(tot) != 1:
        raise ValueError("binary form is not homogeneous")
    d = tot.pop()
    c = [0] * (d + 1)
    for k, v in f.terms.items():
        e = R.exps(k)
        c[e[1]] = v
    return c


def binary_form_roots(f: WPoly) -> BinaryRoots:
    """Projective F_p-roots with multiplicities plus residual degree bookkeeping."""
    if not f.terms:
        raise ZeroFormError("zero binary form")
    return bf_roots(binary_coeffs(f), f.ring.p)
