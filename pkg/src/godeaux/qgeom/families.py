"""Explicit families: the Z/5 and Z/3 lines and the hyperelliptic parametrization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ParamError, StiefelError
from ..exactalg.field import DEFAULT_PRIME
from ..exactalg.linalg import rank
from .core import Line, from_display


def _pair(v, name: str, p: int) -> tuple[int, int]:
    a, b = (int(x) % p for x in v)
    if a == 0 and b == 0:
        raise ParamError(f"{name} must be a nonzero pair")
    return a, b


def family_z5(pp: Sequence[int], qq: Sequence[int], p: int = DEFAULT_PRIME) -> Line:
    """Row 0 carries p0, p1 at display positions 3, 8; row 1 carries q0, q1 at 1, 10."""
    p0, p1 = _pair(pp, "p", p)
    q0, q1 = _pair(qq, "q", p)
    r0 = [0] * 12
    r1 = [0] * 12
    r0[3], r0[8] = p0, p1
    r1[1], r1[10] = q0, q1
    return Line(np.array([from_display(r0), from_display(r1)], dtype=np.int64),
                {"kind": "z5", "p": [p0, p1], "q": [q0, q1]}, p)


def z3_vectors(z: Sequence[int], u: Sequence[int], w: Sequence[int],
               p: int = DEFAULT_PRIME) -> tuple[list[int], list[int]]:
    """The two spanning points (display order) of the Z/3 line for parameters z, u, w."""
    z0, z1 = z
    u0, u1, u2, u3 = u
    w0, w1 = w
    first = [u0, 0, 0, u1, 0, 0, 0, 0, u2, 0, 0, u3]
    second = [
        -u0**2 * u1 * w1**3 * z1,
        -u1 * u3**2 * w0**2 * w1 * z1,
        u1 * u2**2 * w0**2 * w1 * z1,
        0,
        -u0 * u3**2 * w0**2 * w1 * z1,
        u0 * u2**2 * w0**2 * w1 * z1,
        u1**2 * u3 * w0 * w1**2 * z1,
        -u0**2 * u3 * w0 * w1**2 * z1,
        -u2 * z0 + u2**2 * u3 * w0**3 * z1,
        u1**2 * u2 * w0 * w1**2 * z1,
        -u0**2 * u2 * w0 * w1**2 * z1,
        -u3 * z0,
    ]
    return [v % p for v in first], [v % p for v in second]


def family_z3(z: Sequence[int], u: Sequence[int], w: Sequence[int],
              p: int = DEFAULT_PRIME) -> Line:
    z = _pair(z, "z", p)
    w = _pair(w, "w", p)
    u = [int(x) % p for x in u]
    if len(u) != 4 or sum(1 for x in u if x) < 2:
        raise ParamError("u needs at least two nonzero coordinates")
    first, second = z3_vectors(z, u, w, p)
    S = np.array([from_display(first), from_display(second)], dtype=np.int64)
    if rank(S, p) < 2:
        raise ParamError("parameters lie in the base locus of the Z/3 family")
    try:
        return Line(S, {"kind": "z3", "z": list(z), "u": u, "w": list(w)}, p)
    except StiefelError as exc:        # pragma: no cover - rank was checked above
        raise ParamError(str(exc)) from exc


@dataclass(frozen=True)
class HypParamPoint:
    """Cox coordinates: (v0, v1) on the Hirzebruch surface over (w0, w1), and
    the three further P^1 factors (x0, x1), (y0, y1), (z0, z1)."""
    v: tuple[int, int]
    w: tuple[int, int]
    x: tuple[int, int]
    y: tuple[int, int]
    z: tuple[int, int]

    def __post_init__(self):
        for name in "vwxyz":
            pair = getattr(self, name)
            if len(pair) != 2 or not any(pair):
                raise ParamError(f"{name} must be a nonzero pair")

    def to_json(self) -> dict:
        return {k: list(getattr(self, k)) for k in "vwxyz"}


def hyp_vector(pt: HypParamPoint, p: int = DEFAULT_PRIME) -> list[int]:
    """The 12 forms of the parametrization, in display order."""
    v0, v1 = pt.v
    w0, w1 = pt.w
    x0, x1 = pt.x
    y0, y1 = pt.y
    z0, z1 = pt.z
    L = x1 * w1 - x0 * w0
    s = x1 + x0
    t = w1 + w0
    vec = [
        v0**2 * L * x1 * s * y0 * y1 * z1**2,
        v0**2 * L * x0 * s * y0 * y1 * z0**2,
        -v1**2 * w0**2 * w1**2 * t * x0 * x1 * s * y0 * y1 * z1**2,
        -v0**2 * L * x0 * x1 * y0**2 * z1**2,
        -v0**2 * L * x0 * s * y1**2 * z0**2,
        v1**2 * w0**2 * w1 * t**2 * x0 * x1 * s * y1**2 * z1**2,
        -v0**2 * L * x0 * x1 * y0**2 * z0 * z1,
        v0**2 * L * x1 * s * y1**2 * z0 * z1,
        -v1**2 * w0 * w1**2 * t**2 * x0 * x1 * s * y1**2 * z0 * z1,
        -v0 * v1 * w0 * w1 * L * x0 * x1 * y0**2 * z1**2,
        v0 * v1 * w0 * t * L * x1 * s * y1**2 * z1**2,
        -v0 * v1 * w1 * t * L * x0 * s * y1**2 * z0**2,
    ]
    return [c % p for c in vec]


def hyp_param(pt: HypParamPoint, p: int = DEFAULT_PRIME) -> list[int]:
    """Point of P^11 (A_NAMES order) on the hyperelliptic locus."""
    vec = hyp_vector(pt, p)
    if not any(vec):
        raise ParamError("parameters lie in the base locus of the parametrization")
    return from_display(vec)


def random_hyp_point(rng: np.random.Generator, p: int = DEFAULT_PRIME) -> HypParamPoint:
    def pair():
        return tuple(int(v) for v in rng.integers(1, p, size=2))
    return HypParamPoint(pair(), pair(), pair(), pair(), pair())
