"""Checks on an assembled candidate.

fast: d1 d2 = 0 (symbolically and at a random point), skewness, restriction
to the standard complex, Hilbert function of coker d1 in degrees 0..10.
full: additionally minimal Betti totals, codim of ann(coker d1) and the ring
condition.  The ring condition asks the maximal minors of d1' to have codim
at least 5; V(I_7(d1')) is the support of coker d1', so its codimension is
read from the cokernel instead of from the 7 x 7 minors themselves.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..exactalg.linalg import matmul_mod
from ..exactalg.matrix import GradedMatrix
from ..groebner.core import IdealOrModule
from ..groebner.invariants import codim
from ..groebner.linear import graded_piece_dims
from ..groebner.resolution import minimal_free_resolution
from ..godeaux_data.standard import standard_complex
from ..qgeom.sampling import rng_for
from .assemble import ResolutionCandidate, restriction_mod_x, standard_blocks

HILBERT_EXPECTED = (1, 0, 2, 4, 7, 11, 16, 22, 29, 37, 46)
BETTI_EXPECTED = (8, 26, 26, 8)
ANN_CODIM = 3
RC_CODIM = 5
RESOLUTION_DEGREE_BOUND = 18


@dataclass
class VerifyReport:
    level: str
    checks: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v for v in self.checks.values())

    def to_json(self) -> dict:
        out = {"schema": "godeaux.report/1", "level": self.level, "ok": self.ok,
               "checks": dict(self.checks), "values": dict(self.values)}
        if self.timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "VerifyReport":
        return cls(data["level"], dict(data["checks"]), dict(data["values"]),
                   dict(data.get("timings", {})))


def evaluate_matrix(M: GradedMatrix, pt) -> np.ndarray:
    return np.array([[f.evaluate(pt) for f in row] for row in M.entries], dtype=np.int64)


def product_vanishes_at_point(cand: ResolutionCandidate, seed: int = 0) -> bool:
    p = cand.ring.p
    pt = [int(v) for v in rng_for(seed, 5).integers(0, p, size=cand.ring.n)]
    A = evaluate_matrix(cand.d1, pt)
    B = evaluate_matrix(cand.d2, pt)
    return not np.any(matmul_mod(A, B, p))


def _timed(rep: VerifyReport, name: str, fn):
    t = time.perf_counter()
    out = fn()
    rep.timings[name] = time.perf_counter() - t
    return out


def verify(cand: ResolutionCandidate, level: str = "fast", seed: int = 0) -> VerifyReport:
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    rep = VerifyReport(level)
    d1, d2 = cand.d1, cand.d2
    S = cand.ring

    def products():
        sym = (d1 @ d2).is_zero() and (d2 @ d1.transpose(17)).is_zero()
        return sym, product_vanishes_at_point(cand, seed)
    sym, num = _timed(rep, "complex", products)
    rep.checks["complex_ok"] = sym and num
    rep.values["product_symbolic_zero"] = sym
    rep.values["product_point_zero"] = num
    rep.checks["skew_ok"] = d2.is_skew()
    std1, std2 = standard_blocks(S, standard_complex(S.p))
    rep.checks["restriction_ok"] = (restriction_mod_x(d1).entries == std1.entries
                                    and restriction_mod_x(d2).entries == std2.entries)
    hv = _timed(rep, "hilbert", lambda: graded_piece_dims(d1, range(len(HILBERT_EXPECTED))))
    rep.values["hilbert"] = [hv[d] for d in sorted(hv)]
    rep.checks["hilbert_ok"] = tuple(rep.values["hilbert"]) == HILBERT_EXPECTED
    if level == "full":
        res = _timed(rep, "betti", lambda: minimal_free_resolution(
            d1, 4, degree_bound=RESOLUTION_DEGREE_BOUND))
        rep.values["betti"] = res.betti.to_json()
        rep.values["betti_totals"] = list(res.betti.totals())
        rep.checks["betti_ok"] = tuple(res.betti.totals()) == BETTI_EXPECTED
        # coker d1 is the graded ring; its support has the annihilator's codim
        c_ann = _timed(rep, "ann_codim", lambda: codim(IdealOrModule(d1), "exact"))
        rep.values["ann_codim"] = c_ann
        rep.checks["ann_codim_ok"] = c_ann == ANN_CODIM
        c_rc = _timed(rep, "rc", lambda: codim(IdealOrModule(cand.d1_lower), "probabilistic",
                                                seed=seed, trials=2))
        rep.values["rc_codim"] = c_rc
        rep.values["rc_method"] = "codim-based"   # codim of V(I_7(d1')), not its depth
        rep.checks["rc_ok"] = c_rc >= RC_CODIM
    for k in ("complex_ok", "skew_ok", "restriction_ok", "hilbert_ok", "rc_ok"):
        if k in rep.checks:
            cand.flags[k] = rep.checks[k]
    return rep
