"""The ten acceptance criteria, each checked at its stated tolerance and time
limit.  A PASS/FAIL line per criterion is printed in the terminal summary."""
import time

import numpy as np
import pytest

from godeaux.classify import bitri_table, classify_fibers, normal_bundle
from godeaux.cli import derive_seed
from godeaux.construct import assemble, raw_kernel_dim, solve_second_step, verify
from godeaux.construct.verify import HILBERT_EXPECTED
from godeaux.exactalg import A_NAMES, ring_S, ring_Sa, ring_T
from godeaux.exactalg.matrix import GradedMatrix, from_rows
from godeaux.godeaux_data import (derive_relations, pfaffian4, pfaffian_matrices, printed_l1,
                                  standard_complex)
from godeaux.godeaux_data.derive import ALL_A
from godeaux.godeaux_data.reference import PRINTED_QUADRICS
from godeaux.groebner import IdealOrModule
from godeaux.groebner.invariants import hilbert_numerator_of
from godeaux.qgeom import (family_z3, family_z5, hyp_param, line_through, locus_library,
                           quadrics, random_hyp_point, random_line, rng_for)
from godeaux.qgeom.core import _ep_path, _quadric_path
from godeaux.qgeom.loci import i4_a

from test_godeaux_data import (NUMERATORS, PRINTED_B0, PRINTED_B2, PRINTED_B3,
                               _koszul_rows)

MINUTE = 60.0
Z5_TABLE = {(0, 7): 1, (1, 2): 1, (1, 5): 1, (2, 3): 1}
Z3_TABLE = {(0, 8): 1, (1, 3): 1, (1, 5): 1, (2, 2): 1}


class Clock:
    def __init__(self, limit: float):
        self.limit = limit
        self.t0 = time.perf_counter()

    def check(self):
        took = time.perf_counter() - self.t0
        print(f"  elapsed {took:.1f}s (limit {self.limit:.0f}s)")
        assert took < self.limit


def dominant_line(seed: int):
    """A line through a random point of Q avoiding every library locus."""
    lib = locus_library()
    names = lib.names()
    for attempt in range(50):
        L = random_line(derive_seed(seed, 1, attempt))
        if not any(lib[n].meets(L) for n in names):
            return L
    raise AssertionError("could not avoid the special loci")


def test_criterion_01_relation_derivation():
    clock = Clock(2 * MINUTE)
    derive_relations.cache_clear()
    sysr = derive_relations()
    R = sysr.ring
    for q, txt in zip(sysr.quadrics, PRINTED_QUADRICS):
        ref = R.parse(txt)
        assert q == ref or q == -ref
    assert sorted(sysr.forced_zero) == sorted(set(ALL_A) - set(A_NAMES))
    assert sysr.l1.entries == printed_l1(R)
    assert len(sysr.o_vars) == 12 and len(sysr.c_vars) == 20
    assert sysr.l1.shape == (12, 12)
    assert sysr.l2.shape == (30, 20)
    assert sysr.qblock.shape == (30, 12)
    clock.check()


def test_criterion_02_pfaffian_identity():
    clock = Clock(10)
    R = ring_Sa()
    sysr = derive_relations()
    for M, q in zip(pfaffian_matrices(R), sysr.quadrics):
        assert pfaffian4(M) == q
    clock.check()


def test_criterion_03_dominant_family():
    clock = Clock(30 * MINUTE)
    dims, bad = [], []
    for seed in range(100):
        L = dominant_line(seed)
        assert _quadric_path(L) and _ep_path(L)
        space = solve_second_step(L)
        dims.append(space.dim)
        cand = assemble(L, space.generic(seed))
        rep = verify(cand, "fast", seed=seed)
        if not (rep.ok and tuple(rep.values["hilbert"]) == HILBERT_EXPECTED):
            bad.append(seed)
    n4 = sum(d == 4 for d in dims)
    print(f"  dim 4 on {n4}/100 lines; fast verification failures: {bad}")
    assert n4 >= 95
    assert not bad
    clock.check()


def test_criterion_04_z5_reproduction():
    clock = Clock(60 * MINUTE)
    L = family_z5((1, 3), (2, 5))
    space = solve_second_step(L)
    assert space.projective_dim == 9
    fib = classify_fibers(L)
    assert fib.torsion.rational_count == 2 and fib.b == 2
    assert fib.torsion_group == "Z5"
    cand = assemble(L, space.generic(0))
    rep = verify(cand, "full")
    assert rep.checks["rc_ok"]
    table = bitri_table(cand, (9, 9))
    print(f"  s = {space.projective_dim}, table {table.as_dict()}")
    assert table.as_dict() == Z5_TABLE
    clock.check()


def test_criterion_05_z3_reproduction():
    clock = Clock(60 * MINUTE)
    L = family_z3((1, 2), (1, 2, 3, 4), (1, 1))
    space = solve_second_step(L)
    assert space.projective_dim == 6
    fib = classify_fibers(L)
    assert fib.b == 1 and fib.torsion_group == "Z3"
    cand = assemble(L, space.generic(0))
    table = bitri_table(cand, (9, 9))
    print(f"  s = {space.projective_dim}, table {table.as_dict()}")
    assert table.as_dict() == Z3_TABLE
    clock.check()


def test_criterion_06_standard_complex():
    clock = Clock(10)
    T = ring_T()
    C = standard_complex()
    assert C.b0 == from_rows(T, PRINTED_B0, [0], [6] * 6)
    assert C.b3 == from_rows(T, PRINTED_B3, [6] * 6, [9] * 8)
    assert C.b2 == from_rows(T, PRINTED_B2, [5] * 3, [8] * 8)
    for k in range(4):
        row, K = _koszul_rows(k)
        for t in range(3):
            assert C.b1[k, 3 * k + t] == T.parse(row[t])
            for s in range(3):
                want = T.parse(K[t][s]) if K[t][s] else T.zero()
                assert C.b4[3 * k + t, 3 * k + s] == want
    for maps, numer in zip(C.summand_complexes(), NUMERATORS):
        assert hilbert_numerator_of(IdealOrModule(maps[0])) == numer
    clock.check()


def test_criterion_07_normal_bundle():
    clock = Clock(5 * MINUTE)
    for seed in range(10):
        nb = normal_bundle(dominant_line(1000 + seed))
        assert nb.degrees == [1, 1, 0, 0, 0, 0]
        assert nb.h0 == 8 and nb.h1 == 0
    clock.check()


def test_criterion_08_hyperelliptic_locus():
    clock = Clock(10 * MINUTE)
    gens = list(quadrics().q) + list(i4_a())
    pts = [hyp_param(random_hyp_point(rng_for(seed, 7))) for seed in range(100)]
    for pt in pts:
        assert all(f.evaluate(pt) == 0 for f in gens)
    L = line_through(pts[0], None, seed=1)
    fib = classify_fibers(L)
    assert fib.hyperelliptic_count == 1
    space = solve_second_step(L)
    rep = verify(assemble(L, space.generic(0)), "full")
    print(f"  s = {space.projective_dim}, rc codim {rep.values['rc_codim']}")
    assert rep.checks["rc_ok"]
    clock.check()


def test_criterion_09_oracle_equivalence():
    clock = Clock(5 * MINUTE)
    for seed in range(20):
        L = random_line(500 + seed)
        assert raw_kernel_dim(L) == solve_second_step(L).dim
    clock.check()


def test_criterion_10_property_suite():
    clock = Clock(60 * MINUTE)
    rng = np.random.default_rng(10)
    S = ring_S()
    lines = [random_line(700 + s) for s in range(10)]
    lines += [family_z5((2, 7), (3, 1)), family_z3((3, 1), (2, 2, 5, 1), (1, 4))]
    lines += [random_line(3, through=locus_library()["h1c2_typeA"])]
    for L in lines:
        assert _quadric_path(L) == _ep_path(L) is True

    def form(d):
        f = S.zero()
        for m in S.monomials(d):
            f = f + S.monomial(S.exps(m), int(rng.integers(0, S.p)))
        return f
    for _ in range(5):
        A = GradedMatrix(S, [0, 2], [4, 5, 6], [[form(c - r) for c in (4, 5, 6)] for r in (0, 2)])
        B = GradedMatrix(S, [4, 5, 6], [9], [[form(9 - r)] for r in (4, 5, 6)])
        lam = int(rng.integers(1, S.p))
        C = A @ B
        C.check_degrees()
        assert A.map_entries(lambda f: f.scale(lam)) @ B == C.map_entries(lambda f: f.scale(lam))
    cands = []
    for i, L in enumerate(lines):
        cand = assemble(L, solve_second_step(L).generic(i))
        assert (cand.d1 @ cand.d2).is_zero()
        cands.append(cand)
    rep = verify(cands[0], "full")
    print(f"  Betti totals {rep.values['betti_totals']}")
    assert tuple(rep.values["betti_totals"]) == (8, 26, 26, 8)
    clock.check()
