import numpy as np
import pytest

from godeaux.exactalg import A_NAMES, ring_Sa, ring_T

P = 32233
from godeaux.exactalg.matrix import from_rows
from godeaux.godeaux_data import (frozen_relations, pfaffian4, pfaffian_matrices, printed_l1,
                                  standard_complex)
from godeaux.godeaux_data.derive import ALL_A
from godeaux.godeaux_data.reference import PRINTED_QUADRICS
from godeaux.groebner import IdealOrModule
from godeaux.groebner.invariants import hilbert_numerator_of
from godeaux.groebner.monomial import series_coefficients

# the printed differentials, transcribed separately from the package tables
PRINTED_B0 = [["y0*y1", "y0*y2", "y1*y2", "y0*y3", "y1*y3", "y2*y3"]]
PRINTED_B3 = [
    ["-y2", 0, "-y3", 0, 0, 0, 0, 0],
    ["y1", "-y1", 0, 0, "-y3", 0, 0, 0],
    [0, "y0", 0, 0, 0, 0, "-y3", 0],
    [0, 0, "y1", "-y1", "y2", "-y2", 0, 0],
    [0, 0, 0, "y0", 0, 0, "y2", "-y2"],
    [0, 0, 0, 0, 0, "y0", 0, "y1"],
]
PRINTED_B2 = [
    ["-y3", 0, "y2", 0, "-y1", 0, 0, 0],
    ["-y3", "-y3", "y2", "y2", 0, 0, "-y0", 0],
    [0, 0, 0, "-y2", 0, "y1", 0, "-y0"],
]


def _koszul_rows(i):
    u, v, w = [f"y{j}" for j in range(4) if j != i]
    return [u, v, w], [[0, w, "-" + v], ["-" + w, 0, u], [v, "-" + u, 0]]


def test_standard_complex_matches_printed():
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
                want = K[t][s]
                got = C.b4[3 * k + t, 3 * k + s]
                assert got == (T.parse(want) if want else T.zero())
        assert all(C.b1[k, j].is_zero() for j in range(12) if j // 3 != k)
    assert C.check()


NUMERATORS = [
    {0: 1, 6: -6, 9: 8, 12: -3},
    {4: 4, 7: -12, 10: 12, 13: -4},
    {5: 3, 8: -8, 11: 6, 17: -1},
]
SERIES = [{0: 1, 3: 3}, {4: 4}, {5: 3, 8: 1}]


@pytest.mark.parametrize("i", range(3))
def test_summand_hilbert_numerators(i):
    C = standard_complex()
    maps = C.summand_complexes()[i]
    # route 1: alternating ranks of the complex
    alt: dict[int, int] = {}
    degs = [maps[0].rowdeg] + [m.coldeg for m in maps]
    for h, ds in enumerate(degs):
        for d in ds:
            alt[d] = alt.get(d, 0) + (-1) ** h
    assert {k: v for k, v in alt.items() if v} == NUMERATORS[i]
    # route 2: Groebner basis of the cokernel of the first map
    N = hilbert_numerator_of(IdealOrModule(maps[0]))
    assert N == NUMERATORS[i]
    # dividing by (1 - t^3)^3 leaves the finite series of the Artinian reduction
    lo = min(N)
    vals = series_coefficients({k - lo: v for k, v in N.items()}, (3, 3, 3), 20)
    assert {d + lo: v for d, v in enumerate(vals) if v} == SERIES[i]


def test_pfaffians_are_the_quadrics():
    R = ring_Sa()
    for M, q in zip(pfaffian_matrices(R), PRINTED_QUADRICS):
        assert pfaffian4(M) == R.parse(q)


def test_forced_zero_pattern(relations):
    assert sorted(relations.forced_zero) == sorted(set(ALL_A) - set(A_NAMES))
    assert len(relations.forced_zero) == 12


def test_quadrics_match_up_to_sign(relations):
    R = relations.ring
    for q, txt in zip(relations.quadrics, PRINTED_QUADRICS):
        ref = R.parse(txt)
        assert q == ref or q == -ref


def test_l1_is_printed_block_sum(relations):
    assert relations.l1.entries == printed_l1(relations.ring)


def test_block_shapes(relations):
    assert len(relations.o_vars) == 12 and len(relations.c_vars) == 20
    assert relations.l1.shape == (12, 12)
    assert relations.l2.shape == (30, 20)
    assert relations.qblock.shape == (30, 12)


def test_frozen_equals_derived(relations):
    frozen = frozen_relations()
    assert frozen.to_json() == relations.to_json()
    assert frozen.l1 == relations.l1 and frozen.quadrics == relations.quadrics


def test_json_roundtrip(relations):
    from godeaux.godeaux_data import RelationSystem
    again = RelationSystem.from_json(relations.to_json())
    assert again.to_json() == relations.to_json()


def _evaluate(M, pt):
    return np.array([[f.evaluate(pt) if f.terms else 0 for f in row] for row in M.entries],
                    dtype=np.int64)


def test_l2_ranks_off_and_on_q(relations):
    from godeaux.exactalg import rank
    from godeaux.qgeom import sample_point
    rng = np.random.default_rng(0)
    # full rank 20 at general points of A^12; on Q the kernel has rank 2 and the
    # cokernel rank 12, so the rank drops to 18
    assert all(rank(_evaluate(relations.l2, rng.integers(0, P, 12)), P) == 20 for _ in range(3))
    assert all(rank(_evaluate(relations.l2, sample_point(None, s)), P) == 18 for s in range(4))
