import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from godeaux.construct import (N_UNKNOWNS, ResolutionCandidate, assemble, identity_residuals,
                               raw_kernel_dim, solve_second_step, structured_system, verify)
from godeaux.construct.verify import HILBERT_EXPECTED
from godeaux.errors import DerivationError
from godeaux.exactalg.matrix import GradedMatrix
from godeaux.qgeom import Line, locus_library, random_line

P = 32233


def test_structured_shape(lines):
    assert structured_system(lines[0]).shape == (156, N_UNKNOWNS)


def test_general_lines_have_four_dim_space(lines):
    for L in lines:
        assert solve_second_step(L).dim == 4


def test_structured_matches_raw_oracle(lines, z5_line, z3_line):
    for L in lines[:3] + [z5_line, z3_line]:
        assert raw_kernel_dim(L) == solve_second_step(L).dim


def test_special_families(z5_line, z3_line):
    assert solve_second_step(z5_line).projective_dim == 9
    assert solve_second_step(z3_line).projective_dim == 6


def test_off_q_line_rejected():
    L = Line(np.random.default_rng(1).integers(0, P, size=(2, 12)))
    with pytest.raises(DerivationError):
        solve_second_step(L)


@given(st.lists(st.integers(0, P - 1), min_size=4, max_size=4))
def test_kernel_vectors_satisfy_identities(lines, coeffs):
    space = solve_second_step(lines[1])
    v = space.combination(coeffs)
    assert space.contains(v)
    assert all(r.is_zero() for r in identity_residuals(lines[1], v))


@given(st.integers(0, 2**31))
def test_non_solutions_leave_residuals(lines, seed):
    space = solve_second_step(lines[1])
    v = np.random.default_rng(seed).integers(0, P, size=N_UNKNOWNS)
    if space.contains(v):
        return
    assert any(not r.is_zero() for r in identity_residuals(lines[1], v))


@given(st.integers(1, P - 1), st.integers(0, P - 1), st.integers(0, P - 1),
       st.integers(1, P - 1))
def test_dimension_invariant_under_row_operations(lines, a, b, c, d):
    g = np.array([[a, b], [c, d]], dtype=np.int64)
    if (a * d - b * c) % P == 0:
        return
    L = lines[2]
    L2 = Line((g @ L.stiefel) % P)
    assert solve_second_step(L2).dim == solve_second_step(L).dim


def test_candidate_flags_and_hilbert(candidate):
    assert candidate.flags["complex_ok"] and candidate.flags["skew_ok"]
    assert candidate.flags["restriction_ok"]
    assert candidate.meta["extra_dim"] == 1
    rep = verify(candidate, "fast")
    assert rep.ok and tuple(rep.values["hilbert"]) == HILBERT_EXPECTED
    assert candidate.flags["hilbert_ok"]


def test_candidate_json_roundtrip(candidate):
    again = ResolutionCandidate.from_json(candidate.to_json())
    assert again.d1 == candidate.d1 and again.d2 == candidate.d2
    assert again.solution == candidate.solution


def test_zero_solution_assembles(lines):
    cand = assemble(lines[3])
    assert cand.flags["complex_ok"]
    assert verify(cand, "fast").checks["hilbert_ok"]


@settings(max_examples=4)
@given(st.integers(2, P - 1))
def test_flags_invariant_under_scaling(lines, lam):
    L = lines[4]
    sol = solve_second_step(L).generic(1)
    base = assemble(L, sol)
    scaled = assemble(L, (lam * sol) % P)
    rb, rs = verify(base, "fast"), verify(scaled, "fast")
    assert rb.checks == rs.checks and rs.ok


def test_corrupted_d2_is_caught(candidate):
    d2 = candidate.d2
    S = d2.ring
    ent = [list(r) for r in d2.entries]
    bump = S.parse("x0*y0")                      # degree 5, like the o block
    ent[0][1] = ent[0][1] + bump
    ent[1][0] = ent[1][0] - bump                 # keep it skew
    bad = ResolutionCandidate(candidate.d1, GradedMatrix(S, d2.rowdeg, d2.coldeg, ent),
                              candidate.line, candidate.solution)
    rep = verify(bad, "fast")
    assert rep.checks["skew_ok"]
    assert not rep.checks["complex_ok"]
    assert not rep.values["product_symbolic_zero"]


def test_ring_condition_fails_on_row0_b_locus():
    L = random_line(0, through=locus_library()["h0c1_row0_b"])
    space = solve_second_step(L)
    assert space.projective_dim == 7
    rep = verify(assemble(L, space.generic(0)), "full")
    assert rep.checks["complex_ok"] and not rep.checks["rc_ok"]
    assert rep.values["rc_codim"] == 4
