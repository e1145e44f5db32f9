import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from godeaux.classify import (bitri_table, classify, classify_fibers, normal_bundle,
                              normal_bundle_of)
from godeaux.construct import assemble, solve_second_step
from godeaux.errors import DegenerateLineError, SingularityError
from godeaux.exactalg import PolyRing
from godeaux.qgeom import Line, family_z5, locus_library, random_line

P = 32233


def test_z5_fibers(z5_line):
    f = classify_fibers(z5_line)
    assert f.b == 2 and f.torsion_group == "Z5"
    assert sorted(pt for pt, _ in f.torsion.roots) == [(0, 1), (1, 0)]


def test_z3_fibers(z3_line):
    f = classify_fibers(z3_line)
    assert f.b == 1 and f.torsion_group == "Z3"


def test_general_line_has_no_special_fibers(lines):
    for L in lines[:3]:
        f = classify_fibers(L)
        assert f.b == 0 and f.torsion_group == "trivial"
        assert f.hyperelliptic_count == 0


def test_hyperelliptic_line():
    L = random_line(5, through=locus_library()["hyp"])
    assert classify_fibers(L).hyperelliptic_count == 1


def test_line_in_rank_two_locus_is_degenerate():
    lib = locus_library()
    L = random_line(2, through=lib["e3_linear_0"], second=lib["e3_linear_0"])
    with pytest.raises(DegenerateLineError):
        classify_fibers(L)


@settings(max_examples=8)
@given(st.integers(1, P - 1), st.integers(0, P - 1), st.integers(0, P - 1),
       st.integers(1, P - 1), st.sampled_from(["z5", "hyp"]))
def test_counts_invariant_under_row_operations(a, b, c, d, which):
    if (a * d - b * c) % P == 0:
        return
    L = family_z5((1, 3), (2, 5)) if which == "z5" else random_line(
        5, through=locus_library()["hyp"])
    L2 = Line((np.array([[a, b], [c, d]]) @ L.stiefel) % P)
    f1, f2 = classify_fibers(L), classify_fibers(L2)
    assert (f1.b, f1.hyperelliptic_count, f1.torsion_group) == (
        f2.b, f2.hyperelliptic_count, f2.torsion_group)


def test_torsion_roots_account_for_degree(z5_line, z3_line):
    for L in (z5_line, z3_line):
        t = classify_fibers(L).torsion
        assert sum(m for _, m in t.roots) + t.residual == t.degree


@settings(max_examples=5)
@given(st.integers(0, 10**6))
def test_normal_bundle_of_general_lines(seed):
    nb = normal_bundle(random_line(seed))
    assert nb.degrees == [1, 1, 0, 0, 0, 0]
    assert nb.degree == 2 and nb.h0 == 8 and nb.h1 == 0


def test_normal_bundle_of_line_on_quadric_surface():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    q = R.parse("x0*x3 - x1*x2")
    nb = normal_bundle_of([[1, 0, 0, 0], [0, 1, 0, 0]], [q], R, P)
    assert nb.degrees == [0]
    # in P^3 itself the normal bundle of a line is O(1)^2
    assert normal_bundle_of([[1, 0, 0, 0], [0, 1, 0, 0]], [], R, P).degrees == [1, 1]


def test_normal_bundle_detects_singular_points():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    cone = R.parse("x0*x1 - x2^2")            # vertex (0:0:0:1)
    with pytest.raises(SingularityError):
        normal_bundle_of([[1, 0, 0, 0], [0, 0, 0, 1]], [cone], R, P)


def test_bidegree_table_truncated(z5_line):
    cand = assemble(z5_line, solve_second_step(z5_line).generic(0))
    T = bitri_table(cand, (2, 5))
    assert T.as_dict() == {(1, 2): 1, (1, 5): 1, (2, 3): 1}
    assert T.bound_limited
    rep = classify(z5_line, cand, (2, 5))
    js = rep.to_json()
    assert js["torsion_group"] == "Z5" and js["bound_limited"]
    assert js["normal_bundle"] == [1, 1, 0, 0, 0, 0]
