import numpy as np
import pytest
from hypothesis import given, strategies as st

from godeaux.errors import ParamError, StiefelError
from godeaux.exactalg import A_NAMES
from godeaux.qgeom import (DISPLAY_ORDER, Line, apply_s4_line, apply_s4_point, family_z3,
                           family_z5, from_display, hyp_param, jacobian_rank, line_in_q,
                           locus_library, quadrics, random_hyp_point, random_line, rng_for,
                           sample_point, to_display)
from godeaux.qgeom.core import _ep_path, _quadric_path
from godeaux.qgeom.families import HypParamPoint
from godeaux.qgeom.loci import i4_a

P = 32233
seeds = st.integers(0, 10**6)


def on_q(pt):
    return all(q.evaluate(pt) == 0 for q in quadrics().q)


def test_display_order_is_reversal():
    assert DISPLAY_ORDER == tuple(reversed(A_NAMES))
    v = list(range(12))
    assert from_display(to_display(v)) == v


@given(seeds)
def test_random_line_dual_path(seed):
    L = random_line(seed)
    assert _quadric_path(L) and _ep_path(L)
    assert line_in_q(L)


@given(seeds)
def test_sampled_points_are_smooth_points_of_q(seed):
    pt = sample_point(None, seed)
    assert on_q(pt)
    assert jacobian_rank(pt) == 4


def test_dual_path_rejects_lines_off_q():
    rng = np.random.default_rng(0)
    L = Line(rng.integers(0, P, size=(2, 12)))
    assert not _quadric_path(L) and not _ep_path(L)
    assert not line_in_q(L)


def test_line_validation_and_json():
    with pytest.raises(StiefelError):
        Line(np.zeros((2, 12), dtype=np.int64))
    with pytest.raises(StiefelError):
        Line(np.ones((3, 12), dtype=np.int64))
    L = random_line(1)
    assert np.array_equal(Line.from_json(L.to_json()).stiefel, L.stiefel)


@given(seeds, st.permutations(range(4)))
def test_s4_preserves_q(seed, sigma):
    pt = sample_point(None, seed)
    assert on_q(apply_s4_point(tuple(sigma), pt))
    L = random_line(seed % 50)
    assert line_in_q(apply_s4_line(tuple(sigma), L))


@given(st.tuples(st.integers(1, P - 1), st.integers(1, P - 1)),
       st.tuples(st.integers(1, P - 1), st.integers(1, P - 1)))
def test_z5_family_in_q(pp, qq):
    assert line_in_q(family_z5(pp, qq))


@given(st.lists(st.integers(1, P - 1), min_size=8, max_size=8))
def test_z3_family_in_q(v):
    try:
        L = family_z3(v[:2], v[2:6], v[6:])
    except ParamError:
        return
    assert line_in_q(L)


@given(seeds)
def test_hyp_points_lie_on_hyp_locus(seed):
    pt = hyp_param(random_hyp_point(rng_for(seed, 7)))
    assert on_q(pt)
    assert all(f.evaluate(pt) == 0 for f in i4_a())


def test_hyp_param_rejects_zero_pairs():
    with pytest.raises(ParamError):
        HypParamPoint((0, 0), (1, 1), (1, 1), (1, 1), (1, 1))


def test_locus_library_keys_and_sampling():
    lib = locus_library()
    assert lib.names() == sorted(["e3_linear_0", "e3_linear_1", "e3_linear_2", "h0c1_row0_a",
                                  "h0c1_row0_b", "h1c2_typeA", "h1c2_typeB", "hyp", "i3e",
                                  "i4a"])
    for key in ("e3_linear_0", "h1c2_typeA", "h0c1_row0_b", "hyp"):
        pt = lib[key].sample(3)
        assert lib[key].contains(pt)
        L = random_line(3, through=lib[key])
        assert line_in_q(L) and lib[key].meets(L)


def test_general_line_misses_special_loci():
    lib = locus_library()
    L = random_line(0)
    assert not lib["e3_linear_1"].meets(L)
    assert not lib["h0c1_row0_b"].meets(L)
