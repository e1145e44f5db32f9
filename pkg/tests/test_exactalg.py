import numpy as np
import pytest
from hypothesis import given, strategies as st

from godeaux.errors import DegreeError, ZeroFormError
from godeaux.exactalg import (PolyRing, from_rows, inv, is_prime, kernel_basis, matmul_mod,
                              parse_poly, format_poly, rank, ring_S, ring_binary, rref, solve)
from godeaux.exactalg.binary import (bf_div, bf_gcd, bf_mul, bf_roots, bf_squarefree_part,
                                     binary_coeffs)
from godeaux.exactalg.matrix import GradedMatrix, block

P = 32233
small = st.integers(min_value=0, max_value=P - 1)


def test_field_basics():
    assert is_prime(P) and not is_prime(P + 1)
    assert inv(5, P) * 5 % P == 1
    with pytest.raises(ValueError):
        PolyRing(["x"], p=12)


def test_weighted_ring_dimensions():
    S = ring_S()
    # weights (2,2,3,3,3,3): dims of S_0..S_6
    assert [S.dim(d) for d in range(7)] == [1, 0, 2, 4, 3, 8, 14]


def test_parse_format_roundtrip():
    S = ring_S()
    f = S.parse("3*x0^2*y1 - x1*y0*y3 + 5*y2^2")
    assert parse_poly(S, format_poly(f)) == f
    assert f.degrees() == {6, 7, 8}
    assert not f.is_homogeneous()


def test_poly_arithmetic():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    assert (x + y) ** 2 == x * x + (x * y).scale(2) + y * y
    assert (x - x).is_zero()
    assert ((x + y) * (x - y)).evaluate([3, 2]) == 5


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=6))
def test_kernel_is_kernel(rows):
    A = np.array(rows, dtype=np.int64)
    K = kernel_basis(A, P)
    assert K.shape[0] == A.shape[1] - rank(A, P)
    if K.shape[0]:
        assert not np.any(matmul_mod(A, K.T, P))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(small, min_size=4, max_size=4))
def test_solve_consistent(rows, x):
    A = np.array(rows, dtype=np.int64)
    b = matmul_mod(A, np.array(x, dtype=np.int64).reshape(-1, 1), P).ravel()
    y = solve(A, b, P)
    assert y is not None
    assert np.array_equal(matmul_mod(A, y.reshape(-1, 1), P).ravel(), b)


def test_rref_pivots():
    E, piv = rref(np.array([[2, 4, 6], [1, 2, 4]]), P)
    assert piv == [0, 2]
    assert E[0, 0] == 1 and E[1, 2] == 1


def _random_form(R, d, rng):
    f = R.zero()
    for m in R.monomials(d):
        f = f + R.monomial(R.exps(m), int(rng.integers(0, P)))
    return f


@given(st.integers(0, 2**32), st.integers(1, P - 1))
def test_matmul_homogeneity(seed, lam):
    """(lam A) B = lam (A B), products stay graded, and degrees add up."""
    S = ring_S()
    rng = np.random.default_rng(seed)
    A = GradedMatrix(S, [0, 1], [3, 4, 5],
                     [[_random_form(S, c - r, rng) for c in (3, 4, 5)] for r in (0, 1)])
    B = GradedMatrix(S, [3, 4, 5], [8, 9],
                     [[_random_form(S, c - r, rng) for c in (8, 9)] for r in (3, 4, 5)])
    C = A @ B
    C.check_degrees()
    lA = A.map_entries(lambda f: f.scale(lam))
    assert lA @ B == C.map_entries(lambda f: f.scale(lam))
    assert C.rowdeg == (0, 1) and C.coldeg == (8, 9)


def test_matrix_degree_check():
    S = ring_S()
    with pytest.raises(DegreeError):
        from_rows(S, [["x0", "y0"]], [0], [2, 2])


def test_block_and_transpose():
    S = ring_S()
    A = from_rows(S, [["y0", "y1"]], [0], [3, 3])
    M = block(S, [[A], [A]])
    assert M.shape == (2, 2)
    At = A.transpose(6)
    assert At.rowdeg == (3, 3) and At.coldeg == (6,)


def test_binary_gcd_and_roots():
    # (x - 2y)^2 (x + 3y) (x^2 + y^2)  with x = x0, y = x1 (coefficient of x0^(d-i) x1^i)
    a = bf_mul(bf_mul([1, -2], [1, -2], P), [1, 3], P)
    f = bf_mul(a, [1, 0, 1], P)
    r = bf_roots(f, P)
    assert r.degree == 5
    assert sum(m for _, m in r.roots) + r.residual == r.degree
    g = bf_gcd(f, bf_mul([1, 3], [1, 7], P), P)
    assert len(g) == 2
    assert bf_div(f, g, P)
    assert len(bf_squarefree_part(f, P)) - 1 == 4


@given(st.lists(st.tuples(st.integers(0, P - 1), st.integers(1, 3)), min_size=1, max_size=4))
def test_root_multiplicities_account_for_degree(factors):
    f = [1]
    for r, m in factors:
        for _ in range(m):
            f = bf_mul(f, [1, (-r) % P], P)
    f = bf_mul(f, [1, 0, 1], P)     # P = 32233 = 1 mod 4, so x^2 + y^2 splits
    out = bf_roots(f, P)
    assert sum(m for _, m in out.roots) + out.residual == out.degree == len(f) - 1
    i = pow(5, (P - 1) // 4, P)         # 5 is a non-residue mod P
    assert i * i % P == P - 1
    assert out.geometric_count == len({r for r, _ in factors} | {i, P - i})


def test_binary_coeffs_and_zero():
    B = ring_binary()
    f = B.parse("x0^2 - 3*x0*x1")
    assert binary_coeffs(f) == [1, P - 3, 0]
    with pytest.raises(ZeroFormError):
        binary_coeffs(B.zero())


def test_evaluate_accepts_numpy_points():
    S = ring_S()
    f = S.parse("x0^2*y1 + 7")
    pt = np.array([3, 0, 0, 5, 0, 0], dtype=np.int64)
    assert f.evaluate(pt) == f.evaluate([3, 0, 0, 5, 0, 0]) == 52
