"""Printed data used as cross-checks for the derived relations."""
from __future__ import annotations

from ..exactalg.poly import PolyRing, WPoly

# the four quadrics q0..q3 cutting out Q in P^11
PRINTED_QUADRICS = (
    "a_1_1_2*a_1_1_3 - a_2_1_2*a_2_2_3 + a_3_1_3*a_3_2_3",
    "a_0_0_2*a_0_0_3 - a_3_0_3*a_3_2_3 + a_2_0_2*a_2_2_3",
    "a_1_0_1*a_1_1_3 - a_0_0_1*a_0_0_3 + a_3_0_3*a_3_1_3",
    "a_0_0_1*a_0_0_2 - a_1_0_1*a_1_1_2 + a_2_0_2*a_2_1_2",
)

# upper triangles (m01, m02, m03, m12, m13, m23) of the skew 4x4 matrices M_i
# whose Pfaffians m01*m23 - m02*m13 + m03*m12 are the quadrics
PFAFFIAN_UPPER = (
    ("a_1_1_2", "a_2_1_2", "a_3_1_3", "a_3_2_3", "a_2_2_3", "a_1_1_3"),
    ("a_0_0_2", "a_3_0_3", "a_2_0_2", "a_2_2_3", "a_3_2_3", "a_0_0_3"),
    ("a_1_0_1", "a_0_0_1", "a_3_0_3", "a_3_1_3", "a_0_0_3", "a_1_1_3"),
    ("a_0_0_1", "a_1_0_1", "a_2_0_2", "a_2_1_2", "a_1_1_2", "a_0_0_2"),
)

# l1 is the direct sum of these skew 3x3 blocks, given by (u01, u02, u12)
L1_BLOCKS = (
    ("a_3_1_3", "a_3_0_3", "a_3_2_3"),
    ("a_2_1_2", "a_2_0_2", "a_2_2_3"),
    ("a_1_1_3", "a_1_0_1", "a_1_1_2"),
    ("a_0_0_2", "a_0_0_1", "a_0_0_3"),
)

# entries (row, col, y-index) of the gauge-reduced o matrix, upper triangle
O_NORMAL_FORM = (
    (0, 1, 0), (0, 2, 1), (0, 3, 0), (0, 4, 1), (1, 2, 2), (1, 3, 0),
    (1, 5, 2), (2, 4, 1), (2, 5, 2), (3, 4, 3), (3, 5, 3), (4, 5, 3),
)


def skew_from_upper(R: PolyRing, upper, n: int) -> list[list[WPoly]]:
    M = [[R.zero()] * n for _ in range(n)]
    t = 0
    for i in range(n):
        for j in range(i + 1, n):
            f = R.parse(upper[t]) if isinstance(upper[t], str) else upper[t]
            M[i][j] = f
            M[j][i] = -f
            t += 1
    return M


def pfaffian4(M) -> WPoly:
    return M[0][1] * M[2][3] - M[0][2] * M[1][3] + M[0][3] * M[1][2]


def pfaffian_matrices(R: PolyRing) -> list[list[list[WPoly]]]:
    return [skew_from_upper(R, u, 4) for u in PFAFFIAN_UPPER]


def printed_l1(R: PolyRing) -> list[list[WPoly]]:
    out = [[R.zero()] * 12 for _ in range(12)]
    for b, u in enumerate(L1_BLOCKS):
        B = skew_from_upper(R, u, 3)
        for i in range(3):
            for j in range(3):
                out[3 * b + i][3 * b + j] = B[i][j]
    return out
