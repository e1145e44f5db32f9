"""The fixed complexes over T = k[y0..y3] that every degeneration restricts to."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..exactalg.field import DEFAULT_PRIME
from ..exactalg.matrix import GradedMatrix, from_rows
from ..exactalg.poly import ring_T

# column j of b0 and of the a-block <-> pair of y-indices
PAIRS = ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))

B0_ROWS = [["y0*y1", "y0*y2", "y1*y2", "y0*y3", "y1*y3", "y2*y3"]]

B3_ROWS = [
    ["-y2", 0, "-y3", 0, 0, 0, 0, 0],
    ["y1", "-y1", 0, 0, "-y3", 0, 0, 0],
    [0, "y0", 0, 0, 0, 0, "-y3", 0],
    [0, 0, "y1", "-y1", "y2", "-y2", 0, 0],
    [0, 0, 0, "y0", 0, 0, "y2", "-y2"],
    [0, 0, 0, 0, 0, "y0", 0, "y1"],
]

B2_ROWS = [
    ["-y3", 0, "y2", 0, "-y1", 0, 0, 0],
    ["-y3", "-y3", "y2", "y2", 0, 0, "-y0", 0],
    [0, 0, 0, "-y2", 0, "y1", 0, "-y0"],
]

# J_k = ideal of the coordinate point P_k; its generators in increasing order
J_GENS = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))


@dataclass(frozen=True)
class StandardComplex:
    b0: GradedMatrix
    b1: GradedMatrix
    b2: GradedMatrix
    b3: GradedMatrix
    b4: GradedMatrix

    @property
    def ring(self):
        return self.b0.ring

    def summand_complexes(self) -> list[list[GradedMatrix]]:
        """The three T-complexes F(0), F(1), F(2) as lists of consecutive maps."""
        b2t = self.b2.transpose(shift=17)   # 8x3, rows in degree 9, columns 12
        return [[self.b0, self.b3, b2t],
                [self.b1, self.b4, self.b1.transpose(shift=17)],
                [self.b2, -self.b3.transpose(shift=17), self.b0.transpose(shift=17)]]

    def check(self) -> bool:
        for maps in self.summand_complexes():
            for f, g in zip(maps, maps[1:]):
                if not (f @ g).is_zero():
                    return False
        return self.b4.is_skew()


def koszul_block(R, idx):
    u, v, w = (R.var(f"y{i}") for i in idx)
    z = R.zero()
    return [[z, w, -v], [-w, z, u], [v, -u, z]]


@lru_cache(maxsize=None)
def standard_complex(p: int = DEFAULT_PRIME) -> StandardComplex:
    T = ring_T(p)
    z = T.zero()
    b0 = from_rows(T, B0_ROWS, [0], [6] * 6)
    b3 = from_rows(T, B3_ROWS, [6] * 6, [9] * 8)
    b2 = from_rows(T, B2_ROWS, [5] * 3, [8] * 8)
    b1 = [[z] * 12 for _ in range(4)]
    b4 = [[z] * 12 for _ in range(12)]
    for k, idx in enumerate(J_GENS):
        for t, i in enumerate(idx):
            b1[k][3 * k + t] = T.var(f"y{i}")
        K = koszul_block(T, idx)
        for r in range(3):
            for c in range(3):
                b4[3 * k + r][3 * k + c] = K[r][c]
    return StandardComplex(
        b0=b0, b1=GradedMatrix(T, [4] * 4, [7] * 12, b1), b2=b2, b3=b3,
        b4=GradedMatrix(T, [7] * 12, [10] * 12, b4))
