import random

import pytest

from jordankrylov.rlinalg import RatMatrix
from jordankrylov.rpoly import UnivarPoly


@pytest.fixture
def j2_j1():
    """Nilpotent block diagonal: one 2-chain and one 1-chain for f = x."""
    return RatMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])


@pytest.fixture
def x_poly():
    return UnivarPoly([0, 1])


def random_int_matrix(rng: random.Random, n: int, span: int = 3) -> RatMatrix:
    return RatMatrix([[rng.randint(-span, span) for _ in range(n)] for _ in range(n)])


def block_diag(*blocks: RatMatrix) -> RatMatrix:
    n = sum(b.rows for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b[i, j]
        off += b.rows
    return RatMatrix(out)


def jordan_nilpotent(size: int) -> RatMatrix:
    """Single nilpotent Jordan block of the given size."""
    return RatMatrix(
        [[1 if j == i + 1 else 0 for j in range(size)] for i in range(size)]
    )
