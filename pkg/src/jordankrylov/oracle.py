"""Independent brute-force structure oracle.

The count of blocks of size l per root of f follows from the classical
second-difference identity on r_k = rank(f(A)^k):

    c_l = (r_{l-1} - 2 r_l + r_{l+1}) / deg f.

This module forms the powers explicitly and column-reduces them; it is
deliberately naive and shares nothing with the elimination engine beyond
the exact-arithmetic primitives, so it can serve as its oracle.
"""

from __future__ import annotations

from .errors import InconsistencyError
from .jkstructure import JordanStructure
from .rlinalg import RatMatrix, mat_mul, rank
from .rpoly import UnivarPoly, eval_matrix


def structure_by_ranks(a: RatMatrix, f: UnivarPoly, m: int) -> JordanStructure:
    """Block counts for f from exact ranks of f(A)^k; raises on any
    non-exact division or negative count (wrong f or m)."""
    if m < 0:
        raise ValueError("multiplicity must be non-negative")
    d = f.degree
    if d < 1:
        raise ValueError("factor must have degree >= 1")
    fa = eval_matrix(f, a)
    n = a.rows
    ranks = [n]
    power = RatMatrix.identity(n)
    lbar = 0
    while True:
        power = mat_mul(power, fa)
        ranks.append(rank(power))
        k = len(ranks) - 1
        if ranks[k] == ranks[k - 1]:
            lbar = k - 1
            break
        if k > m:
            raise InconsistencyError(
                "oracle",
                f"kernel of f(A)^k still growing at k = {k} > m = {m}; "
                "factor data is wrong",
            )
    ranks.append(ranks[-1])  # r_{lbar+1} = r_lbar once stabilized
    counts = []
    for ell in range(1, lbar + 1):
        num = ranks[ell - 1] - 2 * ranks[ell] + ranks[ell + 1]
        if num % d != 0:
            raise InconsistencyError(
                "oracle", f"rank second difference {num} not divisible by degree {d}"
            )
        c = num // d
        if c < 0:
            raise InconsistencyError("oracle", f"negative block count at size {ell}")
        counts.append(c)
    structure = JordanStructure(counts)
    if structure.multiplicity() != m:
        raise InconsistencyError(
            "oracle",
            f"block sizes sum to {structure.multiplicity()}, expected multiplicity {m}",
        )
    return structure
