"""Deterministic minimal annihilating polynomial of a vector.

The monic generator of {g : g(A) u = 0} is found by inserting the Krylov
iterates u, Au, A^2 u, ... into a column space until the first rejection;
alongside each reduced iterate we track which polynomial combination of the
raw iterates it represents, so the dependency at the first rejection is the
annihilating polynomial itself.  No linear system is solved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError
from .rlinalg import RatMatrix, frac, mat_vec
from .rpoly import ONE_POLY, UnivarPoly


@dataclass(frozen=True)
class MinAnnihResult:
    """pi = f^f_exponent * g_part with gcd(f, g_part) = 1."""

    pi: UnivarPoly
    f_exponent: int
    g_part: UnivarPoly


def min_annih_poly(a: RatMatrix, u: Sequence[Fraction]) -> UnivarPoly:
    """Monic generator of the annihilator ideal of u; 1 for u = 0."""
    if not a.is_square():
        raise DimensionError("minimal annihilating polynomial of a non-square matrix")
    if a.cols != len(u):
        raise DimensionError(f"vector length {len(u)} != matrix size {a.rows}")
    # basis entries: (reduced iterate, its pivot row, polynomial combination)
    basis: list[tuple[list[Fraction], int, list[Fraction]]] = []
    w = [frac(x) for x in u]
    k = 0
    while True:
        r = list(w)
        # q tracks r as a combination of u, Au, ..., A^k u; starts as x^k
        q = [Fraction(0)] * k + [Fraction(1)]
        for b, p, bq in basis:
            c = r[p]
            if c:
                for i, x in enumerate(b):
                    if x:
                        r[i] -= c * x
                for i, x in enumerate(bq):
                    if x:
                        q[i] -= c * x
        pivot = next((i for i, x in enumerate(r) if x), -1)
        if pivot < 0:
            return UnivarPoly(q)  # leading coefficient is still 1
        inv = 1 / r[pivot]
        if inv != 1:
            r = [x * inv for x in r]
            q = [x * inv for x in q]
        basis.append((r, pivot, q))
        w = list(mat_vec(a, w))
        k += 1


def split_f_part(pi: UnivarPoly, f: UnivarPoly) -> MinAnnihResult:
    """Split pi into f^l * g with the largest possible l; g is monic and
    coprime to f."""
    if f.degree < 1:
        raise ValueError("factor must have degree >= 1")
    if not f.is_monic():
        raise ValueError("factor must be monic")
    if pi.is_zero():
        raise ValueError("cannot split the zero polynomial")
    g = pi.monic()
    ell = 0
    while True:
        q, r = divmod(g, f)
        if not r.is_zero():
            break
        g = q
        ell += 1
    return MinAnnihResult(pi=pi.monic(), f_exponent=ell, g_part=g.monic())


def min_annih_split(a: RatMatrix, u: Sequence[Fraction], f: UnivarPoly) -> MinAnnihResult:
    """Minimal annihilating polynomial of u, split against the factor f."""
    return split_f_part(min_annih_poly(a, u), f)


def minimal_polynomial(a: RatMatrix) -> UnivarPoly:
    """Minimal polynomial of A as the lcm of the basis annihilators.

    Test helper; the structure pipeline never needs it.
    """
    from .rlinalg import unit_vec
    from .rpoly import poly_lcm

    out = ONE_POLY
    for i in range(a.rows):
        out = poly_lcm(out, min_annih_poly(a, unit_vec(a.rows, i)))
    return out
