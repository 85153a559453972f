"""Symbolic Jordan chain witnesses over K[lam]/(f).

A generator u of rank l yields l vectors whose entries are residue classes
mod f; substituting any root of f for lam would give a classical Jordan
chain, but no root is ever computed.  Construction: with psi^(k) the k-th
power of the divided difference of f reduced mod f(lam), the chain entry is

    p^(k) = psi^(k)(A, lam) f(A)^(l-k) u,

i.e. the mu-coefficients of psi^(k) weight the iterates A^j f(A)^(l-k) u.
The chain relation (A - lam E) p^(k) = p^(k-1) (with p^(0) = 0) holds
exactly in K[lam]/(f) and is what verify_chain checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .krylov import rank_of
from .rlinalg import RatMatrix, Vec, mat_vec, vec
from .rpoly import PolyModF, UnivarPoly, ZERO_POLY, eval_matrix, psi_power_mod


@dataclass(frozen=True)
class LambdaVector:
    """A vector whose entries are residue classes in K[lam]/(f)."""

    f: UnivarPoly
    entries: tuple[PolyModF, ...]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def sub(self, other: "LambdaVector") -> "LambdaVector":
        return LambdaVector(
            self.f, tuple(a.sub(b) for a, b in zip(self.entries, other.entries))
        )

    @classmethod
    def zero(cls, f: UnivarPoly, n: int) -> "LambdaVector":
        return cls(f, tuple(PolyModF(f, ZERO_POLY) for _ in range(n)))


@dataclass(frozen=True)
class SymbolicChain:
    """Chain entries ordered p^(l), p^(l-1), ..., p^(1)."""

    f: UnivarPoly
    vectors: tuple[LambdaVector, ...]

    @property
    def length(self) -> int:
        return len(self.vectors)


def _weighted_iterates(a: RatMatrix, f: UnivarPoly, w: Vec, mu_coeffs) -> LambdaVector:
    # sum_j mu_coeffs[j] * (A^j w), one residue class per coordinate
    n = a.rows
    acc = [ZERO_POLY] * n
    cur = tuple(w)
    for j, cj in enumerate(mu_coeffs):
        if j > 0:
            cur = mat_vec(a, cur)
        if cj.is_zero():
            continue
        for i, x in enumerate(cur):
            if x:
                acc[i] = acc[i] + cj.value * x
    return LambdaVector(f, tuple(PolyModF.make(f, p) for p in acc))


def chain_witness(a: RatMatrix, f: UnivarPoly, u: Sequence[Fraction], ell: int) -> SymbolicChain:
    """The length-l symbolic chain attached to a rank-l generator u.

    The rank of u is verified first; a mismatch raises with the actual rank.
    """
    fa = eval_matrix(f, a)
    u = vec(u)
    actual, _ = rank_of(fa, u, cap=max(ell, 1) + 1)
    if actual != ell:
        raise ValueError(f"vector has rank {actual}, expected {ell}")
    # f(A)^(l-k) u for k = l..1
    ladders = [tuple(u)]
    for _ in range(ell - 1):
        ladders.append(mat_vec(fa, ladders[-1]))
    vectors = []
    for k in range(ell, 0, -1):
        psi_k = psi_power_mod(f, k)
        w = ladders[ell - k]
        vectors.append(_weighted_iterates(a, f, w, psi_k.coeffs_in_mu))
    return SymbolicChain(f, tuple(vectors))


def _apply_shifted(a: RatMatrix, p: LambdaVector) -> LambdaVector:
    # (A - lam E) p, computed entrywise in K[lam]/(f)
    f = p.f
    n = a.rows
    out = []
    for i in range(n):
        acc = ZERO_POLY
        for j in range(n):
            c = a[i, j]
            if c:
                acc = acc + p.entries[j].value * c
        acc = acc - p.entries[i].mul_by_x().value
        out.append(PolyModF.make(f, acc))
    return LambdaVector(f, tuple(out))


def verify_chain(a: RatMatrix, f: UnivarPoly, chain: SymbolicChain) -> bool:
    """True iff (A - lam E) p^(k) = p^(k-1) holds exactly for every entry of
    the chain (p^(0) = 0) and the chain ends in a nonzero eigen-entry.
    An empty chain is vacuously valid."""
    if not chain.vectors:
        return True
    ell = chain.length
    if chain.vectors[-1].is_zero():
        return False
    for idx, p in enumerate(chain.vectors):
        expected = (
            chain.vectors[idx + 1]
            if idx + 1 < ell
            else LambdaVector.zero(f, a.rows)
        )
        if not _apply_shifted(a, p).sub(expected).is_zero():
            return False
    return True


def chain_columns(chain: SymbolicChain, d: int) -> list[Vec]:
    """Expand each chain entry's lam-coordinates into d scalar columns
    (coefficient of lam^t per coordinate); used for independence checks."""
    cols = []
    for vec_ in chain.vectors:
        for t in range(d):
            cols.append(
                tuple(
                    e.value.coeffs[t] if t <= e.value.degree else Fraction(0)
                    for e in vec_.entries
                )
            )
    return cols
