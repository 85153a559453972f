"""Krylov generating sets of the kernel of f(A)^lbar.

Two constructions are provided.  The cheap one first projects each basis
vector e through f(A)^m; whenever the projection vanishes no annihilator
computation is needed at all, which is where the early-termination pipeline
saves most of its annihilator work.  The exhaustive one computes the full
minimal annihilating polynomial of every basis vector and splits off the
f-part; it backs the full-elimination method.  Both emit the same set
{g_e(A) e : f divides the annihilator of e}.

The extended generating set re-tags every generator with its rank
(the least l with f(A)^l v = 0) and the witness f(A)^(l-1) v, by repeatedly
applying f(A) to the whole generator matrix and recording columns as they
die.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, InconsistencyError
from .minannih import min_annih_poly, min_annih_split
from .rlinalg import (
    ColumnSpace,
    RatMatrix,
    Vec,
    column_reduce_matrix,
    mat_mul,
    mat_pow,
    mat_vec,
    unit_vec,
    vec,
    vec_is_zero,
)
from .rpoly import UnivarPoly, eval_matrix, eval_matrix_vec
from .runstats import RunStats

KrylovGS = list[Vec]


@dataclass(frozen=True)
class ExtEntry:
    """A generator v of rank l together with its witness f(A)^(l-1) v."""

    v: Vec
    rank: int
    witness: Vec


class ExtendedKGS:
    """Generators grouped by rank; queues are FIFO so runs are deterministic.

    lbar is fixed at construction: rank recomputation during elimination only
    ever moves entries down.
    """

    def __init__(self, entries: Sequence[ExtEntry] = (), lbar: int | None = None):
        self.by_rank: dict[int, deque[ExtEntry]] = {}
        for e in entries:
            self.add(e)
        self.lbar = max(self.by_rank, default=0) if lbar is None else lbar

    def add(self, entry: ExtEntry) -> None:
        self.by_rank.setdefault(entry.rank, deque()).append(entry)

    def pop(self, ell: int) -> ExtEntry | None:
        q = self.by_rank.get(ell)
        return q.popleft() if q else None

    def count(self, ell: int) -> int:
        return len(self.by_rank.get(ell, ()))

    def counts_by_rank(self) -> dict[int, int]:
        return {ell: len(q) for ell, q in self.by_rank.items() if q}

    def total(self) -> int:
        return sum(len(q) for q in self.by_rank.values())

    def entries(self) -> list[ExtEntry]:
        return [e for ell in sorted(self.by_rank) for e in self.by_rank[ell]]


def krylov_block(a: RatMatrix, u: Sequence[Fraction], d: int) -> list[Vec]:
    """The d columns u, Au, ..., A^(d-1) u."""
    if d < 1:
        raise ValueError("block length must be >= 1")
    if a.cols != len(u):
        raise DimensionError("vector length mismatch")
    cols = [vec(u)]
    for _ in range(d - 1):
        cols.append(mat_vec(a, cols[-1]))
    return cols


def rank_of(fa: RatMatrix, v: Sequence[Fraction], cap: int) -> tuple[int, Vec | None]:
    """(l, f(A)^(l-1) v) for the least l with f(A)^l v = 0; (0, None) for v = 0.

    Raises if v survives cap applications, which means f(A) does not act
    nilpotently on v (wrong factor or multiplicity).
    """
    w = vec(v)
    if vec_is_zero(w):
        return 0, None
    k = 0
    while True:
        nxt = mat_vec(fa, w)
        k += 1
        if vec_is_zero(nxt):
            return k, w
        if k >= cap:
            raise InconsistencyError(
                "krylov", f"vector not annihilated by f(A)^{cap}; factor data is wrong"
            )
        w = nxt


def krylov_gs(
    a: RatMatrix,
    f: UnivarPoly,
    m: int,
    basis: Sequence[Sequence[Fraction]] | None = None,
    fa: RatMatrix | None = None,
    stats: RunStats | None = None,
) -> KrylovGS:
    """Generating set via projection: e' = f(A)^m e per basis vector, the
    annihilator g of e' only when e' is nonzero, then v = g(A) e.

    Zero vectors are dropped; otherwise the output follows basis order.
    """
    n = a.rows
    stats = stats or RunStats()
    with stats.phase("annihpol"):
        if fa is None:
            fa = eval_matrix(f, a)
        proj = mat_pow(fa, m, stop_at_zero=True)
        proj_zero = proj.is_zero()
        g_parts: list[UnivarPoly | None] = []
        basis_vecs = [vec(e) for e in basis] if basis is not None else None
        for i in range(n if basis_vecs is None else len(basis_vecs)):
            if proj_zero:
                g_parts.append(None)  # g = 1
                continue
            e_proj = proj.col(i) if basis_vecs is None else mat_vec(proj, basis_vecs[i])
            if vec_is_zero(e_proj):
                g_parts.append(None)
            else:
                stats.count_annih()
                g_parts.append(min_annih_poly(a, e_proj))
    with stats.phase("krylovgs"):
        out: KrylovGS = []
        for i, g in enumerate(g_parts):
            e = unit_vec(n, i) if basis_vecs is None else basis_vecs[i]
            v = e if g is None else eval_matrix_vec(g, a, e)
            if not vec_is_zero(v):
                out.append(v)
    return out


def krylov_gs_full(
    a: RatMatrix,
    f: UnivarPoly,
    basis: Sequence[Sequence[Fraction]] | None = None,
    stats: RunStats | None = None,
) -> KrylovGS:
    """Generating set via the full minimal annihilating polynomial of every
    basis vector: pi = f^l * g, keep v = g(A) e whenever l > 0."""
    n = a.rows
    stats = stats or RunStats()
    basis_vecs = (
        [vec(e) for e in basis] if basis is not None else [unit_vec(n, i) for i in range(n)]
    )
    splits = []
    with stats.phase("annihpol"):
        for e in basis_vecs:
            stats.count_annih()
            splits.append(min_annih_split(a, e, f))
    with stats.phase("krylovgs"):
        out: KrylovGS = []
        for e, res in zip(basis_vecs, splits):
            if res.f_exponent > 0:
                v = e if res.g_part.is_one() else eval_matrix_vec(res.g_part, a, e)
                if not vec_is_zero(v):
                    out.append(v)
    return out


def extended_krylov_gs(
    a: RatMatrix,
    f: UnivarPoly,
    v: KrylovGS,
    preprocess: bool = False,
    fa: RatMatrix | None = None,
    m_cap: int | None = None,
    stats: RunStats | None = None,
) -> ExtendedKGS:
    """Rank-tag the generating set: iterate V'' = f(A) V' and record
    (original column, l, current column) whenever a column dies at step l.

    With preprocess on, V is first replaced by its reduced column-echelon
    form, so the recorded entries refer to the reduced columns.
    """
    stats = stats or RunStats()
    if fa is None:
        fa = eval_matrix(f, a)
    cap = m_cap if m_cap is not None else a.rows
    if preprocess:
        with stats.phase("preprocessing"):
            vmat = column_reduce_matrix(RatMatrix.from_columns(v, rows=a.rows))
    else:
        vmat = RatMatrix.from_columns(v, rows=a.rows)
    with stats.phase("krylovgs"):
        out = ExtendedKGS()
        originals = vmat.columns()
        cur = vmat
        ell = 0
        lbar = 0
        while not cur.is_zero():
            nxt = mat_mul(fa, cur)
            ell += 1
            if ell > cap:
                raise InconsistencyError(
                    "extended-krylov",
                    f"generators survive f(A)^{cap}; f is not a factor of multiplicity {cap}",
                )
            lbar = ell
            for j in range(cur.cols):
                col = cur.col(j)
                if vec_is_zero(nxt.col(j)) and not vec_is_zero(col):
                    out.add(ExtEntry(v=originals[j], rank=ell, witness=col))
            cur = nxt
        out.lbar = lbar
    return out


def generating_set_span(
    a: RatMatrix, fa: RatMatrix, d: int, v: KrylovGS, cap: int
) -> ColumnSpace:
    """Column space of the union of the Krylov ladders of the generators:
    for each v, the blocks of f(A)^j v for j below the rank of v."""
    space = ColumnSpace(a.rows)
    for u in v:
        k, _ = rank_of(fa, u, cap)
        w = tuple(u)
        for _ in range(k):
            for c in krylov_block(a, w, d):
                space.insert(c)
            w = mat_vec(fa, w)
    return space
