"""The structure engine: how many Jordan blocks of each size belong to one
irreducible factor, computed by rank-descending elimination over Krylov
ladders with early termination.

State of the elimination:

* W is the span of the rank-1 witnesses of all accepted generators, kept in
  reduced column-echelon form.
* S_l holds, per rank l, one column paired with each W column; the pairing
  invariant is W[j] = f(A)^(l-1) S_l[j], so reduction coefficients computed
  against W transfer to S_l and the reduced pair (r', r) again satisfies
  r' = f(A)^(l-1) r.  Descending a rank maps S_l through f(A), which
  preserves the invariant.
* m is the undetermined multiplicity: the part of the factor's multiplicity
  not yet assigned to blocks.  Once m <= 1 the whole remaining structure is
  forced (c_1 = m) and elimination stops; ranks above the current m can hold
  no further blocks, which justifies jumping straight to rank m.

A processed entry (v, l, v') either contributes a new block (its reduced
witness is outside W), is demoted to the true rank of its residual, or dies.
Demotion re-derives the witness by applying f(A) to the residual, because
the old witness was just reduced to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from time import perf_counter
from typing import Callable, Sequence

from .errors import InconsistencyError
from .krylov import (
    ExtEntry,
    ExtendedKGS,
    extended_krylov_gs,
    krylov_gs,
    krylov_gs_full,
    rank_of,
)
from .rlinalg import ColumnSpace, RatMatrix, Vec, mat_vec, simultaneous_reduce, vec_is_zero
from .rpoly import FactoredCharPoly, UnivarPoly, eval_matrix
from .runstats import RunStats

VARIANT_FULL = "full-elimination"
VARIANT_EARLY = "early-termination"
VARIANT_EARLY_MATRIX = "early-termination-matrix-form"

_CLI_VARIANTS = {
    "full": VARIANT_FULL,
    "alg6": VARIANT_EARLY,
    "alg6-matrix": VARIANT_EARLY_MATRIX,
}


@dataclass(frozen=True)
class MethodVariant:
    """One elimination method crossed with the preprocessing toggle."""

    kind: str = VARIANT_EARLY
    preprocess: bool = False

    def __post_init__(self):
        if self.kind not in (VARIANT_FULL, VARIANT_EARLY, VARIANT_EARLY_MATRIX):
            raise ValueError(f"unknown method kind {self.kind!r}")

    @classmethod
    def from_cli(cls, token: str, preprocess: bool) -> "MethodVariant":
        if token not in _CLI_VARIANTS:
            raise ValueError(f"unknown variant {token!r}")
        return cls(_CLI_VARIANTS[token], preprocess)


def all_variants() -> list[MethodVariant]:
    return [
        MethodVariant(kind, pre)
        for kind in (VARIANT_FULL, VARIANT_EARLY, VARIANT_EARLY_MATRIX)
        for pre in (False, True)
    ]


@dataclass(frozen=True)
class JordanStructure:
    """counts[i] is the number of Jordan blocks of size i+1."""

    counts: tuple[int, ...]

    def __init__(self, counts: Sequence[int]):
        object.__setattr__(self, "counts", tuple(int(c) for c in counts))

    @property
    def lbar(self) -> int:
        return len(self.counts)

    def multiplicity(self) -> int:
        return sum((i + 1) * c for i, c in enumerate(self.counts))

    def __iter__(self):
        return iter(self.counts)


class EliminationState:
    """Mutable state threaded through one factor's elimination."""

    def __init__(
        self,
        a: RatMatrix,
        d: int,
        m: int | None,
        vt: ExtendedKGS,
        lbar: int,
        stats: RunStats | None = None,
    ):
        self.a = a
        self.n = a.rows
        self.d = d
        self.m = m  # None: full elimination, which never consults it
        self.vt = vt
        self.lhat = lbar
        self.counts = [0] * lbar
        self.w_space = ColumnSpace(self.n)
        self.s_by_rank: dict[int, list[list[Fraction]]] = {}
        self.basis_by_rank: dict[int, list[Vec]] = {}
        self.stats = stats or RunStats()
        self.finished = False

    @property
    def structure(self) -> JordanStructure:
        return JordanStructure(self.counts)

    def materialize(self, fa: RatMatrix, from_rank: int, to_rank: int) -> None:
        """S_to = f(A)^(from-to) S_from, leaving S_from in place."""
        cols = [list(c) for c in self.s_by_rank[from_rank]]
        for _ in range(from_rank - to_rank):
            cols = [list(mat_vec(fa, c)) for c in cols]
        self.s_by_rank[to_rank] = cols

    def drop_s_above(self, ell: int) -> None:
        for k in [k for k in self.s_by_rank if k > ell]:
            del self.s_by_rank[k]

    def accept(self, fa: RatMatrix, ell: int, r: Vec, r_prime: Vec) -> None:
        """Record r as a new rank-l generator and, unless that finished the
        structure, extend the pairing by the Krylov blocks of (r, r')."""
        self.basis_by_rank.setdefault(ell, []).append(r)
        self.counts[ell - 1] += 1
        self.stats.count_accept(ell)
        if self.m is not None:
            self.m -= ell
            if self.m < 0:
                raise InconsistencyError(
                    "elimination",
                    f"undetermined multiplicity went negative at rank {ell}; "
                    "the factor or its multiplicity is wrong",
                )
            if self.m <= 1:
                self.counts[0] += self.m
                self.m = 0
                self.finished = True
                return
        # stale higher-rank S copies can never be used again after an
        # acceptance below them; drop them so the pairing stays aligned
        self.drop_s_above(ell)
        s_cols = self.s_by_rank.setdefault(ell, [])
        w_col = list(r_prime)
        s_col = list(r)
        for _ in range(self.d):
            self.w_space.insert_paired(w_col, [(s_cols, s_col)])
            w_col = list(mat_vec(self.a, w_col))
            s_col = list(mat_vec(self.a, s_col))


def jordan_krylov_elim(state: EliminationState, fa: RatMatrix, ell: int) -> EliminationState:
    """Drain the rank-l queue: accept, demote, or drop each entry."""
    state.s_by_rank.setdefault(ell, [])
    while not state.finished:
        entry = state.vt.pop(ell)
        if entry is None:
            break
        state.stats.count_reduction(ell)
        r_prime, r = simultaneous_reduce(state.w_space, state.s_by_rank[ell], entry.witness, entry.v)
        if not vec_is_zero(r_prime):
            state.accept(fa, ell, r, r_prime)
        elif ell > 1 and not vec_is_zero(r):
            new_rank, witness = rank_of(fa, r, cap=ell)
            state.vt.add(ExtEntry(v=r, rank=new_rank, witness=witness))
    return state


def matrix_form_elim(state: EliminationState, fa: RatMatrix, ell: int) -> EliminationState:
    """Batch-reduce every queued rank-l witness against the current W before
    the per-entry loop; the per-entry pass then only sees columns W acquires
    during this rank, so the result is identical to the sequential form."""
    queue = state.vt.by_rank.get(ell)
    if queue:
        s_cols = state.s_by_rank.setdefault(ell, [])
        batch = []
        while queue:
            e = queue.popleft()
            r_prime, r = simultaneous_reduce(state.w_space, s_cols, e.witness, e.v)
            batch.append(ExtEntry(v=r, rank=ell, witness=r_prime))
        queue.extend(batch)
    return jordan_krylov_elim(state, fa, ell)


def jordan_blocks_loop(
    state: EliminationState,
    fa: RatMatrix,
    ell: int,
    elim: Callable[[EliminationState, RatMatrix, int], EliminationState] = jordan_krylov_elim,
) -> JordanStructure:
    """Descending-rank loop with lazy S materialization, the jump to
    min(m, l-1), and the catch-up sweep that flushes skipped ranks when the
    jump target yields nothing."""
    while ell > 1 and not state.finished:
        if ell not in state.s_by_rank and ell < state.lhat:
            state.materialize(fa, from_rank=state.lhat, to_rank=ell)
        elim(state, fa, ell)
        if state.finished:
            break
        state.materialize(fa, from_rank=ell, to_rank=ell - 1)
        if state.lhat == ell:
            state.lhat = ell - 1
        if not state.basis_by_rank.get(ell) and ell < state.lhat:
            for ell_prime in range(state.lhat, ell - 1, -1):
                elim(state, fa, ell_prime)
                if state.finished:
                    return state.structure
                state.materialize(fa, from_rank=ell_prime, to_rank=ell_prime - 1)
            state.lhat = ell - 1
        ell = min(state.m, ell - 1)
    if not state.finished:
        state.counts[0] += state.m
        state.m = 0
        state.finished = True
    return state.structure


def run_structure_engine(
    a: RatMatrix,
    fa: RatMatrix,
    vt: ExtendedKGS,
    m: int,
    d: int,
    kind: str = VARIANT_EARLY,
    stats: RunStats | None = None,
) -> EliminationState:
    """Seed with one generator of the highest rank and run the loop; handles
    the closed-form exits (single-size structures, m exhausted by the seed)."""
    stats = stats or RunStats()
    lbar = vt.lbar
    if lbar == 0:
        if m != 0:
            raise InconsistencyError(
                "structure", f"no generators found but multiplicity is {m}"
            )
        state = EliminationState(a, d, 0, vt, 0, stats)
        state.finished = True
        return state
    state = EliminationState(a, d, m, vt, lbar, stats)
    if lbar == 1:
        state.counts[0] = m
        state.m = 0
        state.finished = True
        return state
    state.m = m - lbar
    if state.m < 0:
        raise InconsistencyError(
            "structure", f"highest rank {lbar} exceeds multiplicity {m}"
        )
    if state.m <= 1:
        state.counts[lbar - 1] = 1
        state.counts[0] = state.m
        state.m = 0
        state.finished = True
        return state
    seed = vt.pop(lbar)
    state.basis_by_rank[lbar] = [seed.v]
    state.counts[lbar - 1] = 1
    stats.count_accept(lbar)
    state.s_by_rank[lbar] = []
    w_col = list(seed.witness)
    s_col = list(seed.v)
    for _ in range(d):
        state.w_space.insert_paired(w_col, [(state.s_by_rank[lbar], s_col)])
        w_col = list(mat_vec(a, w_col))
        s_col = list(mat_vec(a, s_col))
    elim = matrix_form_elim if kind == VARIANT_EARLY_MATRIX else jordan_krylov_elim
    jordan_blocks_loop(state, fa, min(state.lhat, state.m), elim)
    return state


def jordan_blocks_main(
    a: RatMatrix,
    fa: RatMatrix,
    vt: ExtendedKGS,
    m: int,
    d: int,
    kind: str = VARIANT_EARLY,
    stats: RunStats | None = None,
) -> JordanStructure:
    return run_structure_engine(a, fa, vt, m, d, kind, stats).structure


def full_elimination(
    a: RatMatrix,
    f: UnivarPoly,
    vt: ExtendedKGS,
    fa: RatMatrix | None = None,
    stats: RunStats | None = None,
) -> JordanStructure:
    """Exhaustive elimination over every rank lbar..1; never consults the
    multiplicity, so the counts are whatever the eliminations produced."""
    state = full_elimination_state(a, f, vt, fa=fa, stats=stats)
    return state.structure


def full_elimination_state(
    a: RatMatrix,
    f: UnivarPoly,
    vt: ExtendedKGS,
    fa: RatMatrix | None = None,
    stats: RunStats | None = None,
) -> EliminationState:
    if fa is None:
        fa = eval_matrix(f, a)
    stats = stats or RunStats()
    lbar = vt.lbar
    state = EliminationState(a, f.degree, None, vt, lbar, stats)
    if lbar == 0:
        state.finished = True
        return state
    state.s_by_rank[lbar] = []
    for ell in range(lbar, 0, -1):
        if ell < lbar:
            state.materialize(fa, from_rank=ell + 1, to_rank=ell)
        jordan_krylov_elim(state, fa, ell)
    state.finished = True
    return state


@dataclass
class StructureReport:
    """Machine-readable per-factor result."""

    factor: UnivarPoly
    d: int
    m: int
    lbar: int
    structure: JordanStructure
    basis_by_rank: dict[int, list[Vec]]
    leftover_by_rank: dict[int, int]
    stats: RunStats

    @property
    def counts(self) -> tuple[int, ...]:
        return self.structure.counts

    def to_json_dict(self, with_timings: bool = True) -> dict:
        out = {
            "factor": {"degree": self.d, "coeffs": [str(c) for c in self.factor.coeffs]},
            "d": self.d,
            "m": self.m,
            "lbar": self.lbar,
            "counts": list(self.counts),
        }
        if with_timings:
            out["timings"] = self.stats.timing_row()
            out["annih_polys"] = self.stats.annih_polys
        return out


def jordan_blocks(
    a: RatMatrix,
    chi: FactoredCharPoly,
    f_index: int = 0,
    basis: Sequence[Sequence[Fraction]] | None = None,
    variant: MethodVariant = MethodVariant(),
    fa: RatMatrix | None = None,
    stats: RunStats | None = None,
) -> StructureReport:
    """Whole pipeline for one factor: generating set, rank tagging,
    elimination; validates the block-size sum against the multiplicity."""
    if chi.total_degree() != a.rows:
        raise InconsistencyError(
            "input",
            f"factored characteristic polynomial has degree {chi.total_degree()}, "
            f"matrix has size {a.rows}",
        )
    f, m = chi[f_index]
    stats = stats or RunStats()
    t0 = perf_counter()
    if fa is None:
        with stats.phase("f1A"):
            fa = eval_matrix(f, a)
    if variant.kind == VARIANT_FULL:
        v = krylov_gs_full(a, f, basis, stats=stats)
    else:
        v = krylov_gs(a, f, m, basis, fa=fa, stats=stats)
    vt = extended_krylov_gs(a, f, v, variant.preprocess, fa=fa, m_cap=m, stats=stats)
    with stats.phase("jkelim"):
        if variant.kind == VARIANT_FULL:
            state = full_elimination_state(a, f, vt, fa=fa, stats=stats)
        else:
            state = run_structure_engine(a, fa, vt, m, f.degree, variant.kind, stats)
    structure = state.structure
    if structure.multiplicity() != m:
        raise InconsistencyError(
            "structure",
            f"block sizes sum to {structure.multiplicity()} but the factor "
            f"multiplicity is {m}: sizes-sum identity violated",
        )
    if structure.lbar >= 1 and structure.counts and structure.counts[-1] < 1:
        raise InconsistencyError(
            "structure", "no block of the maximal size; rank tagging is inconsistent"
        )
    stats.seconds["total"] += perf_counter() - t0
    return StructureReport(
        factor=f,
        d=f.degree,
        m=m,
        lbar=structure.lbar,
        structure=structure,
        basis_by_rank=state.basis_by_rank,
        leftover_by_rank=vt.counts_by_rank(),
        stats=stats,
    )
