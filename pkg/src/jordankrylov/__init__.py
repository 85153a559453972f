"""Exact computation of the Jordan block structure of rational matrices.

The library computes, for each irreducible factor f of the characteristic
polynomial of a square rational matrix A, how many Jordan blocks of each
size are associated to the roots of f.  All arithmetic is exact, everything
happens over the rationals (no algebraic extensions, no eigenvalue
computation, no linear-system solving), and the elimination stops as soon
as the remaining undetermined multiplicity forces the rest of the answer.
"""

from .errors import DimensionError, InconsistencyError, JordanKrylovError, ParseError
from .jkstructure import (
    JordanStructure,
    MethodVariant,
    StructureReport,
    VARIANT_EARLY,
    VARIANT_EARLY_MATRIX,
    VARIANT_FULL,
    all_variants,
    full_elimination,
    jordan_blocks,
    jordan_blocks_main,
    jordan_krylov_elim,
)
from .chains import SymbolicChain, chain_witness, verify_chain
from .genmat import StructureSpec, generate, benchmark_family
from .krylov import ExtendedKGS, extended_krylov_gs, krylov_gs, krylov_gs_full
from .minannih import MinAnnihResult, min_annih_poly, split_f_part
from .oracle import structure_by_ranks
from .rlinalg import ColumnSpace, RatMatrix, mat_mul, mat_vec, rank
from .rpoly import (
    FactoredCharPoly,
    UnivarPoly,
    charpoly,
    companion_matrix,
    eval_matrix,
    eval_matrix_vec,
    psi,
    psi_power_mod,
    squarefree_decompose,
)
from .runstats import RunStats

__version__ = "0.1.0"

__all__ = [
    "ColumnSpace",
    "DimensionError",
    "ExtendedKGS",
    "FactoredCharPoly",
    "InconsistencyError",
    "JordanKrylovError",
    "JordanStructure",
    "MethodVariant",
    "MinAnnihResult",
    "ParseError",
    "RatMatrix",
    "RunStats",
    "StructureReport",
    "StructureSpec",
    "SymbolicChain",
    "UnivarPoly",
    "VARIANT_EARLY",
    "VARIANT_EARLY_MATRIX",
    "VARIANT_FULL",
    "all_variants",
    "chain_witness",
    "charpoly",
    "companion_matrix",
    "eval_matrix",
    "eval_matrix_vec",
    "extended_krylov_gs",
    "full_elimination",
    "generate",
    "jordan_blocks",
    "jordan_blocks_main",
    "jordan_krylov_elim",
    "krylov_gs",
    "krylov_gs_full",
    "mat_mul",
    "mat_vec",
    "min_annih_poly",
    "benchmark_family",
    "psi",
    "psi_power_mod",
    "rank",
    "split_f_part",
    "squarefree_decompose",
    "structure_by_ranks",
    "verify_chain",
]
