"""Deterministic test-matrix generation with prescribed block structure.

A matrix with factor f_i carrying counts (c_1, ..., c_k) is built as a block
diagonal of companion matrices C(f_i^l), one block per unit of c_l, then
conjugated by a seeded permutation.  The factors themselves come from the
family x^d - x - c with c = 1, 2, 3, ... filtered through a Rabin
irreducibility test modulo small primes (irreducible mod p implies
irreducible over the rationals), so fixtures are reproducible without any
factorization machinery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .rlinalg import RatMatrix
from .rpoly import FactoredCharPoly, UnivarPoly, companion_matrix

_PROBE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def _gf_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _gf_mulmod(a: list[int], b: list[int], f: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % q
    # reduce mod f (f monic of degree d)
    d = len(f) - 1
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(d):
                out[i - d + j] = (out[i - d + j] - c * f[j]) % q
    return _gf_trim(out[:d])


def _gf_powmod_x(e: int, f: list[int], q: int) -> list[int]:
    """x^e mod f over GF(q)."""
    result = [1]
    base = _gf_mulmod([0, 1], [1], f, q)
    while e:
        if e & 1:
            result = _gf_mulmod(result, base, f, q)
        e >>= 1
        if e:
            base = _gf_mulmod(base, base, f, q)
    return result


def _gf_polymod(a: list[int], b: list[int], q: int) -> list[int]:
    inv = pow(b[-1], -1, q)
    bm = [(c * inv) % q for c in b]
    r = list(a)
    while len(r) >= len(bm):
        c = r[-1]
        if c:
            off = len(r) - len(bm)
            for j, cb in enumerate(bm):
                r[off + j] = (r[off + j] - c * cb) % q
        r.pop()
    return _gf_trim(r)


def _gf_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _gf_trim(list(a)), _gf_trim(list(b))
    while b:
        a, b = b, _gf_polymod(a, b, q)
    return a


def _irreducible_mod_p(coeffs: Sequence[int], q: int) -> bool:
    """Rabin's test over GF(q) for a monic integer polynomial."""
    f = [c % q for c in coeffs]
    if f[-1] == 0:
        return False
    d = len(f) - 1
    if d == 1:
        return True
    # x^(q^d) == x mod f
    xqd = _gf_powmod_x(q**d, f, q)
    diff = list(xqd) + [0] * max(0, 2 - len(xqd))
    diff[1] = (diff[1] - 1) % q
    if _gf_trim(diff):
        return False
    # gcd(x^(q^(d/p)) - x, f) == 1 for every prime p | d
    for p in {p for p in (2, 3, 5, 7, 11, 13) if d % p == 0}:
        xe = _gf_powmod_x(q ** (d // p), f, q)
        diff = list(xe) + [0] * max(0, 2 - len(xe))
        diff[1] = (diff[1] - 1) % q
        g = _gf_gcd(f, _gf_trim(diff), q)
        if len(g) - 1 != 0:
            return False
    return True


def probe_irreducible(p: UnivarPoly) -> bool:
    """True if some small prime certifies irreducibility over the rationals;
    a False answer is inconclusive (the probe is sound, not complete)."""
    if p.degree < 1 or not p.is_monic():
        return False
    if p.degree == 1:
        return True
    if any(c.denominator != 1 for c in p.coeffs):
        return False
    coeffs = [int(c) for c in p.coeffs]
    return any(_irreducible_mod_p(coeffs, q) for q in _PROBE_PRIMES)


def deterministic_irreducibles(d: int, count: int) -> list[UnivarPoly]:
    """The first ``count`` certified-irreducible polynomials from the family
    x^d - x - c, c = 1, 2, ... (x - c for d = 1)."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    out: list[UnivarPoly] = []
    c = 1
    while len(out) < count:
        if d == 1:
            p = UnivarPoly([-c, 1])
        else:
            p = UnivarPoly([-c, -1] + [0] * (d - 2) + [1])
        if probe_irreducible(p):
            out.append(p)
        c += 1
        if c > 1000:
            raise RuntimeError(f"no {count} certified irreducibles of degree {d} found")
    return out


@dataclass(frozen=True)
class StructureSpec:
    """Prescribed structure: [(factor, counts), ...] with counts[l-1] blocks
    of size l for each factor."""

    factors: tuple[tuple[UnivarPoly, tuple[int, ...]], ...]

    def __init__(self, factors):
        object.__setattr__(
            self,
            "factors",
            tuple((f, tuple(int(c) for c in counts)) for f, counts in factors),
        )

    def validate(self) -> None:
        for f, counts in self.factors:
            if not f.is_monic() or f.degree < 1:
                raise ValueError("factors must be monic of degree >= 1")
            if not counts or counts[-1] <= 0:
                raise ValueError("counts must end in a positive entry")
            if any(c < 0 for c in counts):
                raise ValueError("counts must be non-negative")

    def size(self) -> int:
        return sum(
            f.degree * sum((i + 1) * c for i, c in enumerate(counts))
            for f, counts in self.factors
        )

    def multiplicities(self) -> list[int]:
        return [sum((i + 1) * c for i, c in enumerate(counts)) for _, counts in self.factors]

    def factored_charpoly(self) -> FactoredCharPoly:
        return FactoredCharPoly(
            [(f, m) for (f, _), m in zip(self.factors, self.multiplicities())]
        )

    def expected_counts(self) -> list[tuple[int, ...]]:
        return [counts for _, counts in self.factors]


def generate(spec: StructureSpec, permutation_seed: int = 0, unimodular: bool = False) -> RatMatrix:
    """Block diagonal of companion matrices per the spec, conjugated by a
    seeded permutation (optionally followed by unimodular shears for stress
    tests; off by default to keep entry sizes as in plain permutations)."""
    spec.validate()
    blocks: list[RatMatrix] = []
    for f, counts in spec.factors:
        for ell in range(len(counts), 0, -1):
            power = f**ell
            for _ in range(counts[ell - 1]):
                blocks.append(companion_matrix(power))
    n = sum(b.rows for b in blocks)
    dense = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                dense[offset + i][offset + j] = b[i, j]
        offset += b.rows
    rng = random.Random(permutation_seed)
    perm = list(range(n))
    rng.shuffle(perm)
    permuted = [[dense[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    if unimodular:
        for _ in range(2 * n):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            c = rng.choice((-2, -1, 1, 2))
            # row shear and its inverse column shear keep the similarity class
            for t in range(n):
                permuted[i][t] += c * permuted[j][t]
            for t in range(n):
                permuted[t][j] -= c * permuted[t][i]
    return RatMatrix(permuted)


_FAMILY_COUNTS = {
    # one size-4 block and eight size-1 blocks, single factor
    "s51": ((8, 0, 0, 1),),
    # one size-2 and one size-10 block, single factor
    "s52": ((0, 1, 0, 0, 0, 0, 0, 0, 0, 1),),
    # two size-6 blocks, single factor
    "s53": ((0, 0, 0, 0, 0, 2),),
    # two factors: {4,0,0,1} plus two size-1 blocks on a second factor
    "s54": ((4, 0, 0, 1), (2,)),
    # six factors: {0,0,0,1,0,1} plus five factors with one size-2 block
    "s55": ((0, 0, 0, 1, 0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)),
}

FAMILY_NAMES = tuple(sorted(_FAMILY_COUNTS))


def benchmark_family(name: str, d: int) -> StructureSpec:
    """The five benchmark families by name (s51..s55), with the factor
    degree d as the size parameter.

    The s54 family gives its second factor degree 2d: with multiplicities
    8 and 2 that is the only degree assignment matching the published sizes
    n = 12d.
    """
    if name not in _FAMILY_COUNTS:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    counts = _FAMILY_COUNTS[name]
    if name == "s54":
        f1 = deterministic_irreducibles(d, 1)[0]
        f2 = deterministic_irreducibles(2 * d, 1)[0]
        return StructureSpec([(f1, counts[0]), (f2, counts[1])])
    polys = deterministic_irreducibles(d, len(counts))
    return StructureSpec(list(zip(polys, counts)))
