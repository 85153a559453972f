"""Tests for deterministic matrix generation and the irreducibility probe."""

import random

import pytest

from jordankrylov.genmat import (
    FAMILY_NAMES,
    StructureSpec,
    deterministic_irreducibles,
    generate,
    benchmark_family,
    probe_irreducible,
)
from jordankrylov.jkstructure import all_variants, jordan_blocks
from jordankrylov.oracle import structure_by_ranks
from jordankrylov.rpoly import ONE_POLY, UnivarPoly, charpoly, poly_gcd

X = UnivarPoly([0, 1])


def test_probe_accepts_known_irreducibles():
    assert probe_irreducible(X**2 + ONE_POLY)
    assert probe_irreducible(X**4 - X - ONE_POLY)
    assert probe_irreducible(X - UnivarPoly([7]))


def test_probe_rejects_reducibles():
    assert not probe_irreducible((X - ONE_POLY) * (X + ONE_POLY))
    # x^4 - x - 2 has the rational root -1
    assert not probe_irreducible(X**4 - X - UnivarPoly([2]))
    assert not probe_irreducible(ONE_POLY)


def test_deterministic_irreducibles_are_coprime():
    for d in (1, 2, 3, 4):
        polys = deterministic_irreducibles(d, 4)
        assert len(polys) == 4
        for p in polys:
            assert p.degree == d and p.is_monic()
        for i in range(4):
            for j in range(i + 1, 4):
                assert poly_gcd(polys[i], polys[j]).is_one()


def test_two_ones_spec():
    spec = StructureSpec([(X - ONE_POLY, (2,))])
    a = generate(spec, 3)
    assert a.rows == 2
    assert a == __import__("jordankrylov.rlinalg", fromlist=["RatMatrix"]).RatMatrix(
        [[1, 0], [0, 1]]
    )


def test_generate_charpoly_matches_spec():
    f = deterministic_irreducibles(2, 1)[0]
    g = deterministic_irreducibles(3, 1)[0]
    spec = StructureSpec([(f, (1, 1)), (g, (2,))])
    a = generate(spec, 11)
    assert a.rows == 2 * 3 + 3 * 2
    chi = spec.factored_charpoly()
    assert charpoly(a) == chi.expand()


def test_generate_structure_roundtrip():
    rng = random.Random(71)
    for seed in range(3):
        f1, f2 = deterministic_irreducibles(2, 2)
        spec = StructureSpec([(f1, (0, 1, 1)), (f2, (2,))])
        a = generate(spec, seed)
        chi = spec.factored_charpoly()
        for idx, (f, counts) in enumerate(spec.factors):
            m = spec.multiplicities()[idx]
            assert structure_by_ranks(a, f, m).counts == counts
            for var in all_variants():
                assert jordan_blocks(a, chi, idx, variant=var).counts == counts


def test_generate_is_seed_deterministic():
    spec = benchmark_family("s51", 1)
    assert generate(spec, 9) == generate(spec, 9)
    assert generate(spec, 9) != generate(spec, 10)


def test_unimodular_flag_keeps_similarity_class():
    f = deterministic_irreducibles(2, 1)[0]
    spec = StructureSpec([(f, (1, 1))])
    a = generate(spec, 13, unimodular=True)
    assert charpoly(a) == spec.factored_charpoly().expand()
    assert structure_by_ranks(a, f, 3).counts == (1, 1)


def test_invalid_specs_rejected():
    with pytest.raises(ValueError):
        StructureSpec([(X, (1, 0))]).validate()  # counts end in zero
    with pytest.raises(ValueError):
        StructureSpec([(UnivarPoly([2, 2]), (1,))]).validate()  # not monic


def test_family_sizes():
    assert FAMILY_NAMES == ("s51", "s52", "s53", "s54", "s55")
    assert benchmark_family("s51", 4).size() == 48
    assert benchmark_family("s52", 4).size() == 48
    assert benchmark_family("s53", 4).size() == 48
    assert benchmark_family("s54", 4).size() == 48
    assert benchmark_family("s55", 2).size() == 40
    assert benchmark_family("s55", 4).size() == 80
    with pytest.raises(ValueError):
        benchmark_family("s99", 4)


def test_family_counts():
    assert benchmark_family("s51", 4).expected_counts() == [(8, 0, 0, 1)]
    assert benchmark_family("s54", 4).expected_counts() == [(4, 0, 0, 1), (2,)]
    s55 = benchmark_family("s55", 2).expected_counts()
    assert s55[0] == (0, 0, 0, 1, 0, 1) and s55[1:] == [(0, 1)] * 5
