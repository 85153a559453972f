"""Tests for polynomial arithmetic, charpoly, squarefree parts and psi."""

import random
from fractions import Fraction

import pytest

from jordankrylov.errors import ParseError
from jordankrylov.rlinalg import RatMatrix, mat_mul, mat_vec
from jordankrylov.rpoly import (
    FactoredCharPoly,
    ONE_POLY,
    UnivarPoly,
    charpoly,
    companion_matrix,
    eval_matrix,
    eval_matrix_vec,
    format_factored,
    format_poly,
    parse_factored,
    parse_poly,
    poly_gcd,
    psi,
    psi_power_mod,
    squarefree_decompose,
)

X = UnivarPoly([0, 1])


def rand_poly(rng, max_deg, span=4):
    d = rng.randint(0, max_deg)
    cs = [rng.randint(-span, span) for _ in range(d)] + [rng.randint(1, span)]
    return UnivarPoly(cs)


def test_poly_basic_arith():
    p = X**2 - UnivarPoly([1])
    q = X - ONE_POLY
    assert p + q == UnivarPoly([-2, 1, 1])
    assert p - q == UnivarPoly([0, -1, 1])
    assert q * q == UnivarPoly([1, -2, 1])
    quo, rem = divmod(X**3, X**2)
    assert quo == X and rem.is_zero()
    with pytest.raises(ZeroDivisionError):
        divmod(p, UnivarPoly())


def test_poly_gcd():
    assert poly_gcd(X**2 - ONE_POLY, X - ONE_POLY) == X - ONE_POLY
    assert poly_gcd(X**2 + ONE_POLY, X**2 - UnivarPoly([2])) == ONE_POLY
    # gcd is monic even for non-monic inputs
    assert poly_gcd(UnivarPoly([2, 2]), UnivarPoly([4, 4])) == X + ONE_POLY


def test_divmod_random_roundtrip():
    rng = random.Random(2)
    for _ in range(30):
        a = rand_poly(rng, 6)
        b = rand_poly(rng, 3)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_charpoly_examples():
    assert charpoly(RatMatrix([[2, 1], [0, 2]])) == UnivarPoly([4, -4, 1])
    assert charpoly(RatMatrix([[0, 1], [1, 0]])) == UnivarPoly([-1, 0, 1])
    f = UnivarPoly([3, -1, 2, 1])
    assert charpoly(companion_matrix(f)) == f


def test_charpoly_det_trace_consistency():
    rng = random.Random(4)
    for _ in range(10):
        n = 4
        m = RatMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        p = charpoly(m)
        assert p.is_monic() and p.degree == n
        trace = sum(m[i, i] for i in range(n))
        assert p.coeffs[n - 1] == -trace


def test_charpoly_similarity_invariant():
    rng = random.Random(8)
    for _ in range(8):
        n = 5
        m = RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        perm = list(range(n))
        rng.shuffle(perm)
        conj = RatMatrix([[m[perm[i], perm[j]] for j in range(n)] for i in range(n)])
        assert charpoly(conj) == charpoly(m)


def test_squarefree_examples():
    p = (X - ONE_POLY) ** 2 * (X + UnivarPoly([2]))
    assert squarefree_decompose(p) == [(X + UnivarPoly([2]), 1), (X - ONE_POLY, 2)]
    q = X**2 + ONE_POLY
    assert squarefree_decompose(q) == [(q, 1)]
    c = X**2 - UnivarPoly([2])
    assert squarefree_decompose(c**3) == [(c, 3)]


def test_squarefree_parts_coprime_and_rebuild():
    rng = random.Random(6)
    for _ in range(15):
        p = ONE_POLY
        for _ in range(rng.randint(1, 3)):
            p = p * rand_poly(rng, 2) ** rng.randint(1, 3)
        if p.degree < 1:
            continue
        parts = squarefree_decompose(p)
        rebuilt = ONE_POLY
        for q, m in parts:
            rebuilt = rebuilt * q**m
            assert poly_gcd(q, q.derivative()).degree == 0
        assert rebuilt == p.monic()
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                assert poly_gcd(parts[i][0], parts[j][0]).degree == 0


def test_eval_matrix_examples():
    a = RatMatrix([[1, 2], [3, 4]])
    assert eval_matrix(ONE_POLY, a) == RatMatrix.identity(2)
    assert eval_matrix(X, a) == a
    f = X**2 - UnivarPoly([2])
    c = companion_matrix(f)
    assert eval_matrix(f, c) == RatMatrix.zero(2, 2)


def test_eval_matrix_multiplicative():
    rng = random.Random(10)
    for _ in range(8):
        a = RatMatrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        f = rand_poly(rng, 3)
        g = rand_poly(rng, 3)
        assert eval_matrix(f * g, a) == mat_mul(eval_matrix(f, a), eval_matrix(g, a))


def test_eval_matrix_vec_matches_matrix_route():
    rng = random.Random(12)
    a = RatMatrix([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
    v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
    assert eval_matrix_vec(ONE_POLY, a, v) == v
    assert eval_matrix_vec(X, a, v) == mat_vec(a, v)
    for _ in range(10):
        p = rand_poly(rng, 5)
        assert eval_matrix_vec(p, a, v) == mat_vec(eval_matrix(p, a), v)


def test_psi_examples():
    for f, expected in [
        (UnivarPoly([0, 0, 1]), ["x", "1"]),
        (UnivarPoly([-2, 0, 1]), ["x", "1"]),
        (UnivarPoly([0, 0, 0, 1]), ["x^2", "x", "1"]),
    ]:
        got = [str(c.value) for c in psi(f).coeffs_in_mu]
        assert got == expected
    with pytest.raises(ValueError):
        psi(ONE_POLY)


def test_psi_reconstruction_identity():
    # psi(mu, lam) * (mu - lam) + f(lam) - f(mu) == 0, expanded in mu over K[lam]
    rng = random.Random(14)
    for _ in range(20):
        f = rand_poly(rng, 6)
        if f.degree < 1:
            continue
        coeffs = [c.value for c in psi(f).coeffs_in_mu]
        # product with (mu - lam): coefficient of mu^j is c_{j-1} - lam*c_j
        prod = []
        for j in range(len(coeffs) + 1):
            lo = coeffs[j - 1] if j - 1 >= 0 else UnivarPoly()
            hi = coeffs[j].shift_up() if j < len(coeffs) else UnivarPoly()
            prod.append(lo - hi)
        # add f(lam) at mu^0 and subtract f at its mu-degree positions
        prod[0] = prod[0] + f
        for j, c in enumerate(f.coeffs):
            prod[j] = prod[j] - UnivarPoly([c])
        assert all(p.is_zero() for p in prod)


def test_psi_power_mod_examples():
    got = [str(c.value) for c in psi_power_mod(UnivarPoly([0, 0, 1]), 2).coeffs_in_mu]
    assert got == ["0", "2*x", "1"]
    got = [str(c.value) for c in psi_power_mod(UnivarPoly([-2, 0, 1]), 2).coeffs_in_mu]
    assert got == ["2", "2*x", "1"]
    got = [str(c.value) for c in psi_power_mod(UnivarPoly([0, 0, 0, 1]), 1).coeffs_in_mu]
    assert got == ["x^2", "x", "1"]
    with pytest.raises(ValueError):
        psi_power_mod(UnivarPoly([0, 0, 1]), 0)


def test_psi_power_mod_degrees_bounded():
    rng = random.Random(16)
    for _ in range(10):
        f = rand_poly(rng, 5)
        if f.degree < 1:
            continue
        for k in (1, 2, 3):
            pk = psi_power_mod(f, k)
            assert all(c.value.degree < f.degree for c in pk.coeffs_in_mu)
            assert pk.mu_degree <= k * (f.degree - 1)


def test_poly_text_roundtrip():
    p = UnivarPoly([Fraction(1, 2), 0, -3])
    assert parse_poly(format_poly(p)) == p
    assert format_poly(UnivarPoly([1, 0, 1])) == "2 1 0 1"
    with pytest.raises(ParseError):
        parse_poly("2 1 0")
    with pytest.raises(ParseError):
        parse_poly("1 1 0")  # stated degree 1 but leading coefficient zero


def test_factored_roundtrip_and_validate():
    fc = FactoredCharPoly([(X**2 + ONE_POLY, 2), (X - ONE_POLY, 1)])
    fc.validate(n=5)
    assert parse_factored(format_factored(fc)).factors == fc.factors
    bad = FactoredCharPoly([(X - ONE_POLY, 1), (X**2 - ONE_POLY, 1)])
    with pytest.raises(ValueError):
        bad.validate()
    with pytest.raises(ParseError):
        parse_factored("not a factor line\n")
