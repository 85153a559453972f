"""Univariate polynomials over the rationals, plus the machinery the
structure pipeline needs on top of them: characteristic polynomials
(division-free), squarefree decomposition (Yun), Horner evaluation at a
matrix, and the symmetric divided difference

    psi_f(mu, lam) = (f(mu) - f(lam)) / (mu - lam)

together with its powers reduced mod f(lam), which drive the symbolic Jordan
chain construction without any algebraic extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError
from .rlinalg import RatMatrix, Vec, frac, mat_mul, mat_vec, vec_add, vec_scale

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UnivarPoly:
    """Dense univariate polynomial, coefficients ascending, exact."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "UnivarPoly":
        return cls([c])

    @classmethod
    def x_power(cls, k: int, c=1) -> "UnivarPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (_ONE,)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "UnivarPoly":
        if self.is_zero() or self.is_monic():
            return self
        inv = 1 / self.coeffs[-1]
        return UnivarPoly([c * inv for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, UnivarPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "UnivarPoly") -> "UnivarPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UnivarPoly(out)

    def __sub__(self, other: "UnivarPoly") -> "UnivarPoly":
        out = list(self.coeffs) + [_ZERO] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return UnivarPoly(out)

    def __neg__(self) -> "UnivarPoly":
        return UnivarPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, UnivarPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return UnivarPoly()
            out = [_ZERO] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca:
                    for j, cb in enumerate(b):
                        if cb:
                            out[i + j] += ca * cb
            return UnivarPoly(out)
        return UnivarPoly([c * frac(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __divmod__(self, other: "UnivarPoly") -> tuple["UnivarPoly", "UnivarPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return UnivarPoly(), self
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc
        quo = [_ZERO] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                q = c / lb
                quo[i - db] = q
                for j, cb in enumerate(other.coeffs):
                    if cb:
                        rem[i - db + j] -= q * cb
        return UnivarPoly(quo), UnivarPoly(rem)

    def __floordiv__(self, other: "UnivarPoly") -> "UnivarPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UnivarPoly") -> "UnivarPoly":
        return divmod(self, other)[1]

    def __pow__(self, k: int) -> "UnivarPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = UnivarPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self) -> "UnivarPoly":
        return UnivarPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x) -> Fraction:
        x = frac(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_up(self, k: int = 1) -> "UnivarPoly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return UnivarPoly((_ZERO,) * k + self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                xi = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    parts.append(xi)
                elif c == -1:
                    parts.append(f"-{xi}")
                else:
                    parts.append(f"{c}*{xi}")
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s

    def __repr__(self) -> str:
        return f"UnivarPoly({self})"


ZERO_POLY = UnivarPoly()
ONE_POLY = UnivarPoly([1])
X_POLY = UnivarPoly([0, 1])


def poly_gcd(a: UnivarPoly, b: UnivarPoly) -> UnivarPoly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: UnivarPoly, b: UnivarPoly) -> UnivarPoly:
    if a.is_zero() or b.is_zero():
        return ZERO_POLY
    return ((a * b) // poly_gcd(a, b)).monic()


def charpoly(a: RatMatrix) -> UnivarPoly:
    """Characteristic polynomial det(xI - A), monic of degree n.

    Division-free (Berkowitz): the coefficient vector of each leading
    principal submatrix is obtained from the previous one through a Toeplitz
    convolution built from R * B^i * C scalars, so integer input stays in
    the integers throughout.
    """
    if not a.is_square():
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = a.rows
    # descending coefficients of det(xI - M) for growing leading blocks M
    desc: list[Fraction] = [_ONE]
    for k in range(1, n + 1):
        diag = a[k - 1, k - 1]
        trans = [_ONE, -diag]
        if k > 1:
            r = [a[k - 1, j] for j in range(k - 1)]
            c = [a[i, k - 1] for i in range(k - 1)]
            b_rows = [[a[i, j] for j in range(k - 1)] for i in range(k - 1)]
            cur = c
            for _ in range(k - 1):
                trans.append(-sum(x * y for x, y in zip(r, cur)))
                cur = [sum(brow[t] * cur[t] for t in range(k - 1)) for brow in b_rows]
        trans = trans[: k + 1]
        new = [
            sum(trans[i - j] * desc[j] for j in range(max(0, i - len(trans) + 1), min(i, k - 1) + 1))
            for i in range(k + 1)
        ]
        desc = new
    return UnivarPoly(list(reversed(desc)))


def squarefree_decompose(p: UnivarPoly) -> list[tuple[UnivarPoly, int]]:
    """Yun's algorithm: returns [(part, multiplicity), ...] with the parts
    monic, squarefree and pairwise coprime, and
    prod(part^mult) = p / lc(p).  Raises on the zero polynomial."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    out: list[tuple[UnivarPoly, int]] = []
    if g.degree == 0:
        return [(p, 1)]
    c = p // g
    d = dp // g - c.derivative()
    i = 1
    while c.degree > 0:
        h = poly_gcd(c, d)
        if h.degree > 0:
            out.append((h, i))
        c = c // h
        d = d // h - c.derivative()
        i += 1
    return out


def eval_matrix(p: UnivarPoly, a: RatMatrix) -> RatMatrix:
    """p(A) by Horner's scheme."""
    if not a.is_square():
        raise DimensionError("polynomial of a non-square matrix")
    n = a.rows
    if p.is_zero():
        return RatMatrix.zero(n, n)
    cs = p.coeffs
    acc = RatMatrix.identity(n).scale(cs[-1])
    for c in reversed(cs[:-1]):
        acc = mat_mul(acc, a)
        if c:
            acc = acc + RatMatrix.identity(n).scale(c)
    return acc


def eval_matrix_vec(p: UnivarPoly, a: RatMatrix, v: Sequence[Fraction]) -> Vec:
    """p(A) v without forming p(A); equals mat_vec(eval_matrix(p, a), v)."""
    if not a.is_square():
        raise DimensionError("polynomial of a non-square matrix")
    if a.cols != len(v):
        raise DimensionError("vector length mismatch")
    if p.is_zero():
        return tuple(_ZERO for _ in v)
    cs = p.coeffs
    acc = vec_scale(v, cs[-1])
    for c in reversed(cs[:-1]):
        acc = mat_vec(a, acc)
        if c:
            acc = vec_add(acc, vec_scale(v, c))
    return tuple(acc)


def companion_matrix(p: UnivarPoly) -> RatMatrix:
    """Companion matrix of a monic p (degree >= 1): subdiagonal of ones,
    last column -p0..-p_{d-1}."""
    if not p.is_monic() or p.degree < 1:
        raise ValueError("companion matrix requires a monic polynomial of degree >= 1")
    d = p.degree
    return RatMatrix(
        [
            [
                (1 if i == j + 1 else 0) if j < d - 1 else -p.coeffs[i]
                for j in range(d)
            ]
            for i in range(d)
        ]
    )


@dataclass(frozen=True)
class PolyModF:
    """A residue class in K[x]/(f): ``value`` is reduced below deg f."""

    f: UnivarPoly
    value: UnivarPoly

    @classmethod
    def make(cls, f: UnivarPoly, value: UnivarPoly) -> "PolyModF":
        return cls(f, value % f)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def add(self, other: "PolyModF") -> "PolyModF":
        return PolyModF(self.f, self.value + other.value)

    def sub(self, other: "PolyModF") -> "PolyModF":
        return PolyModF(self.f, self.value - other.value)

    def mul(self, other: "PolyModF") -> "PolyModF":
        return PolyModF(self.f, (self.value * other.value) % self.f)

    def scale(self, c: Fraction) -> "PolyModF":
        return PolyModF(self.f, self.value * c)

    def mul_by_x(self) -> "PolyModF":
        return PolyModF(self.f, self.value.shift_up() % self.f)


@dataclass(frozen=True)
class BivarPsi:
    """A polynomial in mu whose coefficients live in K[lam]/(f).

    ``coeffs_in_mu[j]`` is the residue class multiplying mu^j.
    """

    f: UnivarPoly
    coeffs_in_mu: tuple[PolyModF, ...]

    @property
    def mu_degree(self) -> int:
        return len(self.coeffs_in_mu) - 1

    def mul(self, other: "BivarPsi") -> "BivarPsi":
        a, b = self.coeffs_in_mu, other.coeffs_in_mu
        out = [PolyModF(self.f, ZERO_POLY) for _ in range(len(a) + len(b) - 1)]
        for i, ca in enumerate(a):
            if not ca.is_zero():
                for j, cb in enumerate(b):
                    if not cb.is_zero():
                        out[i + j] = out[i + j].add(ca.mul(cb))
        while out and out[-1].is_zero():
            out.pop()
        return BivarPsi(self.f, tuple(out))


def psi(f: UnivarPoly) -> BivarPsi:
    """The divided difference (f(mu) - f(lam)) / (mu - lam).

    The coefficient of mu^j is f_{j+1} + f_{j+2} lam + ... + f_d lam^{d-1-j},
    i.e. a tail slice of f's coefficients; re-multiplying by (mu - lam)
    recovers f(mu) - f(lam) exactly.
    """
    if f.degree < 1:
        raise ValueError("divided difference requires degree >= 1")
    cs = f.coeffs
    coeffs = tuple(
        PolyModF.make(f, UnivarPoly(cs[j + 1 :])) for j in range(f.degree)
    )
    return BivarPsi(f, coeffs)


def psi_power_mod(f: UnivarPoly, k: int) -> BivarPsi:
    """psi(f)^k with every lam-coefficient reduced mod f; k >= 1."""
    if k < 1:
        raise ValueError("power must be >= 1")
    base = psi(f)
    out = base
    for _ in range(k - 1):
        out = out.mul(base)
    return out


def format_poly(p: UnivarPoly) -> str:
    """Polynomial text format: ``d c0 c1 ... cd`` (ascending)."""
    if p.is_zero():
        return "0 0"
    return f"{p.degree} " + " ".join(str(c) for c in p.coeffs)


def parse_poly_tokens(tokens: Sequence[str], lineno: int = 1, offset: int = 0) -> UnivarPoly:
    if not tokens:
        raise ParseError(lineno, offset + 1, "empty polynomial")
    try:
        d = int(tokens[0])
    except ValueError:
        raise ParseError(lineno, offset + 1, f"bad degree {tokens[0]!r}") from None
    if len(tokens) != d + 2:
        raise ParseError(lineno, offset + 1, f"expected {d + 1} coefficients, found {len(tokens) - 1}")
    coeffs = []
    for j, tok in enumerate(tokens[1:], start=offset + 2):
        try:
            coeffs.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, j, f"bad rational {tok!r}") from None
    p = UnivarPoly(coeffs)
    if p.degree != d and not (d == 0 and p.is_zero()):
        raise ParseError(lineno, offset + 1, f"stated degree {d} but leading coefficient is zero")
    return p


def parse_poly(text: str) -> UnivarPoly:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            return parse_poly_tokens(line.split(), lineno)
    raise ParseError(1, 1, "empty polynomial file")


@dataclass(frozen=True)
class FactoredCharPoly:
    """A factored characteristic polynomial: [(f_i, m_i), ...].

    The factors are monic of degree >= 1 and pairwise coprime; whether each
    f_i is genuinely irreducible is the caller's assertion and is only
    cross-checked by the pipeline's internal consistency tests.
    """

    factors: tuple[tuple[UnivarPoly, int], ...]

    def __init__(self, factors: Iterable[tuple[UnivarPoly, int]]):
        object.__setattr__(self, "factors", tuple((f, int(m)) for f, m in factors))

    def validate(self, n: int | None = None) -> None:
        for f, m in self.factors:
            if not f.is_monic() or f.degree < 1:
                raise ValueError(f"factor {f} must be monic of degree >= 1")
            if m < 1:
                raise ValueError("multiplicities must be positive")
        for i in range(len(self.factors)):
            for j in range(i + 1, len(self.factors)):
                if poly_gcd(self.factors[i][0], self.factors[j][0]).degree != 0:
                    raise ValueError(
                        f"factors {self.factors[i][0]} and {self.factors[j][0]} share a root"
                    )
        if n is not None and self.total_degree() != n:
            raise ValueError(f"factor degrees sum to {self.total_degree()}, expected {n}")

    def total_degree(self) -> int:
        return sum(f.degree * m for f, m in self.factors)

    def expand(self) -> UnivarPoly:
        out = ONE_POLY
        for f, m in self.factors:
            out = out * f**m
        return out

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, i: int) -> tuple[UnivarPoly, int]:
        return self.factors[i]


def format_factored(fc: FactoredCharPoly) -> str:
    """Factored text format: one ``m : d c0 ... cd`` line per factor."""
    return "\n".join(f"{m} : {format_poly(f)}" for f, m in fc) + "\n"


def parse_factored(text: str) -> FactoredCharPoly:
    factors = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError(lineno, 1, "expected 'multiplicity : degree coefficients...'")
        left, right = line.split(":", 1)
        try:
            m = int(left.strip())
        except ValueError:
            raise ParseError(lineno, 1, f"bad multiplicity {left.strip()!r}") from None
        if m < 1:
            raise ParseError(lineno, 1, "multiplicity must be positive")
        p = parse_poly_tokens(right.split(), lineno, offset=1)
        factors.append((p, m))
    if not factors:
        raise ParseError(1, 1, "empty factor file")
    return FactoredCharPoly(factors)
