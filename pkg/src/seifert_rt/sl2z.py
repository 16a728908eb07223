"""Exact integer arithmetic in SL(2, Z).

Negative-regular and euclidean continued fractions with their convergent
matrices, Dedekind sums, the Rademacher function, closed-form signatures
of Seifert surgery links, the integer plumbing (linking) matrices those
links produce, and an exact congruence reduction computing the signature
and nullity of any symmetric rational matrix.

Everything runs on int and Fraction; the only floating point is the
cotangent-sum cross-check for Dedekind sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .seifert import SeifertData


class InvalidFraction(ValueError):
    """Continued fraction of p/q needs q != 0 and gcd(p, q) = 1."""


class InvalidModulus(ValueError):
    """Dedekind sum needs a positive modulus coprime to the argument."""


class ShapeError(ValueError):
    """Matrix input has the wrong shape or symmetry."""


def sign(x) -> int:
    """Sign in {-1, 0, 1}; works for int and Fraction."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True)
class SL2Z:
    """Integer matrix [[a, b], [c, d]] with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant is not 1: {self.rows()}")

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __mul__(self, other: "SL2Z") -> "SL2Z":
        return SL2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2Z":
        return SL2Z(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Z":
        return SL2Z(self.d, -self.b, -self.c, self.a)


IDENTITY = SL2Z(1, 0, 0, 1)
XI = SL2Z(0, -1, 1, 0)
THETA = SL2Z(1, 1, 0, 1)


def theta_power(k: int) -> SL2Z:
    return SL2Z(1, k, 0, 1)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x a + y b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_x, x = x, old_x - quo * x
        old_y, y = y, old_y - quo * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


CF_STYLES = ("minus", "euclidean")


def cf_expand(p: int, q: int, style: str = "minus") -> tuple[int, ...]:
    """Digits (a_1, ..., a_n) of a continued fraction expansion of p/q.

    The convergent matrix Theta^{a_n} Xi ... Theta^{a_1} Xi has first
    column +-(p, q)^T.  "minus" takes ceiling quotients (all-minus
    expansion, inner digits have absolute value >= 2 when |p/q| > 1),
    "euclidean" takes floor quotients.
    """
    if q == 0:
        raise InvalidFraction(f"{p}/{q} has zero denominator")
    if math.gcd(p, q) != 1:
        raise InvalidFraction(f"{p}/{q} is not reduced")
    if style not in CF_STYLES:
        raise ValueError(f"style must be one of {CF_STYLES}, got {style!r}")
    digits = []
    while q != 0:
        if style == "minus":
            a = -((-p) // q)
        else:
            a = p // q
        digits.append(a)
        p, q = q, a * q - p
    return tuple(reversed(digits))


def b_matrix(entries: Sequence[int]) -> SL2Z:
    """Theta^{a_n} Xi ... Theta^{a_1} Xi for entries (a_1, ..., a_n)."""
    out = IDENTITY
    for a in entries:
        out = theta_power(a) * XI * out
    return out


@dataclass(frozen=True)
class ConvergentTable:
    """Partial products B_k = Theta^{a_k} Xi ... Theta^{a_1} Xi, k = 1..n.

    The first column of B_k is (alpha_k, beta_k); beta_k = alpha_{k-1}.
    """

    entries: tuple[int, ...]
    matrices: tuple[SL2Z, ...]

    @property
    def final(self) -> SL2Z:
        return self.matrices[-1] if self.matrices else IDENTITY

    @property
    def column_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((m.a, m.c) for m in self.matrices)


def convergents(entries: Sequence[int]) -> ConvergentTable:
    mats = []
    acc = IDENTITY
    for a in entries:
        acc = theta_power(a) * XI * acc
        mats.append(acc)
    return ConvergentTable(tuple(entries), tuple(mats))


def dedekind_sum(s: int, q: int) -> Fraction:
    """Dedekind sum of s mod q, exact, via the reciprocity recursion.

    Odd in s, zero for q = 1, and equal to the classical cotangent sum
    (see dedekind_sum_cotangent) on coprime arguments.
    """
    if q <= 0:
        raise InvalidModulus(f"modulus must be positive, got {q}")
    s %= q
    if math.gcd(s, q) != 1:
        raise InvalidModulus(f"{s} and {q} are not coprime")
    total = Fraction(0)
    sgn = 1
    h, k = s, q
    while h > 0:
        total += sgn * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        h, k = k % h, h
        sgn = -sgn
    return total


def dedekind_sum_cotangent(s: int, q: int) -> float:
    """Defining cotangent sum, floating point; cross-check oracle."""
    if q <= 0:
        raise InvalidModulus(f"modulus must be positive, got {q}")
    if q == 1:
        return 0.0
    if math.gcd(s, q) != 1:
        raise InvalidModulus(f"{s} and {q} are not coprime")
    total = 0.0
    for j in range(1, q):
        total += (
            math.cos(math.pi * j / q) / math.sin(math.pi * j / q)
            * math.cos(math.pi * s * j / q) / math.sin(math.pi * s * j / q)
        )
    return total / (4 * q)


def rademacher_phi(mat: SL2Z) -> int:
    """Rademacher function, always an integer on SL(2, Z).

    For [[a, b], [c, d]]: b/d when c = 0, otherwise
    (a + d)/c - 12 sign(c) times the Dedekind sum of d mod |c|.
    Satisfies phi(-A) = phi(A) and the three-term cocycle relation
    phi(A1 A2) = phi(A1) + phi(A2) - 3 sign(c1 c2 c3).
    """
    if mat.c == 0:
        val = Fraction(mat.b, mat.d)
    else:
        val = Fraction(mat.a + mat.d, mat.c) - 12 * sign(mat.c) * dedekind_sum(
            mat.d, abs(mat.c)
        )
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral Rademacher value {val} at {mat.rows()}")
    return int(val)


def sigma_closed_form(
    base: str,
    euler_sign: int,
    tables: Sequence[ConvergentTable],
    variant: str = "sums",
) -> int:
    """Signature of the Seifert surgery link, in closed form.

    variant "sums": sign(e) (orientable base only) plus the double sum of
    sign(alpha_l beta_l) over all convergents of all chains.  variant
    "phi": the same value with each chain's inner sum replaced by its
    endpoint form sign(alpha beta) + (sum of digits - phi(B))/3.
    Both must equal the signature of the exact linking matrix.
    """
    if base not in ("o", "n"):
        raise ValueError(f"base must be 'o' or 'n', got {base!r}")
    if variant not in ("sums", "phi"):
        raise ValueError(f"variant must be 'sums' or 'phi', got {variant!r}")
    total = euler_sign if base == "o" else 0
    for table in tables:
        if variant == "sums":
            for alpha, beta in table.column_pairs:
                total += sign(alpha * beta)
        else:
            last = table.final
            total += sign(last.a * last.c)
            num = sum(table.entries) - rademacher_phi(last)
            if num % 3 != 0:
                raise ArithmeticError(
                    f"digit sum minus phi not divisible by 3 for {table.entries}"
                )
            total += num // 3
    return total


def linking_matrix(
    data: "SeifertData", cfs: Sequence[Sequence[int]]
) -> tuple[tuple[int, ...], ...]:
    """Integer linking matrix of the plumbing surgery presentation.

    cfs holds one digit tuple per exceptional pair.  Orientable base:
    2g zero rows, then a central vertex -b linked once to the head of
    each chain; chain j carries its digits in reverse order
    (a_m, ..., a_1) on the diagonal with unit links along the chain.
    Non-orientable base: g cross-cap rows (zero diagonal) each linked
    with -2 to the central vertex, whose diagonal becomes -b - 2g.
    """
    if len(cfs) != len(data.pairs):
        raise ShapeError(
            f"{len(data.pairs)} pairs but {len(cfs)} digit sequences"
        )
    b = data.b if data.b is not None else 0
    g = data.genus
    orientable = data.base == "o"
    head = 2 * g if orientable else g
    size = head + 1 + sum(len(c) for c in cfs)
    m = [[0] * size for _ in range(size)]
    center = head
    if orientable:
        m[center][center] = -b
    else:
        m[center][center] = -b - 2 * g
        for i in range(g):
            m[i][center] = m[center][i] = -2
    pos = center + 1
    for chain in cfs:
        digits = list(reversed(list(chain)))
        if digits:
            m[center][pos] = m[pos][center] = 1
        for i, a in enumerate(digits):
            m[pos + i][pos + i] = a
            if i + 1 < len(digits):
                m[pos + i][pos + i + 1] = m[pos + i + 1][pos + i] = 1
        pos += len(digits)
    return tuple(tuple(row) for row in m)


def signature_exact(mat: Sequence[Sequence[int | Fraction]]) -> tuple[int, int]:
    """(signature, nullity) of a symmetric rational matrix, exact.

    Congruence reduction over Fraction: split off nonzero diagonal
    entries one at a time, and zero-diagonal hyperbolic pairs two at a
    time (each contributing nothing to the signature).
    """
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    for row in m:
        if len(row) != n:
            raise ShapeError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ShapeError("matrix is not symmetric")
    sig = 0
    null = 0
    while m:
        k = len(m)
        pivot = next((i for i in range(k) if m[i][i] != 0), None)
        if pivot is not None:
            d = m[pivot][pivot]
            sig += 1 if d > 0 else -1
            rest = [i for i in range(k) if i != pivot]
            m = [
                [m[i][j] - m[i][pivot] * m[pivot][j] / d for j in rest]
                for i in rest
            ]
            continue
        hyper = None
        for i in range(k):
            for j in range(i + 1, k):
                if m[i][j] != 0:
                    hyper = (i, j)
                    break
            if hyper:
                break
        if hyper is None:
            null += k
            break
        i0, j0 = hyper
        c = m[i0][j0]
        rest = [t for t in range(k) if t not in (i0, j0)]
        m = [
            [
                m[s][t] - (m[s][i0] * m[t][j0] + m[s][j0] * m[t][i0]) / c
                for t in rest
            ]
            for s in rest
        ]
    return sig, null
