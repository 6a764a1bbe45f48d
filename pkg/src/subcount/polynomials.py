"""Exact integer polynomials and the small linear algebra the reductions need.

Everything here is exact: coefficients are Python ints, intermediate division
happens in ``fractions.Fraction``, and any step that is supposed to produce an
integer asserts that it did.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .graphs import InconsistencyError, PreconditionError


def falling_factorial(x: int, length: int) -> int:
    """x (x-1) ... (x-length+1); the empty product for length = 0."""
    if length < 0:
        raise PreconditionError("falling factorial needs length >= 0")
    out = 1
    for i in range(length):
        out *= x - i
    return out


class IntPolynomial:
    """Dense integer polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(int(c) for c in cs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial([other])
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def x() -> "IntPolynomial":
        return IntPolynomial([0, 1])

    def cauchy_root_bound(self) -> Fraction:
        """Every root z satisfies |z| <= 1 + max_i |a_i| / |a_lead|."""
        if not self.coeffs:
            raise PreconditionError("zero polynomial has no root bound")
        lead = abs(self.coeffs[-1])
        rest = [abs(c) for c in self.coeffs[:-1]]
        if not rest:
            return Fraction(0)
        return 1 + Fraction(max(rest), lead)


def interpolate_fraction_coefficients(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Monomial coefficients (ascending, exact rationals) of the unique
    polynomial through the given (x, y) points.  Newton's divided
    differences, then expansion.
    """
    xs = [p[0] for p in points]
    if len(set(xs)) != len(xs):
        raise PreconditionError("interpolation nodes must be distinct")
    ys = [Fraction(p[1]) for p in points]
    n = len(points)
    if n == 0:
        return []
    # divided differences
    dd = list(ys)
    table = [dd[0]]
    for level in range(1, n):
        nxt = []
        for i in range(n - level):
            nxt.append((dd[i + 1] - dd[i]) / (xs[i + level] - xs[i]))
        dd = nxt
        table.append(dd[0])
    # expand sum_k table[k] * prod_{j<k} (x - xs[j])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # running product, ascending coefficients
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += table[k] * b
        if k + 1 < n:
            # multiply basis by (x - xs[k])
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, b in enumerate(basis):
                nxt[i + 1] += b
                nxt[i] -= b * xs[k]
            basis = nxt
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def interpolate_int_polynomial(points: Sequence[tuple[int, int]],
                               max_degree: int | None = None) -> IntPolynomial:
    """Exact polynomial through the given (x, y) points.

    Fails if the values force non-integer coefficients, and (optionally) if
    the degree exceeds ``max_degree``.
    """
    coeffs = interpolate_fraction_coefficients(points)
    for c in coeffs:
        if c.denominator != 1:
            raise InconsistencyError("interpolated coefficients are not integers")
    poly = IntPolynomial([int(c) for c in coeffs])
    if max_degree is not None and poly.degree > max_degree:
        raise InconsistencyError(
            f"interpolated degree {poly.degree} exceeds the certified bound {max_degree}")
    return poly


def binomial_basis_coefficients(poly) -> list[int]:
    """Rewrite p(x) = sum_i c_i * binom(x+i, i); returns [c_0, ..., c_d].

    Accepts an IntPolynomial or a plain sequence of (possibly fractional)
    ascending coefficients; integrality is only required of the c_i.
    binom(x+i, i) has degree i with leading coefficient 1/i!, so repeatedly
    stripping the top term is exact.  Non-integer c_i is an error.
    """
    raw = poly.coeffs if isinstance(poly, IntPolynomial) else poly
    work = [Fraction(c) for c in raw]
    while work and work[-1] == 0:
        work.pop()
    d = len(work) - 1
    out = [0] * (d + 1) if d >= 0 else [0]
    if d < 0:
        return [0]
    for i in range(d, -1, -1):
        while len(work) - 1 > i:
            raise InconsistencyError("degree bookkeeping broke")  # pragma: no cover
        if len(work) - 1 < i:
            out[i] = 0
            continue
        ci = work[-1] * math.factorial(i)
        if ci.denominator != 1:
            raise InconsistencyError("binomial-basis coefficient is not an integer")
        out[i] = int(ci)
        # subtract c_i * binom(x+i, i) = c_i/i! * (x+1)(x+2)...(x+i)
        term = [Fraction(1)]
        for j in range(1, i + 1):
            nxt = [Fraction(0)] * (len(term) + 1)
            for t, c in enumerate(term):
                nxt[t + 1] += c
                nxt[t] += c * j
            term = nxt
        scale = Fraction(out[i], math.factorial(i))
        for t, c in enumerate(term):
            work[t] -= scale * c
        while work and work[-1] == 0:
            work.pop()
    if any(c != 0 for c in work):
        raise InconsistencyError("binomial-basis rewrite left a remainder")
    return out


def binomial_coefficients_from_points(points: Sequence[tuple[int, int]],
                                      max_degree: int | None = None) -> list[int]:
    """Interpolate through integer points and express the result over the
    basis binom(x+i, i) in one step.

    The monomial coefficients may be genuine fractions here; only the
    binomial-basis coefficients have to come out integral.
    """
    coeffs = interpolate_fraction_coefficients(points)
    if max_degree is not None and len(coeffs) - 1 > max_degree:
        raise InconsistencyError(
            f"interpolated degree {len(coeffs) - 1} exceeds the certified bound {max_degree}")
    return binomial_basis_coefficients(coeffs)


def binomial_basis_value(x: int, i: int) -> int:
    """binom(x+i, i) evaluated as the polynomial, valid for any integer x."""
    return falling_factorial(x + i, i) // math.factorial(i)


def solve_fraction_system(matrix: Sequence[Sequence[int]],
                          rhs: Sequence[int]) -> list[Fraction]:
    """Solve a square nonsingular system exactly by Gaussian elimination."""
    n = len(matrix)
    aug = [[Fraction(matrix[r][c]) for c in range(n)] + [Fraction(rhs[r])]
           for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise PreconditionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def determinant_polynomial(entries: Sequence[Sequence[IntPolynomial]]) -> IntPolynomial:
    """Determinant of a small matrix of integer polynomials, by cofactors."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    out = IntPolynomial()
    for j in range(n):
        minor = [[entries[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = entries[0][j] * determinant_polynomial(minor)
        out = out + term if j % 2 == 0 else out - term
    return out
