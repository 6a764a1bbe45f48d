import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from subcount.graphs import InconsistencyError, PreconditionError
from subcount.polynomials import (IntPolynomial, binomial_basis_coefficients,
                                  binomial_basis_value,
                                  determinant_polynomial, falling_factorial,
                                  interpolate_int_polynomial,
                                  solve_fraction_system)


def test_falling_factorial():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(-2, 2) == 6
    with pytest.raises(PreconditionError):
        falling_factorial(4, -1)


def test_polynomial_arithmetic_and_eval():
    p = IntPolynomial([1, 2])          # 1 + 2x
    q = IntPolynomial([0, 0, 3])       # 3x^2
    assert (p + q).coeffs == (1, 2, 3)
    assert (p - p).degree == -1
    assert (p * q).coeffs == (0, 0, 3, 6)
    assert (p * q)(2) == 5 * 12
    assert IntPolynomial([0, 1]) == IntPolynomial.x()
    assert (p * 0).coeffs == ()


def test_interpolation_recovers_polynomial():
    p = IntPolynomial([3, -1, 0, 7])
    pts = [(x, p(x)) for x in range(-2, 3)]
    assert interpolate_int_polynomial(pts) == p
    assert interpolate_int_polynomial(pts, max_degree=3) == p
    with pytest.raises(InconsistencyError):
        interpolate_int_polynomial([(0, 0), (2, 1)])  # value 1/2 at x=1
    with pytest.raises(InconsistencyError):
        interpolate_int_polynomial([(x, x * x) for x in range(4)], max_degree=1)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_interpolation_roundtrip(coeffs):
    p = IntPolynomial(coeffs)
    deg = max(p.degree, 0)
    pts = [(x, p(x)) for x in range(deg + 1)]
    assert interpolate_int_polynomial(pts) == p


def test_cauchy_bound_dominates_roots():
    # (x-3)(x+5)(x-1) = x^3 + x^2 - 17x + 15
    p = IntPolynomial([15, -17, 1, 1])
    b = p.cauchy_root_bound()
    for r in (3, -5, 1):
        assert abs(r) <= b
    assert p.cauchy_root_bound() == 1 + Fraction(17, 1)


def test_binomial_basis_identity():
    rng = random.Random(7)
    for _ in range(50):
        cs = [rng.randrange(-30, 30) for _ in range(rng.randint(1, 6))]
        p = IntPolynomial(cs)
        bas = binomial_basis_coefficients(p)
        assert len(bas) == max(p.degree, 0) + 1
        for x in range(-3, 8):
            assert p(x) == sum(c * binomial_basis_value(x, i)
                               for i, c in enumerate(bas))


def test_binomial_basis_value_matches_comb():
    for x in range(0, 9):
        for i in range(0, 6):
            assert binomial_basis_value(x, i) == math.comb(x + i, i)


def test_solve_fraction_system():
    sol = solve_fraction_system([[2, 1], [1, -1]], [5, 1])
    assert sol == [Fraction(2), Fraction(1)]
    with pytest.raises(PreconditionError):
        solve_fraction_system([[1, 2], [2, 4]], [1, 1])


def test_determinant_polynomial():
    x = IntPolynomial.x()
    one = IntPolynomial([1])
    # det [[x, 1], [1, x]] = x^2 - 1
    d = determinant_polynomial([[x, one], [one, x]])
    assert d == IntPolynomial([-1, 0, 1])
    ident3 = [[one if i == j else IntPolynomial() for j in range(3)] for i in range(3)]
    assert determinant_polynomial(ident3) == one
