from fractions import Fraction
from typing import List, Sequence

import numpy as np

from app.core.poly import HomogPoly, from_symmetric_matrix, linear_form_power, monomial_exponents
from app.core.unipoly import UniPoly


def cofactor_determinant(rows: Sequence[Sequence]) -> Fraction:
    """Laplace expansion along the first row; only for small matrices."""
    rows = [[Fraction(v) for v in row] for row in rows]
    if not rows:
        return Fraction(1)
    if len(rows) == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, value in enumerate(rows[0]):
        if value:
            minor = [row[:j] + row[j + 1:] for row in rows[1:]]
            total += (-1) ** j * value * cofactor_determinant(minor)
    return total


def symmetric_from_upper(n: int, values: Sequence[int]) -> List[List[Fraction]]:
    """Fill an n x n symmetric matrix from its upper triangle read row by row."""
    matrix = [[Fraction(0)] * n for _ in range(n)]
    it = iter(values)
    for i in range(n):
        for j in range(i, n):
            matrix[i][j] = matrix[j][i] = Fraction(next(it))
    return matrix


def random_symmetric_matrices(n: int, count: int, seed: int = 11, bound: int = 4):
    rng = np.random.default_rng(seed)
    size = n * (n + 1) // 2
    for _ in range(count):
        yield symmetric_from_upper(n, [int(v) for v in rng.integers(-bound, bound + 1, size=size)])


def random_quadratic_forms(n: int, count: int, seed: int = 11, bound: int = 4):
    for matrix in random_symmetric_matrices(n, count, seed, bound):
        yield matrix, from_symmetric_matrix(matrix)


def random_sums_of_squares(n: int, half_degree: int, count: int, seed: int = 5, squares: int = 2, bound: int = 3):
    """F = sum of squares of random integer forms of degree half_degree; F >= 0 by construction."""
    rng = np.random.default_rng(seed)
    exponents = monomial_exponents(n, half_degree)
    for _ in range(count):
        F = HomogPoly.zero(n, 2 * half_degree)
        for _ in range(squares):
            coeffs = {e: int(c) for e, c in zip(exponents, rng.integers(-bound, bound + 1, size=len(exponents)))}
            q = HomogPoly(n, half_degree, coeffs)
            F = F + q * q
        if not F.is_zero:
            yield F


def random_power_sums(n: int, degree: int, count: int, seed: int = 7, terms: int = 3, bound: int = 2):
    """F = sum c_i (a_i . x)^degree with c_i > 0; the Hankel matrix of such F is PSD."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        F = HomogPoly.zero(n, degree)
        for _ in range(terms):
            a = [int(v) for v in rng.integers(-bound, bound + 1, size=n)]
            c = int(rng.integers(1, 4))
            F = F + linear_form_power(a, degree).scale(c)
        if not F.is_zero:
            yield F


def random_monic(count: int, max_degree: int = 6, seed: int = 19, bound: int = 5):
    rng = np.random.default_rng(seed)
    while count:
        degree = int(rng.integers(1, max_degree + 1))
        coeffs = [int(v) for v in rng.integers(-bound, bound + 1, size=degree)] + [1]
        if coeffs[0] != 0:
            count -= 1
            yield UniPoly(coeffs)


def random_forms(n: int, d: int, count: int, seed: int = 37, bound: int = 3):
    """Dense forms with integer coefficients in [-bound, bound]; zero draws are skipped."""
    rng = np.random.default_rng(seed)
    exponents = monomial_exponents(n, d)
    while count:
        values = rng.integers(-bound, bound + 1, size=len(exponents))
        F = HomogPoly(n, d, {e: int(c) for e, c in zip(exponents, values)})
        if not F.is_zero:
            count -= 1
            yield F


def random_rational_points(n: int, count: int, seed: int = 41, bound: int = 12):
    """Points with coordinates k / bound for integer k in [-bound, bound]."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield [Fraction(int(v), bound) for v in rng.integers(-bound, bound + 1, size=n)]
