"""Exact matrix helpers; determinants run on sympy's DomainMatrix over ZZ or QQ."""

from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple, Union

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

Rational = Union[int, Fraction]
Matrix = List[List[Fraction]]


def _require_square(rows: Sequence[Sequence]) -> int:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("Determinant needs a square matrix")
    return n


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = _require_square(rows)
    if n == 0:
        return 1
    matrix = DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], (n, n), ZZ)
    return int(matrix.det())


def determinant(rows: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant of a rational matrix."""
    n = _require_square(rows)
    if n == 0:
        return Fraction(1)
    entries = [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in rows]
    value = QQ.to_sympy(DomainMatrix(entries, (n, n), QQ).det())
    return Fraction(int(value.p), int(value.q))


def submatrix(rows: Sequence[Sequence[Rational]], row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
    return [[Fraction(rows[i][j]) for j in col_idx] for i in row_idx]


def principal_minor(rows: Sequence[Sequence[Rational]], indices: Sequence[int]) -> Fraction:
    """det of the submatrix on 0-based indices (rows and columns alike)."""
    return determinant(submatrix(rows, indices, indices))


def leading_principal_minors(rows: Sequence[Sequence[Rational]]) -> List[Fraction]:
    return [principal_minor(rows, range(r)) for r in range(1, len(rows) + 1)]


def principal_minors(rows: Sequence[Sequence[Rational]]) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """All principal minors keyed by 0-based index tuples, smallest subsets first."""
    n = len(rows)
    return [
        (subset, principal_minor(rows, subset))
        for size in range(1, n + 1)
        for subset in combinations(range(n), size)
    ]


def is_symmetric(rows: Sequence[Sequence[Rational]]) -> bool:
    n = len(rows)
    if any(len(row) != n for row in rows):
        return False
    return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]) -> Matrix:
    columns = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in columns] for row in a]


def transpose(a: Sequence[Sequence[Rational]]) -> Matrix:
    return [[Fraction(v) for v in col] for col in zip(*a)]
