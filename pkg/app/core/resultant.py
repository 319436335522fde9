"""
Exact resultant of the gradient of a form and the normalized discriminant.

Binary forms use the Sylvester matrix of the two partial derivatives. For
three or more variables the resultant is Macaulay's determinant ratio: the
elimination matrix in the critical degree divided by its minor on the
non-reduced monomials. The elimination layout depends only on (n, d) and is
cached; only the coefficients change between evaluations.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import List, Mapping, Tuple

from ..config import settings
from ..utils.linalg import integer_determinant
from .errors import CapacityError, DegenerateSpecializationError, DegreeError
from .poly import Exponent, HomogPoly, MonomialBasis, partial_derivative, reference_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MacaulayStructure:
    """Row and column layout of the Macaulay matrix for the gradient of a form in K(n, d)."""

    n: int
    d: int
    critical_degree: int
    basis: MonomialBasis
    row_owner: Tuple[int, ...]
    row_shift: Tuple[Exponent, ...]
    minor_indices: Tuple[int, ...]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return (self.d - 1,) * self.n

    @property
    def size(self) -> int:
        return len(self.basis)


def discriminant_degree(n: int, d: int) -> int:
    """D = n (d - 1)^(n - 1)."""
    if n < 1 or d < 2:
        raise DegreeError(f"Discriminant needs n >= 1 and d >= 2, got n={n}, d={d}")
    return n * (d - 1) ** (n - 1)


def elimination_size(n: int, d: int) -> int:
    if n == 1:
        return 1
    if n == 2:
        return 2 * (d - 1)
    delta = n * (d - 2) + 1
    return comb(delta + n - 1, n - 1)


def check_capacity(n: int, d: int) -> None:
    if n > settings.MAX_VARIABLES:
        raise CapacityError(
            f"n={n} exceeds the resultant limit of {settings.MAX_VARIABLES} variables"
        )
    size = elimination_size(n, d)
    if size > settings.MAX_MATRIX_SIZE:
        raise CapacityError(
            f"Elimination matrix for (n={n}, d={d}) has size {size}, limit is {settings.MAX_MATRIX_SIZE}"
        )


@lru_cache(maxsize=None)
def macaulay_structure(n: int, d: int) -> MacaulayStructure:
    m = d - 1
    delta = n * (d - 2) + 1
    basis = MonomialBasis.of(n, delta)
    owners: List[int] = []
    shifts: List[Exponent] = []
    minor: List[int] = []
    for row, alpha in enumerate(basis.exponents):
        owner = next(i for i, a in enumerate(alpha) if a >= m)
        shift = list(alpha)
        shift[owner] -= m
        owners.append(owner)
        shifts.append(tuple(shift))
        if sum(1 for a in alpha if a >= m) >= 2:
            minor.append(row)
    logger.debug(f"Macaulay layout for n={n}, d={d}: size {len(basis)}, minor {len(minor)}")
    return MacaulayStructure(
        n=n,
        d=d,
        critical_degree=delta,
        basis=basis,
        row_owner=tuple(owners),
        row_shift=tuple(shifts),
        minor_indices=tuple(minor),
    )


def _integer_gradient(F: HomogPoly) -> Tuple[List[Mapping[Exponent, int]], int]:
    """Partials of L*F with integer coefficients, and the multiplier L."""
    multiplier = lcm(*(c.denominator for c in F.coeffs.values())) if not F.is_zero else 1
    scaled = F.scale(multiplier)
    partials = [
        {e: int(c) for e, c in partial_derivative(scaled, i).coeffs.items()}
        for i in range(1, F.n + 1)
    ]
    return partials, multiplier


def _sylvester_matrix(f: Mapping[Exponent, int], g: Mapping[Exponent, int], m: int) -> List[List[int]]:
    """Sylvester matrix of two binary forms of degree m; coefficients ordered x1^m .. x2^m."""
    size = 2 * m
    rows = []
    for form in (f, g):
        coeffs = [form.get((m - k, k), 0) for k in range(m + 1)]
        for shift in range(m):
            row = [0] * size
            row[shift : shift + m + 1] = coeffs
            rows.append(row)
    return rows


def _macaulay_ratio(structure: MacaulayStructure, partials: List[Mapping[Exponent, int]]) -> Fraction:
    size = structure.size
    lookup = structure.basis.lookup
    matrix = [[0] * size for _ in range(size)]
    for row, (owner, shift) in enumerate(zip(structure.row_owner, structure.row_shift)):
        target = matrix[row]
        for exponent, c in partials[owner].items():
            target[lookup[tuple(a + b for a, b in zip(exponent, shift))]] = c

    minor_idx = structure.minor_indices
    minor = integer_determinant([[matrix[i][j] for j in minor_idx] for i in minor_idx])
    if minor == 0:
        raise DegenerateSpecializationError(
            f"Macaulay denominator minor vanishes (n={structure.n}, d={structure.d})"
        )
    return Fraction(integer_determinant(matrix), minor)


def gradient_resultant(F: HomogPoly) -> Fraction:
    """Resultant of the partial derivatives of F; zero iff they share a nonzero complex root."""
    n, d = F.n, F.d
    if d < 2:
        raise DegreeError(f"Gradient resultant needs d >= 2, got {d}")
    if n == 1:
        return F.coefficient((d,))
    check_capacity(n, d)

    partials, multiplier = _integer_gradient(F)
    if n == 2:
        value = Fraction(integer_determinant(_sylvester_matrix(partials[0], partials[1], d - 1)))
    else:
        value = _macaulay_ratio(macaulay_structure(n, d), partials)
    if multiplier != 1:
        value /= Fraction(multiplier) ** discriminant_degree(n, d)
    return value


@lru_cache(maxsize=None)
def reference_resultant(n: int, d: int) -> Fraction:
    """gradient_resultant(J) for J = x1^d + ... + xn^d."""
    value = gradient_resultant(reference_form(n, d))
    logger.info(f"Cached discriminant normalization for n={n}, d={d}: {value}")
    return value


def discriminant(F: HomogPoly) -> Fraction:
    """Delta(F) normalized so that Delta(J) = 1."""
    if F.d < 2:
        raise DegreeError(f"Discriminant needs d >= 2, got {F.d}")
    return gradient_resultant(F) / reference_resultant(F.n, F.d)
