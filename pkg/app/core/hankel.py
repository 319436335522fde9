"""
Catalecticant (Hankel) quadratic forms of even-degree forms.

For F of degree 2d, h(F) is the quadratic form on degree-d forms whose
matrix in the scaled basis X^a = (d!/a!) x^a has entry F^(a+b), where
F = sum F^_g X^g. The multiplication map mu sends a quadratic form back to a
degree-2d polynomial, and mu(h(F)) = F.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Union

from .errors import DegreeError, DimensionMismatchError, OddDegreeError
from .poly import (
    Exponent,
    HomogPoly,
    MonomialBasis,
    exponent_factorial,
    monomial_exponents,
    multinomial,
)
from .realroots import SignatureReport, SymMatrix, signature

logger = logging.getLogger(__name__)


class HankelConvention(str, Enum):
    SCALED = "scaled"
    PLAIN = "plain"


class Definiteness(str, Enum):
    ZERO = "ZERO"
    POSITIVE_DEFINITE = "POSITIVE_DEFINITE"
    POSITIVE_SEMIDEFINITE = "POSITIVE_SEMIDEFINITE"
    NEGATIVE_DEFINITE = "NEGATIVE_DEFINITE"
    NEGATIVE_SEMIDEFINITE = "NEGATIVE_SEMIDEFINITE"
    INDEFINITE = "INDEFINITE"


@dataclass(frozen=True)
class HankelForm:
    basis: MonomialBasis
    matrix: SymMatrix
    convention: HankelConvention = HankelConvention.SCALED

    @property
    def dimension(self) -> int:
        return len(self.basis)


def to_scaled_coordinates(F: HomogPoly) -> Dict[Exponent, Fraction]:
    """F^_g = g!/|g|! * F_g, the coefficients of F against X^g."""
    total = factorial(F.d)
    return {g: c * Fraction(exponent_factorial(g), total) for g, c in F.coeffs.items()}


def _weights(basis: MonomialBasis) -> List[int]:
    return [multinomial(a) for a in basis.exponents]


def hankel_matrix(F: HomogPoly, convention: HankelConvention = HankelConvention.SCALED) -> HankelForm:
    if F.d % 2:
        raise OddDegreeError(f"Hankel matrices need an even degree, got {F.d}")
    basis = MonomialBasis.of(F.n, F.d // 2)
    scaled = to_scaled_coordinates(F)
    zero = Fraction(0)
    matrix = [
        [scaled.get(tuple(x + y for x, y in zip(a, b)), zero) for b in basis.exponents]
        for a in basis.exponents
    ]
    if convention == HankelConvention.PLAIN:
        w = _weights(basis)
        matrix = [[v * w[i] * w[j] for j, v in enumerate(row)] for i, row in enumerate(matrix)]
    return HankelForm(basis=basis, matrix=matrix, convention=HankelConvention(convention))


def mu(G: HankelForm) -> HomogPoly:
    """Expand sum G[a][b] X^a X^b (or x^a x^b in the plain convention)."""
    basis = G.basis
    size = len(basis)
    if len(G.matrix) != size or any(len(row) != size for row in G.matrix):
        raise DimensionMismatchError(f"Matrix does not match a basis of {size} monomials")
    w = _weights(basis) if G.convention == HankelConvention.SCALED else [1] * size
    coeffs: Dict[Exponent, Fraction] = {}
    for i, a in enumerate(basis.exponents):
        for j, b in enumerate(basis.exponents):
            value = G.matrix[i][j]
            if value:
                g = tuple(x + y for x, y in zip(a, b))
                coeffs[g] = coeffs.get(g, 0) + Fraction(value) * w[i] * w[j]
    return HomogPoly(basis.n, 2 * basis.d, coeffs)


def pairing(alpha: Sequence[int], beta: Sequence[int], d: int) -> Fraction:
    """(x^b, e^a) = a!/d! when a = b, else 0."""
    if sum(alpha) != d or sum(beta) != d:
        raise DegreeError(f"Both exponents must have degree {d}")
    if tuple(alpha) != tuple(beta):
        return Fraction(0)
    return Fraction(exponent_factorial(alpha), factorial(d))


def c_coefficient(alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
    """(d!/a!)(e!/b!)((a+b)!/(d+e)!) with d = |a|, e = |b|."""
    if len(alpha) != len(beta):
        raise DimensionMismatchError("Exponent vectors of different lengths")
    gamma = [a + b for a, b in zip(alpha, beta)]
    return Fraction(multinomial(alpha) * multinomial(beta), multinomial(gamma))


def convolution_identity_holds(n: int, d: int, e: int) -> bool:
    """sum over a + b = g of (d!/a!)(e!/b!) equals (d+e)!/g! for every g of degree d + e."""
    for gamma in monomial_exponents(n, d + e):
        total = 0
        for alpha in monomial_exponents(n, d):
            beta = tuple(g - a for g, a in zip(gamma, alpha))
            if min(beta) >= 0:
                total += multinomial(alpha) * multinomial(beta)
        if total != multinomial(gamma):
            logger.debug(f"Convolution identity fails at {gamma}")
            return False
    return True


def verify_mu_h_identity(n: int, two_d: int) -> bool:
    """mu(hankel_matrix(x^g)) == x^g for every monomial of degree two_d, both conventions."""
    if two_d % 2:
        raise OddDegreeError(f"Expected an even degree, got {two_d}")
    if not convolution_identity_holds(n, two_d // 2, two_d // 2):
        return False
    for gamma in monomial_exponents(n, two_d):
        F = HomogPoly.monomial(gamma)
        for convention in HankelConvention:
            if mu(hankel_matrix(F, convention)) != F:
                logger.debug(f"mu o h differs from the identity at {gamma} ({convention.value})")
                return False
    return True


def classify(report: SignatureReport, dimension: int) -> Definiteness:
    if report.rank == 0:
        return Definiteness.ZERO
    if report.negative == 0:
        return Definiteness.POSITIVE_DEFINITE if report.positive == dimension else Definiteness.POSITIVE_SEMIDEFINITE
    if report.positive == 0:
        return Definiteness.NEGATIVE_DEFINITE if report.negative == dimension else Definiteness.NEGATIVE_SEMIDEFINITE
    return Definiteness.INDEFINITE


def definiteness(H: Union[HankelForm, SymMatrix]) -> Definiteness:
    matrix = H.matrix if isinstance(H, HankelForm) else H
    return classify(signature(matrix), len(matrix))
