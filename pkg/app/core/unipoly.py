"""Dense univariate polynomials over the rationals, backed by sympy's QQ[t]."""

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ

from ..utils.helpers import format_terms
from .errors import DegreeError, DimensionMismatchError, ZeroPolynomialError
from .poly import read_sympy_poly, sympy_to_fraction

Scalar = Union[int, Fraction]

T = sympy.Symbol("t")


def to_rational(value: Scalar) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


class UniPoly:
    """c0 + c1 t + ... + cm t^m with cm != 0; the zero polynomial has degree -1.

    Coefficients are kept as a tuple of Fractions; division, gcd and the
    root-related algorithms run on the equivalent sympy Poly.
    """

    __slots__ = ("_coeffs", "_poly")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(values)
        self._poly: Optional[sympy.Poly] = None

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "UniPoly":
        result = cls(sympy_to_fraction(c) for c in reversed(poly.all_coeffs()))
        result._poly = poly
        return result

    @classmethod
    def constant(cls, value: Scalar) -> "UniPoly":
        return cls([value])

    @classmethod
    def t(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "UniPoly":
        result = sympy.Poly(1, T, domain=QQ)
        for r in roots:
            result = result * sympy.Poly(T - to_rational(r), T, domain=QQ)
        return cls.from_sympy(result)

    @classmethod
    def parse(cls, text: str, variable: str = "t") -> "UniPoly":
        poly = read_sympy_poly(text, [variable])
        if poly.is_zero:
            return cls()
        coeffs = [Fraction(0)] * (poly.degree() + 1)
        for (e,), value in poly.terms():
            coeffs[e] = sympy_to_fraction(value)
        return cls(coeffs)

    def as_sympy(self) -> sympy.Poly:
        if self._poly is None:
            if self._coeffs:
                self._poly = sympy.Poly.from_list([to_rational(c) for c in reversed(self._coeffs)], T, domain=QQ)
            else:
                self._poly = sympy.Poly(0, T, domain=QQ)
        return self._poly

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, k: int) -> Fraction:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    def __call__(self, t: Scalar) -> Fraction:
        t = Fraction(t)
        value = Fraction(0)
        for c in reversed(self._coeffs):
            value = value * t + c
        return value

    def __add__(self, other: "UniPoly") -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        return UniPoly.from_sympy(self.as_sympy() + other.as_sympy())

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self._coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        return UniPoly.from_sympy(self.as_sympy() - other.as_sympy())

    def scale(self, factor: Scalar) -> "UniPoly":
        factor = Fraction(factor)
        return UniPoly(c * factor for c in self._coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return UniPoly.from_sympy(self.as_sympy() * other.as_sympy())

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise DegreeError("Negative powers are not polynomials")
        return UniPoly.from_sympy(self.as_sympy() ** k)

    def __divmod__(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if divisor.is_zero:
            raise ZeroPolynomialError("Division by the zero polynomial")
        quotient, remainder = self.as_sympy().div(divisor.as_sympy())
        return UniPoly.from_sympy(quotient), UniPoly.from_sympy(remainder)

    def __floordiv__(self, divisor: "UniPoly") -> "UniPoly":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "UniPoly") -> "UniPoly":
        return divmod(self, divisor)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self._coeffs) if k)

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ZeroPolynomialError("The zero polynomial has no monic associate")
        return self.scale(1 / self.leading)

    def valuation(self) -> int:
        """Multiplicity of the root t = 0."""
        if self.is_zero:
            raise ZeroPolynomialError("The zero polynomial vanishes to every order")
        k = 0
        while self._coeffs[k] == 0:
            k += 1
        return k

    def shift_down(self, k: int) -> "UniPoly":
        """Divide by t^k; the caller guarantees exactness."""
        return UniPoly(self._coeffs[k:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def to_text(self, variable: str = "t") -> str:
        def monomial(k: int) -> str:
            if k == 0:
                return ""
            return variable if k == 1 else f"{variable}^{k}"

        return format_terms((c, monomial(k)) for k, c in reversed(list(enumerate(self._coeffs))))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"UniPoly({self.to_text()!r})"


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor; gcd(0, 0) is 0."""
    if p.is_zero and q.is_zero:
        return UniPoly()
    return UniPoly.from_sympy(p.as_sympy().gcd(q.as_sympy())).monic()


def interpolate(nodes: Sequence[Scalar], values: Sequence[Scalar]) -> UniPoly:
    """Exact Lagrange interpolation through distinct nodes."""
    if len(nodes) != len(values):
        raise DimensionMismatchError(f"{len(nodes)} nodes but {len(values)} values")
    points = [Fraction(x) for x in nodes]
    if len(set(points)) != len(points):
        raise DimensionMismatchError("Interpolation nodes must be distinct")

    linear = [sympy.Poly(T - to_rational(x), T, domain=QQ) for x in points]
    master = sympy.Poly(1, T, domain=QQ)
    for factor in linear:
        master = master * factor
    result = sympy.Poly(0, T, domain=QQ)
    for x, y, factor in zip(points, values, linear):
        if not y:
            continue
        basis = master.exquo(factor)
        result = result + basis.mul_ground(to_rational(y) / basis.eval(to_rational(x)))
    return UniPoly.from_sympy(result)
