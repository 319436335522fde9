"""
Homogeneous polynomials (forms) with exact rational coefficients.

A form of degree d in n variables is stored sparsely as a map from exponent
vectors to nonzero Fractions. Monomials are ordered graded-lexicographically
with x1 > x2 > ... > xn, which fixes printing order and matrix indexing.

Polynomial text is read by a small recursive-descent parser over a fixed
token set: variables, integer or p/q coefficients, `^` (or `**`), `*`,
`+`, `-`, parentheses and whitespace. Nothing in the text is evaluated.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ

from ..utils.helpers import format_terms
from .errors import (
    DegreeError,
    DimensionMismatchError,
    NotHomogeneousError,
    ParseError,
    VariableIndexError,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*/^()]))")
_VARIABLE_SHAPE = re.compile(r"[A-Za-z]\d*")


def num_monomials(n: int, d: int) -> int:
    """Dimension N of the space of forms of degree d in n variables."""
    return comb(n - 1 + d, d)


@lru_cache(maxsize=None)
def monomial_exponents(n: int, d: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of total degree d in n variables, graded-lex order."""
    if n < 1 or d < 0:
        raise DimensionMismatchError(f"No monomials for n={n}, d={d}")
    if n == 1:
        return ((d,),)
    return tuple(
        (first,) + rest
        for first in range(d, -1, -1)
        for rest in monomial_exponents(n - 1, d - first)
    )


def multinomial(exponent: Sequence[int]) -> int:
    """|a|! / a! for an exponent vector a."""
    result = factorial(sum(exponent))
    for e in exponent:
        result //= factorial(e)
    return result


def exponent_factorial(exponent: Sequence[int]) -> int:
    """a! = product of the factorials of the entries."""
    result = 1
    for e in exponent:
        result *= factorial(e)
    return result


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered monomial index of degree d in n variables."""

    n: int
    d: int
    exponents: Tuple[Exponent, ...]
    lookup: Mapping[Exponent, int] = field(compare=False, repr=False)

    @classmethod
    def of(cls, n: int, d: int) -> "MonomialBasis":
        return _basis(n, d)

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self.exponents)

    def index(self, exponent: Exponent) -> int:
        try:
            return self.lookup[tuple(exponent)]
        except KeyError:
            raise DimensionMismatchError(
                f"Exponent {tuple(exponent)} is not a monomial of degree {self.d} in {self.n} variables"
            )


@lru_cache(maxsize=None)
def _basis(n: int, d: int) -> MonomialBasis:
    exponents = monomial_exponents(n, d)
    lookup = MappingProxyType({e: i for i, e in enumerate(exponents)})
    return MonomialBasis(n=n, d=d, exponents=exponents, lookup=lookup)


class HomogPoly:
    """Sparse homogeneous polynomial; immutable once built."""

    __slots__ = ("_n", "_d", "_coeffs")

    def __init__(self, n: int, d: int, coeffs: Optional[Mapping[Exponent, Scalar]] = None):
        if n < 1:
            raise DimensionMismatchError(f"A form needs at least one variable, got n={n}")
        if d < 0:
            raise DegreeError(f"Degree must be non-negative, got {d}")
        cleaned: Dict[Exponent, Fraction] = {}
        for exponent, value in (coeffs or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != n or any(e < 0 for e in exponent):
                raise DimensionMismatchError(f"Exponent {exponent} does not fit {n} variables")
            if sum(exponent) != d:
                raise NotHomogeneousError(f"Monomial {exponent} has degree {sum(exponent)}, expected {d}")
            value = Fraction(value)
            if value:
                cleaned[exponent] = value
        self._n = n
        self._d = d
        self._coeffs = cleaned

    @property
    def n(self) -> int:
        return self._n

    @property
    def d(self) -> int:
        return self._d

    @classmethod
    def zero(cls, n: int, d: int) -> "HomogPoly":
        return cls(n, d)

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "HomogPoly":
        return cls(n, 0, {(0,) * n: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Scalar = 1) -> "HomogPoly":
        exponent = tuple(exponent)
        return cls(len(exponent), sum(exponent), {exponent: coefficient})

    @property
    def coeffs(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._coeffs)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._coeffs.get(tuple(exponent), Fraction(0))

    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Nonzero terms in graded-lex order."""
        return sorted(self._coeffs.items(), reverse=True)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def _same_space(self, other: "HomogPoly") -> None:
        if self.n != other.n or self.d != other.d:
            raise DimensionMismatchError(
                f"Forms live in different spaces: (n={self.n}, d={self.d}) vs (n={other.n}, d={other.d})"
            )

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._same_space(other)
        coeffs = dict(self._coeffs)
        for exponent, value in other._coeffs.items():
            coeffs[exponent] = coeffs.get(exponent, 0) + value
        return HomogPoly(self.n, self.d, coeffs)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(self.n, self.d, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Scalar) -> "HomogPoly":
        factor = Fraction(factor)
        return HomogPoly(self.n, self.d, {e: c * factor for e, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            if self.n != other.n:
                raise DimensionMismatchError(f"Cannot multiply forms in {self.n} and {other.n} variables")
            coeffs: Dict[Exponent, Fraction] = {}
            for e1, c1 in self._coeffs.items():
                for e2, c2 in other._coeffs.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    coeffs[key] = coeffs.get(key, 0) + c1 * c2
            return HomogPoly(self.n, self.d + other.d, coeffs)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "HomogPoly":
        if k < 0:
            raise DegreeError("Negative powers are not forms")
        result = HomogPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        return evaluate(self, point)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.n == other.n and self.d == other.d and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.d, frozenset(self._coeffs.items())))

    def to_text(self) -> str:
        return to_text(self)

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"HomogPoly(n={self.n}, d={self.d}, {to_text(self)!r})"


def _monomial_text(exponent: Exponent, variable: str = "x") -> str:
    return " ".join(
        f"{variable}{i + 1}" if e == 1 else f"{variable}{i + 1}^{e}"
        for i, e in enumerate(exponent)
        if e
    )


def to_text(F: HomogPoly) -> str:
    """Canonical text; parse(to_text(F), F.n, F.d) == F."""
    return format_terms((c, _monomial_text(e)) for e, c in F.terms())


Token = Tuple[str, str]


def tokenize(text: str, names: Sequence[str]) -> List[Token]:
    """Split text into (kind, value) tokens; kinds are number, var and op."""
    tokens: List[Token] = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        match = _TOKEN.match(text, pos)
        if match is None:
            bad = text[pos:].lstrip()[:1]
            raise ParseError(f"Unexpected character {bad!r} in {text!r}")
        pos = match.end()
        if match.group("number") is not None:
            tokens.append(("number", match.group("number")))
        elif match.group("name") is not None:
            name = match.group("name")
            if name in names:
                tokens.append(("var", name))
            elif _VARIABLE_SHAPE.fullmatch(name):
                raise VariableIndexError(f"Unknown variable {name}; expected {', '.join(names)}")
            else:
                raise ParseError(f"Unexpected name {name!r} in {text!r}")
        else:
            op = match.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


class _PolyReader:
    """Recursive descent over the token list; every value is a Poly over QQ."""

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.tokens = tokenize(text, names)
        self.pos = 0
        self.symbols = [sympy.Symbol(name) for name in names]
        self.index = {name: i for i, name in enumerate(names)}

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> Token:
        token = self._peek()
        if token is None:
            raise ParseError(f"{self.text!r} ends unexpectedly")
        self.pos += 1
        return token

    def _at_op(self, *ops: str) -> bool:
        token = self._peek()
        return token is not None and token[0] == "op" and token[1] in ops

    def _constant(self, value: Fraction) -> sympy.Poly:
        return sympy.Poly(sympy.Rational(value.numerator, value.denominator), *self.symbols, domain=QQ)

    def read(self) -> sympy.Poly:
        if not self.tokens:
            raise ParseError("Empty polynomial text")
        poly = self._sum()
        if self._peek() is not None:
            raise ParseError(f"Unexpected {self._peek()[1]!r} in {self.text!r}")
        return poly

    def _sum(self) -> sympy.Poly:
        result = self._signed()
        while self._at_op("+", "-"):
            op = self._take()[1]
            term = self._product()
            result = result + term if op == "+" else result - term
        return result

    def _signed(self) -> sympy.Poly:
        if self._at_op("+", "-"):
            op = self._take()[1]
            value = self._signed()
            return -value if op == "-" else value
        return self._product()

    def _product(self) -> sympy.Poly:
        result = self._power()
        while True:
            token = self._peek()
            if self._at_op("*"):
                self._take()
                result = result * self._signed()
            elif token is not None and (token[0] != "op" or token[1] == "("):
                # implicit multiplication: "3 x1 x2", "2 (x1 + x2)"
                result = result * self._power()
            else:
                return result

    def _power(self) -> sympy.Poly:
        base = self._atom()
        if self._at_op("^"):
            self._take()
            kind, value = self._take()
            if kind != "number":
                raise ParseError(f"Exponents must be non-negative integers in {self.text!r}")
            base = base ** int(value)
        return base

    def _atom(self) -> sympy.Poly:
        kind, value = self._take()
        if kind == "number":
            number = Fraction(int(value))
            if self._at_op("/"):
                self._take()
                kind, denominator = self._take()
                if kind != "number" or int(denominator) == 0:
                    raise ParseError(f"Coefficients must be integers or p/q with q > 0 in {self.text!r}")
                number /= int(denominator)
            return self._constant(number)
        if kind == "var":
            return sympy.Poly(self.symbols[self.index[value]], *self.symbols, domain=QQ)
        if value == "(":
            inner = self._sum()
            if not self._at_op(")"):
                raise ParseError(f"Unbalanced parenthesis in {self.text!r}")
            self._take()
            return inner
        raise ParseError(f"Unexpected {value!r} in {self.text!r}")


def read_sympy_poly(text: str, names: Sequence[str]) -> sympy.Poly:
    """Parse text into a sympy Poly over QQ in the given variable names."""
    return _PolyReader(text, names).read()


def sympy_to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def parse(text: str, n: int, d: Optional[int] = None) -> HomogPoly:
    """Read a form in x1..xn; the degree is inferred unless the text is zero."""
    if n < 1:
        raise DimensionMismatchError(f"n must be at least 1, got {n}")
    poly = read_sympy_poly(text, [f"x{i}" for i in range(1, n + 1)])

    if poly.is_zero:
        if d is None:
            raise ParseError("Cannot infer the degree of the zero polynomial; pass it explicitly")
        return HomogPoly.zero(n, d)

    terms = poly.terms()
    degrees = {sum(monom) for monom, _ in terms}
    if len(degrees) > 1:
        raise NotHomogeneousError(
            f"{text!r} is not homogeneous: terms of degrees {sorted(degrees)}"
        )
    degree = degrees.pop()
    if d is not None and d != degree:
        raise DegreeError(f"{text!r} has degree {degree}, expected {d}")

    coeffs = {tuple(int(e) for e in monom): sympy_to_fraction(value) for monom, value in terms}
    logger.debug(f"Parsed {len(coeffs)} terms of degree {degree} in {n} variables")
    return HomogPoly(n, degree, coeffs)


def reference_form(n: int, d: int) -> HomogPoly:
    """J = x1^d + ... + xn^d."""
    if n < 1:
        raise DimensionMismatchError(f"n must be at least 1, got {n}")
    if d < 1:
        raise DegreeError(f"The reference form needs d >= 1, got {d}")
    coeffs = {}
    for i in range(n):
        exponent = [0] * n
        exponent[i] = d
        coeffs[tuple(exponent)] = 1
    return HomogPoly(n, d, coeffs)


def evaluate(F: HomogPoly, point: Sequence[Scalar]) -> Fraction:
    if len(point) != F.n:
        raise DimensionMismatchError(f"Point has {len(point)} coordinates, form has {F.n} variables")
    values = [Fraction(v) for v in point]
    total = Fraction(0)
    for exponent, c in F.coeffs.items():
        term = c
        for v, e in zip(values, exponent):
            if e:
                term *= v ** e
        total += term
    return total


def partial_derivative(F: HomogPoly, i: int) -> HomogPoly:
    """d F / d x_i with 1-based i."""
    if not 1 <= i <= F.n:
        raise DimensionMismatchError(f"Variable index {i} outside 1..{F.n}")
    if F.d == 0:
        raise DegreeError("Constants have no degree-lowering derivative")
    k = i - 1
    coeffs = {}
    for exponent, c in F.coeffs.items():
        if exponent[k]:
            lowered = list(exponent)
            lowered[k] -= 1
            coeffs[tuple(lowered)] = c * exponent[k]
    return HomogPoly(F.n, F.d - 1, coeffs)


def gradient(F: HomogPoly) -> List[HomogPoly]:
    return [partial_derivative(F, i) for i in range(1, F.n + 1)]


def _subset_positions(n: int, subset: Iterable[int]) -> List[int]:
    keep = sorted(set(int(i) for i in subset))
    if not keep:
        raise DimensionMismatchError("Cannot restrict to an empty set of variables")
    if keep[0] < 1 or keep[-1] > n:
        raise DimensionMismatchError(f"Subset {keep} not inside 1..{n}")
    return [i - 1 for i in keep]


def restrict(F: HomogPoly, subset: Iterable[int]) -> HomogPoly:
    """Set x_i = 0 for i outside subset and renumber the kept variables."""
    positions = _subset_positions(F.n, subset)
    kept = set(positions)
    dropped = [j for j in range(F.n) if j not in kept]
    coeffs = {
        tuple(exponent[p] for p in positions): c
        for exponent, c in F.coeffs.items()
        if all(exponent[j] == 0 for j in dropped)
    }
    return HomogPoly(len(positions), F.d, coeffs)


def coordinate_inclusion_matrix(n: int, subset: Iterable[int]) -> List[List[Fraction]]:
    """Rows y_k -> x_{S_k}; linear_change(F, this) == restrict(F, subset)."""
    positions = _subset_positions(n, subset)
    return [[Fraction(1 if j == p else 0) for j in range(n)] for p in positions]


def linear_change(F: HomogPoly, matrix: Sequence[Sequence[Scalar]]) -> HomogPoly:
    """Substitute x_j = sum_k A[k][j] y_k; the result lives in m = len(A) variables."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    m = len(rows)
    if m < 1 or any(len(row) != F.n for row in rows):
        raise DimensionMismatchError(f"Basis matrix must be m x {F.n} with m >= 1")

    def unit(k: int) -> Exponent:
        return tuple(1 if j == k else 0 for j in range(m))

    forms = [HomogPoly(m, 1, {unit(k): rows[k][j] for k in range(m)}) for j in range(F.n)]
    powers: Dict[Tuple[int, int], HomogPoly] = {}

    def power(j: int, e: int) -> HomogPoly:
        if (j, e) not in powers:
            powers[(j, e)] = forms[j] ** e
        return powers[(j, e)]

    result = HomogPoly.zero(m, F.d)
    for exponent, c in F.terms():
        term = HomogPoly.constant(m, c)
        for j, e in enumerate(exponent):
            if e:
                term = term * power(j, e)
        result = result + term
    return result


def linear_form_power(a: Sequence[Scalar], k: int) -> HomogPoly:
    """(a1 x1 + ... + an xn)^k expanded with multinomial coefficients."""
    a = [Fraction(v) for v in a]
    coeffs = {}
    for exponent in monomial_exponents(len(a), k):
        value = Fraction(multinomial(exponent))
        for v, e in zip(a, exponent):
            if e:
                value *= v ** e
        coeffs[exponent] = value
    return HomogPoly(len(a), k, coeffs)


def symmetric_matrix(F: HomogPoly) -> List[List[Fraction]]:
    """Matrix (F_ij) of a quadratic form, off-diagonal coefficients split evenly."""
    if F.d != 2:
        raise DegreeError(f"Only quadratic forms have a symmetric matrix here, got d={F.d}")
    n = F.n
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for exponent, c in F.coeffs.items():
        support = [i for i, e in enumerate(exponent) if e]
        if len(support) == 1:
            i = support[0]
            matrix[i][i] = c
        else:
            i, j = support
            matrix[i][j] = matrix[j][i] = c / 2
    return matrix


def from_symmetric_matrix(matrix: Sequence[Sequence[Scalar]]) -> HomogPoly:
    n = len(matrix)
    if n < 1 or any(len(row) != n for row in matrix):
        raise DimensionMismatchError("Quadratic form matrix must be square and non-empty")
    coeffs = {}
    for i in range(n):
        for j in range(i, n):
            if Fraction(matrix[i][j]) != Fraction(matrix[j][i]):
                raise DimensionMismatchError(f"Matrix is not symmetric at ({i}, {j})")
            exponent = [0] * n
            exponent[i] += 1
            exponent[j] += 1
            value = Fraction(matrix[i][j])
            coeffs[tuple(exponent)] = value if i == j else 2 * value
    return HomogPoly(n, 2, coeffs)

