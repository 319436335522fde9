"""
Exact real-root machinery for univariate rational polynomials.

Root counts come from the signatures of trace forms on Q[t]/(p) built out of
Newton power sums, with Sturm sequences as an independent check. The ray
predicates decide the sign of p on t >= 0 without any floating point.
"""

import logging
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from ..utils.linalg import identity, is_symmetric
from .errors import (
    DegreeError,
    DimensionMismatchError,
    InvariantViolation,
    NonMonicError,
    RootAtZeroError,
    ZeroPolynomialError,
)
from .unipoly import UniPoly

logger = logging.getLogger(__name__)

SymMatrix = List[List[Fraction]]
Interval = Tuple[Fraction, Fraction]


class SignatureReport(NamedTuple):
    rank: int
    positive: int
    negative: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


class RootCounts(NamedTuple):
    real_roots: int
    positive_real_roots: int


class Congruence(NamedTuple):
    """transform * M * transform^T = diag(pivots)."""

    pivots: List[Fraction]
    transform: SymMatrix


def _require_monic(p: UniPoly) -> None:
    if p.is_zero or p.degree < 1:
        raise DegreeError(f"Expected a polynomial of degree >= 1, got {p.to_text()}")
    if not p.is_monic:
        raise NonMonicError(f"Expected a monic polynomial, got leading coefficient {p.leading}")


def power_sums(p: UniPoly, count: int) -> List[Fraction]:
    """s_0 .. s_{count-1} of the roots of monic p, by Newton's identities."""
    _require_monic(p)
    m = p.degree
    a = [p.coefficient(m - i) for i in range(m + 1)]
    sums: List[Fraction] = []
    for k in range(count):
        if k == 0:
            sums.append(Fraction(m))
            continue
        total = sum((a[i] * sums[k - i] for i in range(1, min(k, m + 1))), Fraction(0))
        if k <= m:
            total += k * a[k]
        sums.append(-total)
    return sums


def trace_form(p: UniPoly, u: UniPoly) -> SymMatrix:
    """Matrix of x -> tr(u x^2) on Q[t]/(p) in the basis 1, t, ..., t^(m-1)."""
    _require_monic(p)
    m = p.degree
    sums = power_sums(p, m)
    t = UniPoly.t()
    reduced = []
    current = u % p
    for _ in range(2 * m - 1):
        reduced.append(current)
        current = (current * t) % p
    traces = [sum((r.coefficient(k) * sums[k] for k in range(m)), Fraction(0)) for r in reduced]
    return [[traces[i + j] for j in range(m)] for i in range(m)]


def congruence_diagonalize(matrix: Sequence[Sequence]) -> Congruence:
    """Symmetric elimination with pivot repair; each transform row is an exact direction."""
    if not is_symmetric(matrix):
        raise DimensionMismatchError("Congruence diagonalization needs a symmetric matrix")
    n = len(matrix)
    A = [[Fraction(v) for v in row] for row in matrix]
    P = identity(n)
    pivots: List[Fraction] = []

    def swap(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        P[i], P[j] = P[j], P[i]

    def add_into(i: int, j: int) -> None:
        # x_i += x_j on both sides
        A[i] = [a + b for a, b in zip(A[i], A[j])]
        for row in A:
            row[i] += row[j]
        P[i] = [a + b for a, b in zip(P[i], P[j])]

    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    pivots.append(Fraction(0))
                    continue
                add_into(k, j)
        pivot = A[k][k]
        for r in range(k + 1, n):
            factor = A[r][k] / pivot
            if factor:
                A[r] = [a - factor * b for a, b in zip(A[r], A[k])]
                for row in A:
                    row[r] -= factor * row[k]
                P[r] = [a - factor * b for a, b in zip(P[r], P[k])]
        pivots.append(pivot)
    return Congruence(pivots=pivots, transform=P)


def signature(matrix: Sequence[Sequence]) -> SignatureReport:
    """Exact inertia (rank, positive, negative)."""
    pivots = congruence_diagonalize(matrix).pivots
    positive = sum(1 for v in pivots if v > 0)
    negative = sum(1 for v in pivots if v < 0)
    return SignatureReport(rank=positive + negative, positive=positive, negative=negative)


def sylvester_signatures(p: UniPoly) -> Tuple[int, int]:
    """(sg Q_1, sg Q_t) for monic p."""
    return signature(trace_form(p, UniPoly([1]))).signature, signature(trace_form(p, UniPoly.t())).signature


def sylvester_root_counts(p: UniPoly) -> RootCounts:
    """Distinct real and distinct positive real roots of monic p with p(0) != 0."""
    if p.is_zero:
        raise ZeroPolynomialError("Root counts of the zero polynomial are undefined")
    if not p.is_monic:
        raise NonMonicError(f"Expected a monic polynomial, got leading coefficient {p.leading}")
    if p.coefficient(0) == 0:
        raise RootAtZeroError("p(0) = 0; divide out the root at t = 0 first")
    if p.degree == 0:
        return RootCounts(0, 0)
    sg_one, sg_t = sylvester_signatures(p)
    if (sg_one + sg_t) % 2:
        raise InvariantViolation(f"Trace form signatures {sg_one}, {sg_t} have odd sum")
    return RootCounts(real_roots=sg_one, positive_real_roots=(sg_one + sg_t) // 2)


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), monic."""
    if p.is_zero:
        raise ZeroPolynomialError("The zero polynomial has no squarefree part")
    if p.degree == 0:
        return UniPoly([1])
    return UniPoly.from_sympy(p.as_sympy().sqf_part()).monic()


def squarefree_decomposition(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Monic squarefree a_i with p = lc * prod a_i^i, by increasing multiplicity."""
    if p.is_zero:
        raise ZeroPolynomialError("The zero polynomial has no squarefree decomposition")
    _, factors = p.as_sympy().sqf_list()
    return [(UniPoly.from_sympy(factor).monic(), multiplicity) for factor, multiplicity in factors]


def odd_multiplicity_part(p: UniPoly) -> UniPoly:
    """Monic product of the roots of odd multiplicity, each once."""
    result = UniPoly([1])
    for factor, multiplicity in squarefree_decomposition(p):
        if multiplicity % 2:
            result = result * factor
    return result


def sturm_sequence(p: UniPoly) -> List[UniPoly]:
    """Sturm chain of p; sympy reduces p to its squarefree part first."""
    if p.is_zero:
        raise ZeroPolynomialError("The zero polynomial has no Sturm sequence")
    return [UniPoly.from_sympy(q) for q in p.as_sympy().sturm()]


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _sign_at(q: UniPoly, x: Optional[Fraction], infinity: int) -> int:
    """Sign of q at x, or at infinity * oo when x is None."""
    if x is not None:
        return _sign(q(x))
    lead = _sign(q.leading)
    return lead if infinity > 0 or q.degree % 2 == 0 else -lead


def sign_variations(sequence: Sequence[UniPoly], x: Optional[Fraction], infinity: int = 1) -> int:
    signs = [s for s in (_sign_at(q, x, infinity) for q in sequence) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: UniPoly, a: Optional[Fraction] = None, b: Optional[Fraction] = None) -> int:
    """Distinct real roots in (a, b]; None stands for -oo at a and +oo at b."""
    if p.is_zero:
        raise ZeroPolynomialError("Cannot count roots of the zero polynomial")
    if a is not None and b is not None and Fraction(a) >= Fraction(b):
        return 0
    sequence = sturm_sequence(squarefree_part(p))
    low = None if a is None else Fraction(a)
    high = None if b is None else Fraction(b)
    return sign_variations(sequence, low, -1) - sign_variations(sequence, high, 1)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root r has |r| < bound."""
    if p.is_zero:
        raise ZeroPolynomialError("The zero polynomial has no root bound")
    lead = p.leading
    return 1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=Fraction(0))


def _refine(sequence: List[UniPoly], interval: Interval) -> Interval:
    a, b = interval
    mid = (a + b) / 2
    if sign_variations(sequence, a) - sign_variations(sequence, mid) == 1:
        return a, mid
    return mid, b


def isolate_real_roots(p: UniPoly, lower: Optional[Fraction] = None) -> List[Interval]:
    """Disjoint intervals (a, b], one per distinct real root above lower, in increasing order."""
    q = squarefree_part(p)
    if q.degree == 0:
        return []
    sequence = sturm_sequence(q)
    bound = root_bound(q)
    start = -bound if lower is None else max(Fraction(lower), -bound)
    if start >= bound:
        return []

    found: List[Interval] = []
    pending = [(start, bound)]
    while pending:
        a, b = pending.pop()
        count = sign_variations(sequence, a) - sign_variations(sequence, b)
        if count == 1:
            found.append((a, b))
        elif count > 1:
            mid = (a + b) / 2
            pending.extend([(a, mid), (mid, b)])
    found.sort()
    logger.debug(f"Isolated {len(found)} real roots of {q.to_text()}")
    return found


def gap_points(p: UniPoly, lower: Optional[Fraction] = None) -> List[Fraction]:
    """One rational point strictly inside each gap between consecutive distinct roots above lower."""
    q = squarefree_part(p)
    intervals = isolate_real_roots(q, lower)
    if not intervals:
        return [Fraction(0) if lower is None else Fraction(lower) + 1]
    sequence = sturm_sequence(q)
    points: List[Fraction] = []

    if lower is not None:
        while intervals[0][0] <= lower:
            intervals[0] = _refine(sequence, intervals[0])
    points.append(intervals[0][0])

    for i in range(len(intervals) - 1):
        b = intervals[i][1]
        if q(b) != 0:
            points.append(b)
            continue
        while intervals[i + 1][0] <= b:
            intervals[i + 1] = _refine(sequence, intervals[i + 1])
        points.append(intervals[i + 1][0])

    last = intervals[-1][1]
    points.append(last if q(last) != 0 else last + 1)
    return points


def ray_witness(p: UniPoly) -> Optional[Fraction]:
    """A rational t >= 0 with p(t) < 0, or None."""
    if p.is_zero:
        return None
    if p(0) < 0:
        return Fraction(0)
    for t in gap_points(p, lower=Fraction(0)):
        if p(t) < 0:
            return t
    return None


def is_nonneg_on_ray(p: UniPoly) -> bool:
    """p(t) >= 0 for every real t >= 0."""
    if p.is_zero:
        raise ZeroPolynomialError("Ray predicates need a nonzero polynomial")
    q = p.shift_down(p.valuation())
    if q(0) < 0:
        return False
    return sturm_count(odd_multiplicity_part(q), Fraction(0), None) == 0


def is_positive_on_ray(p: UniPoly) -> bool:
    """p(t) > 0 for every real t >= 0."""
    if p.is_zero:
        raise ZeroPolynomialError("Ray predicates need a nonzero polynomial")
    if p(0) <= 0:
        return False
    if p.degree == 0:
        return True
    return sylvester_root_counts(squarefree_part(p)).positive_real_roots == 0
