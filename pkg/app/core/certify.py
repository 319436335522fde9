"""
Positivity certification pipeline.

Sufficient tests (Hankel definiteness, the characteristic polynomial positive
on the ray) prove F > 0 or F >= 0; necessary tests (discriminants and
characteristic polynomials on the whole space and on subspaces) prove F is
not >= 0 when they fail. A bounded sampler looks for an explicit negative
point. Every claim is stored as a Certificate whose payload re-verifies it.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..utils.linalg import leading_principal_minors, principal_minors
from .charpoly import char_poly, pencil_polynomial, robust_discriminant
from .errors import (
    CapacityError,
    DegreeError,
    InvariantViolation,
    OddDegreeError,
    ZeroPolynomialError,
)
from .hankel import Definiteness, HankelForm, definiteness, hankel_matrix, mu
from .poly import HomogPoly, evaluate, linear_change, restrict, symmetric_matrix
from .realroots import (
    SignatureReport,
    congruence_diagonalize,
    gap_points,
    is_nonneg_on_ray,
    is_positive_on_ray,
    ray_witness,
    signature,
)
from .unipoly import UniPoly

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]


class VerdictKind(str, Enum):
    POSITIVE = "POSITIVE"
    NONNEGATIVE = "NONNEGATIVE"
    NOT_NONNEGATIVE = "NOT_NONNEGATIVE"
    UNKNOWN = "UNKNOWN"


class CertificateKind(str, Enum):
    HANKEL_PD = "HANKEL_PD"
    HANKEL_PSD = "HANKEL_PSD"
    CHI_POSITIVE_RAY = "CHI_POSITIVE_RAY"
    CHI_NECESSARY_VIOLATED = "CHI_NECESSARY_VIOLATED"
    DISC_NEGATIVE = "DISC_NEGATIVE"
    SUBSPACE_VIOLATED = "SUBSPACE_VIOLATED"
    SYLVESTER_MINORS = "SYLVESTER_MINORS"
    WITNESS_POINT = "WITNESS_POINT"


SUFFICIENT_KINDS = {CertificateKind.HANKEL_PD, CertificateKind.HANKEL_PSD, CertificateKind.CHI_POSITIVE_RAY}
VIOLATION_KINDS = {
    CertificateKind.CHI_NECESSARY_VIOLATED,
    CertificateKind.DISC_NEGATIVE,
    CertificateKind.SUBSPACE_VIOLATED,
}


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    payload: Dict[str, Any]
    note: str = ""


@dataclass(frozen=True)
class CheckRecord:
    name: str
    outcome: str
    detail: str = ""
    seconds: float = 0.0


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    certificates: Tuple[Certificate, ...] = ()
    witness: Optional[Point] = None
    tests: Tuple[CheckRecord, ...] = ()


@dataclass(frozen=True)
class CertifyOptions:
    budget: Optional[int] = None
    seed: Optional[int] = None
    parallel: bool = False
    extra_subspaces: Tuple[Tuple[Tuple[Fraction, ...], ...], ...] = ()
    extra_references: Tuple[HomogPoly, ...] = ()
    check_consistency: bool = True

    @property
    def sampler_budget(self) -> int:
        return settings.SAMPLER_BUDGET if self.budget is None else self.budget

    @property
    def sampler_seed(self) -> int:
        return settings.SAMPLER_SEED if self.seed is None else self.seed


@dataclass
class SylvesterQuadraticReport:
    matrix: List[List[Fraction]]
    positive: bool
    nonnegative: bool
    leading_minors: List[Fraction]
    principal_minors: List[Tuple[Tuple[int, ...], Fraction]]

    @property
    def negative_minor(self) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
        return next(((s, v) for s, v in self.principal_minors if v < 0), None)


@dataclass
class NecessaryEntry:
    label: str
    restricted: Optional[HomogPoly] = None
    subset: Optional[Tuple[int, ...]] = None
    basis: Optional[List[List[Fraction]]] = None
    reference: Optional[HomogPoly] = None
    discriminant: Optional[Fraction] = None
    chi: Optional[UniPoly] = None
    chi_nonneg: Optional[bool] = None
    ray_witness: Optional[Fraction] = None
    binding: bool = True
    skipped: Optional[str] = None
    seconds: float = 0.0

    @property
    def violated(self) -> bool:
        return self.binding and self.chi_nonneg is False


@dataclass
class NecessaryReport:
    entries: List[NecessaryEntry] = field(default_factory=list)

    @property
    def violations(self) -> List[NecessaryEntry]:
        return [e for e in self.entries if e.violated]


@dataclass
class SufficientReport:
    hankel: HankelForm
    hankel_signature: SignatureReport
    hankel_definiteness: Definiteness
    chi: Optional[UniPoly] = None
    chi_positive: Optional[bool] = None
    skipped: Optional[str] = None
    hankel_seconds: float = 0.0
    chi_seconds: float = 0.0


class _ChiMemo:
    """Characteristic polynomials computed during one certification run."""

    def __init__(self, parallel: bool = False):
        self.parallel = parallel
        self._values: Dict[HomogPoly, UniPoly] = {}

    def __call__(self, G: HomogPoly) -> UniPoly:
        if G not in self._values:
            self._values[G] = char_poly(G, parallel=self.parallel)
        return self._values[G]


def _require_certifiable(F: HomogPoly) -> None:
    if F.is_zero:
        raise ZeroPolynomialError("Cannot certify the zero polynomial")
    if F.d == 0:
        raise DegreeError("Constant forms are outside the certifier's domain")
    if F.d % 2:
        raise OddDegreeError(f"Positivity needs an even degree, got {F.d}")


def _subset_label(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


def sylvester_quadratic(F: HomogPoly) -> SylvesterQuadraticReport:
    """Leading and principal minors of the symmetric matrix of a quadratic form."""
    if F.d != 2:
        raise DegreeError(f"Sylvester's criterion applies to quadratic forms, got d={F.d}")
    A = symmetric_matrix(F)
    leading = leading_principal_minors(A)
    minors = [(tuple(i + 1 for i in subset), value) for subset, value in principal_minors(A)]
    return SylvesterQuadraticReport(
        matrix=A,
        positive=all(v > 0 for v in leading),
        nonnegative=all(v >= 0 for _, v in minors),
        leading_minors=leading,
        principal_minors=minors,
    )


def _reference_is_positive(J: HomogPoly) -> bool:
    """Cheap sufficient check that a user-supplied reference form is positive."""
    if J.d % 2 or J.is_zero:
        return False
    if definiteness(hankel_matrix(J)) == Definiteness.POSITIVE_DEFINITE:
        return True
    try:
        return is_positive_on_ray(char_poly(J))
    except CapacityError:
        return False


def _evaluate_entry(entry: NecessaryEntry, chi_of: Callable[[HomogPoly], UniPoly]) -> NecessaryEntry:
    start = time.perf_counter()
    try:
        if entry.reference is not None:
            chi = pencil_polynomial(entry.restricted, entry.reference)
        else:
            chi = chi_of(entry.restricted)
    except CapacityError as e:
        entry.skipped = str(e)
        logger.warning(f"Necessary test {entry.label} skipped: {e}")
    else:
        entry.chi = chi
        entry.discriminant = chi.coefficient(0)
        if chi.is_zero:
            entry.chi_nonneg = True
        else:
            entry.chi_nonneg = is_nonneg_on_ray(chi)
            if not entry.chi_nonneg:
                entry.ray_witness = ray_witness(chi)
    entry.seconds = time.perf_counter() - start
    logger.debug(f"Necessary test {entry.label}: nonneg={entry.chi_nonneg}")
    return entry


def _necessary_entries(F: HomogPoly, options: CertifyOptions) -> List[NecessaryEntry]:
    n = F.n
    full = tuple(range(1, n + 1))
    entries = [NecessaryEntry(label="full", restricted=F, subset=full)]
    if n <= settings.MAX_SUBSPACE_VARIABLES:
        subsets = [s for size in range(n - 1, 0, -1) for s in combinations(full, size)]
    else:
        subsets = [(i,) for i in full]
    for subset in subsets:
        entries.append(
            NecessaryEntry(label=f"S={_subset_label(subset)}", restricted=restrict(F, subset), subset=subset)
        )
    for k, basis in enumerate(options.extra_subspaces, start=1):
        rows = [[Fraction(v) for v in row] for row in basis]
        entries.append(NecessaryEntry(label=f"basis[{k}]", restricted=linear_change(F, rows), basis=rows))
    for k, J in enumerate(options.extra_references, start=1):
        entries.append(
            NecessaryEntry(
                label=f"reference[{k}]",
                restricted=F,
                reference=J,
                binding=_reference_is_positive(J),
            )
        )
    return entries


def necessary_report(
    F: HomogPoly,
    options: Optional[CertifyOptions] = None,
    chi_of: Optional[Callable[[HomogPoly], UniPoly]] = None,
) -> NecessaryReport:
    """Delta and chi on the whole space, coordinate subspaces and any user subspaces or references."""
    if F.d % 2:
        raise OddDegreeError(f"Necessary conditions need an even degree, got {F.d}")
    options = options or CertifyOptions()
    chi_of = chi_of or _ChiMemo(parallel=False)
    entries = _necessary_entries(F, options)
    if options.parallel and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=settings.PARALLEL_WORKERS) as executor:
            entries = list(executor.map(lambda e: _evaluate_entry(e, chi_of), entries))
    else:
        entries = [_evaluate_entry(e, chi_of) for e in entries]
    return NecessaryReport(entries=entries)


def sufficient_report(
    F: HomogPoly,
    options: Optional[CertifyOptions] = None,
    chi_of: Optional[Callable[[HomogPoly], UniPoly]] = None,
) -> SufficientReport:
    """Hankel definiteness and strict positivity of chi on the ray."""
    if F.d % 2:
        raise OddDegreeError(f"Sufficient conditions need an even degree, got {F.d}")
    options = options or CertifyOptions()
    chi_of = chi_of or _ChiMemo(parallel=options.parallel)

    start = time.perf_counter()
    H = hankel_matrix(F)
    sig = signature(H.matrix)
    report = SufficientReport(
        hankel=H,
        hankel_signature=sig,
        hankel_definiteness=definiteness(H),
        hankel_seconds=time.perf_counter() - start,
    )

    start = time.perf_counter()
    try:
        report.chi = chi_of(F)
        report.chi_positive = is_positive_on_ray(report.chi)
    except CapacityError as e:
        report.skipped = str(e)
        logger.warning(f"Characteristic polynomial skipped: {e}")
    report.chi_seconds = time.perf_counter() - start
    return report


def dehomogenize(F: HomogPoly, fixed: int) -> UniPoly:
    """F(1, t) for fixed=1 or F(t, 1) for fixed=2, binary forms only."""
    if F.n != 2:
        raise DegreeError("Dehomogenization is defined here for binary forms")
    d = F.d
    if fixed == 1:
        return UniPoly(F.coefficient((d - k, k)) for k in range(d + 1))
    return UniPoly(F.coefficient((k, d - k)) for k in range(d + 1))


def _candidate_points(F: HomogPoly, budget: int, seed: int):
    n = F.n
    for i in range(n):
        for s in (1, -1):
            yield tuple(Fraction(s if j == i else 0) for j in range(n))
    if n <= 12:
        for signs in product((1, -1), repeat=n):
            yield tuple(Fraction(s) for s in signs)
    rng = np.random.default_rng(seed)
    den = settings.SAMPLER_DENOMINATOR
    for _ in range(budget):
        coords = rng.integers(-den, den + 1, size=n)
        face = int(rng.integers(n))
        coords[face] = den if rng.integers(2) else -den
        yield tuple(Fraction(int(c), den) for c in coords)
    if n == 2:
        for fixed in (1, 2):
            p = dehomogenize(F, fixed)
            if p.is_zero:
                continue
            for t in gap_points(p):
                yield (Fraction(1), t) if fixed == 1 else (t, Fraction(1))


def find_counterexample(F: HomogPoly, budget: Optional[int] = None, seed: Optional[int] = None) -> Optional[Point]:
    """A nonzero rational point with F < 0, searched deterministically."""
    budget = settings.SAMPLER_BUDGET if budget is None else budget
    seed = settings.SAMPLER_SEED if seed is None else seed
    if budget < 0:
        raise ValueError(f"Sampler budget must be non-negative, got {budget}")
    for point in _candidate_points(F, budget, seed):
        if evaluate(F, point) < 0:
            return point
    return None


def _quadratic_witness(A: List[List[Fraction]]) -> Optional[Point]:
    congruence = congruence_diagonalize(A)
    for pivot, row in zip(congruence.pivots, congruence.transform):
        if pivot < 0:
            return tuple(row)
    return None


def _certify_quadratic(F: HomogPoly, options: CertifyOptions) -> Verdict:
    start = time.perf_counter()
    report = sylvester_quadratic(F)
    seconds = time.perf_counter() - start
    if options.check_consistency:
        sig = signature(report.matrix)
        if report.positive != (sig.positive == F.n) or report.nonnegative != (sig.negative == 0):
            raise InvariantViolation("Sylvester minors disagree with the signature of the form")

    payload = {"matrix": report.matrix}
    if report.positive:
        payload.update(claim="positive", leading_minors=report.leading_minors)
        kind = VerdictKind.POSITIVE
    elif report.nonnegative:
        payload.update(claim="nonnegative", principal_minors=report.principal_minors)
        kind = VerdictKind.NONNEGATIVE
    else:
        subset, value = report.negative_minor
        payload.update(claim="not_nonnegative", subset=subset, minor=value)
        kind = VerdictKind.NOT_NONNEGATIVE
    certificates = [Certificate(CertificateKind.SYLVESTER_MINORS, payload)]
    test = CheckRecord("sylvester_minors", kind.value, f"leading minors {[str(v) for v in report.leading_minors]}", seconds)

    witness = None
    if kind == VerdictKind.NOT_NONNEGATIVE:
        witness = _quadratic_witness(report.matrix)
        if witness is None or evaluate(F, witness) >= 0:
            raise InvariantViolation("Indefinite quadratic form without a negative direction")
        certificates.append(
            Certificate(CertificateKind.WITNESS_POINT, {"point": witness, "value": evaluate(F, witness)})
        )
    logger.info(f"Quadratic form {F.to_text()}: {kind.value}")
    return Verdict(kind=kind, certificates=tuple(certificates), witness=witness, tests=(test,))


def _violation_certificate(F: HomogPoly, entry: NecessaryEntry) -> Certificate:
    payload: Dict[str, Any] = {
        "restricted": entry.restricted,
        "discriminant": entry.discriminant,
        "chi": entry.chi,
        "ray_witness": entry.ray_witness,
    }
    if entry.reference is not None:
        payload["reference"] = entry.reference
        return Certificate(CertificateKind.CHI_NECESSARY_VIOLATED, payload, note=entry.label)
    if entry.basis is not None:
        payload["basis"] = entry.basis
        return Certificate(CertificateKind.SUBSPACE_VIOLATED, payload, note=entry.label)
    payload["subset"] = entry.subset
    if len(entry.subset) < F.n:
        return Certificate(CertificateKind.SUBSPACE_VIOLATED, payload, note=entry.label)
    if entry.discriminant < 0:
        return Certificate(CertificateKind.DISC_NEGATIVE, payload, note=entry.label)
    return Certificate(CertificateKind.CHI_NECESSARY_VIOLATED, payload, note=entry.label)


def _entry_record(entry: NecessaryEntry) -> CheckRecord:
    if entry.skipped:
        return CheckRecord(f"necessary[{entry.label}]", "skipped", entry.skipped, entry.seconds)
    outcome = "violated" if entry.violated else "passed"
    if not entry.binding:
        outcome = "informational"
    detail = f"Delta={entry.discriminant}, chi={entry.chi.to_text()}"
    return CheckRecord(f"necessary[{entry.label}]", outcome, detail, entry.seconds)


def certify(F: HomogPoly, options: Optional[CertifyOptions] = None) -> Verdict:
    """Run every test and fold the outcomes in a fixed priority order."""
    _require_certifiable(F)
    options = options or CertifyOptions()
    if F.d == 2:
        return _certify_quadratic(F, options)

    chi_of = _ChiMemo(parallel=options.parallel)
    tests: List[CheckRecord] = []
    certificates: List[Certificate] = []

    sufficient = sufficient_report(F, options, chi_of)
    tests.append(
        CheckRecord("hankel", sufficient.hankel_definiteness.value, str(tuple(sufficient.hankel_signature)), sufficient.hankel_seconds)
    )
    hankel_payload = {
        "basis": list(sufficient.hankel.basis.exponents),
        "matrix": sufficient.hankel.matrix,
        "signature": sufficient.hankel_signature,
    }
    if sufficient.hankel_definiteness == Definiteness.POSITIVE_DEFINITE:
        certificates.append(Certificate(CertificateKind.HANKEL_PD, hankel_payload))
    elif sufficient.hankel_definiteness == Definiteness.POSITIVE_SEMIDEFINITE:
        certificates.append(Certificate(CertificateKind.HANKEL_PSD, hankel_payload))

    if sufficient.skipped:
        tests.append(CheckRecord("chi_positive_ray", "skipped", sufficient.skipped, sufficient.chi_seconds))
    else:
        outcome = "passed" if sufficient.chi_positive else "failed"
        tests.append(CheckRecord("chi_positive_ray", outcome, sufficient.chi.to_text(), sufficient.chi_seconds))
        if sufficient.chi_positive:
            certificates.append(Certificate(CertificateKind.CHI_POSITIVE_RAY, {"chi": sufficient.chi}))

    necessary = necessary_report(F, options, chi_of)
    tests.extend(_entry_record(e) for e in necessary.entries)
    violations = [_violation_certificate(F, e) for e in necessary.violations]

    start = time.perf_counter()
    witness = find_counterexample(F, options.sampler_budget, options.sampler_seed)
    tests.append(
        CheckRecord("sampler", "found" if witness else "none", str(witness or ""), time.perf_counter() - start)
    )

    sufficient_found = [c for c in certificates if c.kind in SUFFICIENT_KINDS]
    if options.check_consistency and sufficient_found and (violations or witness):
        raise InvariantViolation(
            f"Sufficient certificate {sufficient_found[0].kind.value} coexists with a refutation of {F.to_text()}"
        )

    kinds = {c.kind for c in certificates}
    if CertificateKind.HANKEL_PD in kinds or CertificateKind.CHI_POSITIVE_RAY in kinds:
        verdict = VerdictKind.POSITIVE
    elif CertificateKind.HANKEL_PSD in kinds:
        verdict = VerdictKind.NONNEGATIVE
    elif violations or witness:
        verdict = VerdictKind.NOT_NONNEGATIVE
        certificates.extend(violations)
        if witness:
            certificates.append(
                Certificate(CertificateKind.WITNESS_POINT, {"point": witness, "value": evaluate(F, witness)})
            )
    else:
        verdict = VerdictKind.UNKNOWN

    logger.info(f"Certified {F.to_text()}: {verdict.value}")
    return Verdict(kind=verdict, certificates=tuple(certificates), witness=witness, tests=tuple(tests))


def _check_violation(G: HomogPoly, chi: UniPoly, payload: Dict[str, Any]) -> bool:
    if payload.get("restricted") is not None and payload["restricted"] != G:
        return False
    if chi.is_zero or is_nonneg_on_ray(chi):
        return False
    t = payload.get("ray_witness")
    return t is None or (t >= 0 and chi(t) < 0)


def verify_certificate(F: HomogPoly, certificate: Certificate) -> bool:
    """Re-establish a certificate's claim about F from its payload."""
    kind, payload = certificate.kind, certificate.payload
    if kind in (CertificateKind.HANKEL_PD, CertificateKind.HANKEL_PSD):
        H = hankel_matrix(F)
        if [list(r) for r in payload["matrix"]] != H.matrix or mu(H) != F:
            return False
        expected = Definiteness.POSITIVE_DEFINITE if kind == CertificateKind.HANKEL_PD else Definiteness.POSITIVE_SEMIDEFINITE
        return definiteness(payload["matrix"]) == expected
    if kind == CertificateKind.CHI_POSITIVE_RAY:
        chi = payload["chi"]
        return char_poly(F) == chi and is_positive_on_ray(chi)
    if kind == CertificateKind.DISC_NEGATIVE:
        return payload["discriminant"] < 0 and robust_discriminant(F) == payload["discriminant"]
    if kind == CertificateKind.SUBSPACE_VIOLATED:
        if payload.get("basis") is not None:
            G = linear_change(F, payload["basis"])
        else:
            G = restrict(F, payload["subset"])
        return _check_violation(G, char_poly(G), payload)
    if kind == CertificateKind.CHI_NECESSARY_VIOLATED:
        J = payload.get("reference")
        if J is not None:
            return _reference_is_positive(J) and _check_violation(F, pencil_polynomial(F, J), payload)
        return _check_violation(F, char_poly(F), payload)
    if kind == CertificateKind.SYLVESTER_MINORS:
        report = sylvester_quadratic(F)
        if report.matrix != [list(r) for r in payload["matrix"]]:
            return False
        claim = payload.get("claim")
        if claim == "positive":
            return report.positive
        if claim == "nonnegative":
            return report.nonnegative
        if claim == "not_nonnegative":
            subset = tuple(payload["subset"])
            return dict(report.principal_minors).get(subset) == payload["minor"] and payload["minor"] < 0
        return False
    if kind == CertificateKind.WITNESS_POINT:
        value = evaluate(F, payload["point"])
        return value < 0 and value == payload["value"]
    return False
