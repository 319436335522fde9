from fractions import Fraction

import pytest

from app.core.certify import (
    CertificateKind,
    CertifyOptions,
    VerdictKind,
    certify,
    dehomogenize,
    find_counterexample,
    necessary_report,
    sufficient_report,
    sylvester_quadratic,
    verify_certificate,
)
from app.core.errors import OddDegreeError, ZeroPolynomialError
from app.core.hankel import Definiteness
from app.core.poly import HomogPoly, evaluate, from_symmetric_matrix, parse, reference_form
from app.core.resultant import discriminant
from app.core.unipoly import UniPoly

from .helpers import random_power_sums, random_rational_points, random_sums_of_squares


def kinds(verdict):
    return {c.kind for c in verdict.certificates}


def assert_certificates_verify(F, verdict):
    for certificate in verdict.certificates:
        assert verify_certificate(F, certificate), certificate.kind


def test_sylvester_quadratic():
    report = sylvester_quadratic(from_symmetric_matrix([[1, 0], [0, 1]]))
    assert report.positive and report.nonnegative

    report = sylvester_quadratic(from_symmetric_matrix([[1, 1], [1, 1]]))
    assert not report.positive and report.nonnegative
    assert [v for _, v in report.principal_minors] == [1, 1, 0]

    report = sylvester_quadratic(from_symmetric_matrix([[0, 0], [0, -1]]))
    assert report.leading_minors == [0, 0]
    assert not report.nonnegative
    assert report.negative_minor == ((2,), -1)


def test_necessary_conditions_hold_for_reference():
    report = necessary_report(reference_form(3, 2))
    assert not report.violations
    for entry in report.entries:
        assert entry.chi == UniPoly.parse("1 + t") ** entry.restricted.n


def test_negative_definite_quadratic_passes_on_the_whole_space():
    report = necessary_report(-reference_form(2, 2))
    full = report.entries[0]
    assert full.label == "full"
    assert full.discriminant == 1
    assert full.chi == UniPoly.parse("(t - 1)^2")
    assert not full.violated


def test_subspace_detects_negative_square():
    report = necessary_report(parse("x1^2 - x2^2", 2))
    violated = {e.label: e for e in report.violations}
    assert "S={2}" in violated
    assert violated["S={2}"].discriminant == -1


def test_sufficient_report():
    report = sufficient_report(reference_form(2, 4))
    assert report.hankel_definiteness == Definiteness.POSITIVE_SEMIDEFINITE
    assert report.chi == UniPoly.parse("(1 + t)^6") and report.chi_positive

    report = sufficient_report(parse("x1^2 + 2 x2^2", 2))
    assert report.chi == UniPoly.parse("t^2 + 3 t + 2") and report.chi_positive

    report = sufficient_report(parse("x1^2 x2^2", 2))
    assert report.hankel_definiteness == Definiteness.INDEFINITE
    assert report.chi.coefficient(0) == 0 and not report.chi_positive


def test_counterexample_search(indefinite_quartic):
    point = find_counterexample(indefinite_quartic)
    assert point == (1, 1)
    assert indefinite_quartic(point) == -1
    assert find_counterexample(reference_form(2, 4), budget=50) is None
    assert find_counterexample(-reference_form(3, 2), budget=0) == (1, 0, 0)


def test_counterexample_search_is_reproducible():
    F = parse("x1^4 + x2^4 + x3^4 - 5/2 x1 x2 x3^2", 3)
    assert find_counterexample(F, budget=30, seed=1) == find_counterexample(F, budget=30, seed=1)


def test_certify_reference_is_positive(quartic_reference):
    verdict = certify(quartic_reference)
    assert verdict.kind == VerdictKind.POSITIVE
    assert CertificateKind.CHI_POSITIVE_RAY in kinds(verdict)
    assert CertificateKind.HANKEL_PSD in kinds(verdict)
    assert verdict.witness is None
    assert_certificates_verify(quartic_reference, verdict)


def test_certify_unknown_for_singular_nonnegative_form():
    F = parse("x1^2 x2^2", 2)
    verdict = certify(F)
    assert verdict.kind == VerdictKind.UNKNOWN
    assert not verdict.certificates
    names = [t.name for t in verdict.tests]
    assert names[:2] == ["hankel", "chi_positive_ray"]
    assert "necessary[full]" in names and names[-1] == "sampler"


def test_certify_finds_witness(indefinite_quartic):
    verdict = certify(indefinite_quartic)
    assert verdict.kind == VerdictKind.NOT_NONNEGATIVE
    assert verdict.witness == (1, 1)
    assert CertificateKind.WITNESS_POINT in kinds(verdict)
    assert_certificates_verify(indefinite_quartic, verdict)


def test_certify_quadratics():
    verdict = certify(parse("x1^2 + x1 x2 + x2^2", 2))
    assert verdict.kind == VerdictKind.POSITIVE
    assert kinds(verdict) == {CertificateKind.SYLVESTER_MINORS}

    F = parse("(x1 + x2)^2", 2)
    assert certify(F).kind == VerdictKind.NONNEGATIVE

    F = parse("x1^2 - x2^2", 2)
    verdict = certify(F)
    assert verdict.kind == VerdictKind.NOT_NONNEGATIVE
    assert F(verdict.witness) < 0
    assert_certificates_verify(F, verdict)


def test_quadratic_witness_needs_pivot_repair():
    F = parse("x1 x2", 2)
    verdict = certify(F)
    assert verdict.kind == VerdictKind.NOT_NONNEGATIVE
    assert F(verdict.witness) < 0


def test_user_subspace_violation(indefinite_quartic):
    options = CertifyOptions(extra_subspaces=(((Fraction(1), Fraction(1)),),), budget=0)
    verdict = certify(indefinite_quartic, options)
    assert verdict.kind == VerdictKind.NOT_NONNEGATIVE
    subspace = [c for c in verdict.certificates if c.note == "basis[1]"]
    assert subspace and subspace[0].kind == CertificateKind.SUBSPACE_VIOLATED
    assert subspace[0].payload["restricted"] == parse("-x1^4", 1)
    assert_certificates_verify(indefinite_quartic, verdict)


def test_reference_forms_binding():
    F = parse("x1^4 - x1^2 x2^2 + x2^4", 2)
    positive_ref = parse("x1^4 + x1^2 x2^2 + x2^4", 2)
    options = CertifyOptions(extra_references=(positive_ref, -reference_form(2, 4)))
    verdict = certify(F, options)
    outcomes = {t.name: t.outcome for t in verdict.tests}
    assert outcomes["necessary[reference[1]]"] in ("passed", "violated")
    assert outcomes["necessary[reference[2]]"] == "informational"


def test_parallel_options_agree(indefinite_quartic):
    serial = certify(indefinite_quartic)
    parallel = certify(indefinite_quartic, CertifyOptions(parallel=True))
    assert serial.kind == parallel.kind
    assert serial.certificates == parallel.certificates


def test_capacity_fallback(small_capacity):
    verdict = certify(reference_form(3, 4), CertifyOptions(budget=20))
    assert verdict.kind == VerdictKind.NONNEGATIVE
    outcomes = {t.name: t.outcome for t in verdict.tests}
    assert outcomes["chi_positive_ray"] == "skipped"
    assert outcomes["necessary[full]"] == "skipped"
    assert outcomes["necessary[S={1,2}]"] == "passed"


def test_sums_of_squares_are_never_refuted():
    for F in random_sums_of_squares(2, 2, 6, seed=31):
        assert discriminant(F) >= 0
        verdict = certify(F, CertifyOptions(budget=40))
        assert verdict.kind != VerdictKind.NOT_NONNEGATIVE
        assert_certificates_verify(F, verdict)


def test_tampered_certificate_is_rejected(indefinite_quartic):
    verdict = certify(indefinite_quartic)
    witness = next(c for c in verdict.certificates if c.kind == CertificateKind.WITNESS_POINT)
    forged = type(witness)(witness.kind, {"point": (1, 0), "value": Fraction(-1)})
    assert not verify_certificate(indefinite_quartic, forged)


def test_dehomogenize():
    F = parse("x1^4 - 3 x1^2 x2^2 + 2 x2^4", 2)
    assert dehomogenize(F, 1) == UniPoly.parse("2 t^4 - 3 t^2 + 1")
    assert dehomogenize(F, 2) == UniPoly.parse("t^4 - 3 t^2 + 2")


def test_domain_errors():
    with pytest.raises(OddDegreeError):
        certify(parse("x1^3 + x2^3", 2))
    with pytest.raises(ZeroPolynomialError):
        certify(HomogPoly.zero(2, 4))


@pytest.mark.parametrize("degree", [4, 6])
def test_power_sums_are_certified(degree):
    for F in random_power_sums(2, degree, 5, seed=degree):
        sufficient = sufficient_report(F)
        assert sufficient.hankel_definiteness in (Definiteness.POSITIVE_DEFINITE, Definiteness.POSITIVE_SEMIDEFINITE)
        assert not necessary_report(F).violations
        verdict = certify(F, CertifyOptions(budget=100))
        assert verdict.kind in (VerdictKind.POSITIVE, VerdictKind.NONNEGATIVE)
        assert verdict.witness is None


@pytest.mark.slow
def test_ternary_power_sums_are_certified():
    for F in random_power_sums(3, 4, 2, seed=41):
        verdict = certify(F, CertifyOptions(budget=100))
        assert verdict.kind in (VerdictKind.POSITIVE, VerdictKind.NONNEGATIVE)


def assert_power_sum_is_sound(F, seed):
    sufficient = sufficient_report(F)
    assert sufficient.hankel_definiteness in (Definiteness.POSITIVE_DEFINITE, Definiteness.POSITIVE_SEMIDEFINITE)
    necessary = necessary_report(F)
    assert not necessary.violations
    for entry in necessary.entries:
        if entry.discriminant is not None:
            assert entry.discriminant >= 0, entry.label
    verdict = certify(F, CertifyOptions(budget=50))
    assert verdict.kind in (VerdictKind.POSITIVE, VerdictKind.NONNEGATIVE)
    assert verdict.witness is None
    assert_certificates_verify(F, verdict)
    for point in random_rational_points(F.n, 1000, seed=seed):
        assert evaluate(F, point) >= 0


@pytest.mark.parametrize("n, degree, count", [(2, 2, 15), (2, 4, 15), (2, 6, 10), (3, 2, 10)])
def test_power_sum_sweep(n, degree, count):
    for k, F in enumerate(random_power_sums(n, degree, count, seed=n * 100 + degree)):
        assert_power_sum_is_sound(F, seed=k)


@pytest.mark.slow
def test_power_sum_sweep_ternary_quartics():
    for k, F in enumerate(random_power_sums(3, 4, 5, seed=304)):
        assert_power_sum_is_sound(F, seed=k)


@pytest.mark.slow
def test_power_sum_sweep_ternary_sextics(small_capacity):
    for k, F in enumerate(random_power_sums(3, 6, 3, seed=306)):
        verdict = certify(F, CertifyOptions(budget=50))
        assert verdict.kind in (VerdictKind.POSITIVE, VerdictKind.NONNEGATIVE)
        assert verdict.witness is None
        for point in random_rational_points(3, 1000, seed=k):
            assert evaluate(F, point) >= 0


@pytest.mark.parametrize("lam", [2, Fraction(1, 3), Fraction(7, 2)])
def test_verdict_is_invariant_under_positive_scaling(lam, indefinite_quartic, quartic_reference):
    forms = [
        indefinite_quartic,
        quartic_reference,
        parse("x1^2 x2^2", 2),
        parse("x1^2 + x1 x2 + x2^2", 2),
        parse("x1 x2", 2),
    ]
    forms += list(random_power_sums(2, 4, 3, seed=7))
    for F in forms:
        assert certify(F.scale(lam), CertifyOptions(budget=40)).kind == certify(F, CertifyOptions(budget=40)).kind
