import logging
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ..core.certify import Certificate, CertifyOptions, Verdict, certify
from ..core.charpoly import char_poly, char_poly_on_subspace, robust_discriminant
from ..core.errors import DegenerateSpecializationError, DimensionMismatchError
from ..core.hankel import HankelConvention, definiteness, hankel_matrix, mu
from ..core.poly import HomogPoly, linear_change, num_monomials, parse, restrict
from ..core.realroots import (
    is_nonneg_on_ray,
    is_positive_on_ray,
    ray_witness,
    signature,
    squarefree_part,
    sturm_count,
    sylvester_root_counts,
)
from ..core.resultant import discriminant, discriminant_degree
from ..core.unipoly import UniPoly
from ..models.report import CertificateEntry, CheckEntry, Dimensions, Report
from ..utils.helpers import format_matrix, format_rational, parse_rational, to_jsonable

logger = logging.getLogger(__name__)


def dimensions(F: HomogPoly) -> Dimensions:
    return Dimensions(
        n=F.n,
        d=F.d,
        D=discriminant_degree(F.n, F.d) if F.d >= 2 else None,
        N=num_monomials(F.n, F.d),
    )


def read_matrix(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    try:
        return [[parse_rational(v) for v in row] for row in rows]
    except ValueError as e:
        raise DimensionMismatchError(f"Bad basis matrix: {e}") from e


def _certificate_entry(certificate: Certificate) -> CertificateEntry:
    return CertificateEntry(
        kind=certificate.kind.value,
        note=certificate.note,
        payload=to_jsonable(certificate.payload),
    )


def verdict_report(text: str, F: HomogPoly, verdict: Verdict, total: float) -> Report:
    timings = {t.name: t.seconds for t in verdict.tests}
    timings["total"] = total
    return Report(
        command="certify",
        input=text,
        polynomial=F.to_text(),
        dimensions=dimensions(F),
        verdict=verdict.kind.value,
        certificates=[_certificate_entry(c) for c in verdict.certificates],
        witness=[format_rational(v) for v in verdict.witness] if verdict.witness else None,
        tests=[CheckEntry(name=t.name, outcome=t.outcome, detail=t.detail) for t in verdict.tests],
        timings=timings,
    )


def certify_report(
    text: str,
    n: int,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    parallel: bool = False,
    bases: Sequence[Sequence[Sequence]] = (),
    references: Sequence[str] = (),
) -> Report:
    F = parse(text, n)
    options = CertifyOptions(
        budget=budget,
        seed=seed,
        parallel=parallel,
        extra_subspaces=tuple(tuple(tuple(row) for row in read_matrix(b)) for b in bases),
        extra_references=tuple(parse(J, n, F.d) for J in references),
    )
    start = time.perf_counter()
    verdict = certify(F, options)
    return verdict_report(text, F, verdict, time.perf_counter() - start)


def discriminant_report(text: str, n: int) -> Report:
    F = parse(text, n)
    start = time.perf_counter()
    try:
        value = discriminant(F)
        method = "sylvester" if n == 2 else "macaulay" if n > 2 else "coefficient"
    except DegenerateSpecializationError:
        logger.info("Falling back to the pencil for a degenerate Macaulay minor")
        value = robust_discriminant(F)
        method = "pencil"
    return Report(
        command="discriminant",
        input=text,
        polynomial=F.to_text(),
        dimensions=dimensions(F),
        result={"discriminant": format_rational(value), "method": method},
        timings={"discriminant": time.perf_counter() - start},
    )


def charpoly_report(text: str, n: int, subset: Optional[Sequence[int]] = None, parallel: bool = False) -> Report:
    F = parse(text, n)
    start = time.perf_counter()
    if subset:
        chi = char_poly_on_subspace(F, subset, parallel=parallel)
    else:
        chi = char_poly(F, parallel=parallel)
    result = {
        "chi": chi.to_text(),
        "coefficients": [format_rational(c) for c in chi.coeffs],
        "degree": chi.degree,
        "discriminant": format_rational(chi.coefficient(0)),
        "nonneg_on_ray": is_nonneg_on_ray(chi),
        "positive_on_ray": is_positive_on_ray(chi),
    }
    if subset:
        result["subset"] = sorted(set(subset))
    return Report(
        command="charpoly",
        input=text,
        polynomial=F.to_text(),
        dimensions=dimensions(F),
        result=result,
        timings={"charpoly": time.perf_counter() - start},
    )


def hankel_report(text: str, n: int, convention: HankelConvention = HankelConvention.SCALED) -> Report:
    F = parse(text, n)
    start = time.perf_counter()
    H = hankel_matrix(F, convention)
    sig = signature(H.matrix)
    result = {
        "convention": H.convention.value,
        "basis": [list(a) for a in H.basis.exponents],
        "matrix": format_matrix(H.matrix),
        "signature": sig._asdict(),
        "definiteness": definiteness(H).value,
        "mu_identity": mu(H) == F,
    }
    return Report(
        command="hankel",
        input=text,
        polynomial=F.to_text(),
        dimensions=dimensions(F),
        result=result,
        timings={"hankel": time.perf_counter() - start},
    )


def restrict_report(
    text: str,
    n: int,
    subset: Optional[Sequence[int]] = None,
    basis: Optional[Sequence[Sequence]] = None,
) -> Report:
    F = parse(text, n)
    if (subset is None) == (basis is None):
        raise DimensionMismatchError("Give exactly one of a variable subset or a basis matrix")
    if subset is not None:
        G = restrict(F, subset)
        result: Dict = {"subset": sorted(set(subset))}
    else:
        rows = read_matrix(basis)
        G = linear_change(F, rows)
        result = {"basis": format_matrix(rows)}
    result.update(restricted=G.to_text(), variables=G.n)
    return Report(command="restrict", input=text, polynomial=F.to_text(), dimensions=dimensions(F), result=result)


def roots_report(text: str) -> Report:
    p = UniPoly.parse(text)
    start = time.perf_counter()
    k = p.valuation()
    core = squarefree_part(p.shift_down(k))
    counts = sylvester_root_counts(core)
    witness = ray_witness(p)
    result = {
        "degree": p.degree,
        "squarefree_part": squarefree_part(p).to_text(),
        "root_at_zero_multiplicity": k,
        "sylvester_nonzero_real_roots": counts.real_roots,
        "sylvester_positive_roots": counts.positive_real_roots,
        "sturm_real_roots": sturm_count(p, None, None),
        "sturm_positive_roots": sturm_count(p, Fraction(0), None),
        "nonneg_on_ray": is_nonneg_on_ray(p),
        "positive_on_ray": is_positive_on_ray(p),
        "ray_witness": format_rational(witness) if witness is not None else None,
    }
    return Report(
        command="roots",
        input=text,
        polynomial=p.to_text(),
        result=result,
        timings={"roots": time.perf_counter() - start},
    )


def render_summary(report: Report) -> str:
    """Human-readable listing of a report."""
    lines = [f"command: {report.command}", f"input: {report.input}"]
    if report.polynomial is not None:
        lines.append(f"polynomial: {report.polynomial}")
    if report.dimensions is not None:
        dims = report.dimensions
        lines.append(f"space: n={dims.n} d={dims.d} D={dims.D} N={dims.N}")
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict}")
    if report.tests:
        lines.append("tests:")
        width = max(len(t.name) for t in report.tests)
        for t in report.tests:
            detail = f"  {t.detail}" if t.detail else ""
            lines.append(f"  {t.name.ljust(width)}  {t.outcome}{detail}")
    if report.certificates:
        lines.append("certificates:")
        for c in report.certificates:
            lines.append(f"  {c.kind}" + (f" ({c.note})" if c.note else ""))
    if report.witness:
        lines.append(f"witness: ({', '.join(report.witness)})")
    for key, value in report.result.items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines)
