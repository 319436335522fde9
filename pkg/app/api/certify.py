from fastapi import APIRouter

from ..models.api import CertifyRequest
from ..models.report import Report
from ..services.reports import certify_report
from .utils.errors import to_http_error

router = APIRouter()


@router.post("", response_model=Report)
def certify_polynomial(request: CertifyRequest):
    """Run every positivity test and return the verdict with its certificates"""
    try:
        return certify_report(
            request.polynomial,
            request.n,
            budget=request.budget,
            seed=request.seed,
            parallel=request.parallel,
            bases=request.bases,
            references=request.references,
        )
    except Exception as e:
        raise to_http_error(e)
