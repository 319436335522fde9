from fastapi import APIRouter

from ..models.api import CharPolyRequest, DiscriminantRequest, HankelRequest, RestrictRequest
from ..models.report import Report
from ..services import reports
from .utils.errors import to_http_error

router = APIRouter()


@router.post("/discriminant", response_model=Report)
def discriminant(request: DiscriminantRequest):
    """Normalized discriminant of a form"""
    try:
        return reports.discriminant_report(request.polynomial, request.n)
    except Exception as e:
        raise to_http_error(e)


@router.post("/charpoly", response_model=Report)
def charpoly(request: CharPolyRequest):
    """Characteristic polynomial, optionally on a coordinate subspace"""
    try:
        return reports.charpoly_report(
            request.polynomial, request.n, subset=request.subset, parallel=request.parallel
        )
    except Exception as e:
        raise to_http_error(e)


@router.post("/hankel", response_model=Report)
def hankel(request: HankelRequest):
    try:
        return reports.hankel_report(request.polynomial, request.n, request.convention)
    except Exception as e:
        raise to_http_error(e)


@router.post("/restrict", response_model=Report)
def restrict(request: RestrictRequest):
    """Restriction to a coordinate subspace or to the span of a basis"""
    try:
        return reports.restrict_report(
            request.polynomial, request.n, subset=request.subset, basis=request.basis
        )
    except Exception as e:
        raise to_http_error(e)
