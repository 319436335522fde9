from fastapi import APIRouter

from ..models.api import RootsRequest
from ..models.report import Report
from ..services.reports import roots_report
from .utils.errors import to_http_error

router = APIRouter()


@router.post("", response_model=Report)
def roots(request: RootsRequest):
    """Sylvester and Sturm root counts and the ray predicates of a polynomial in t"""
    try:
        return roots_report(request.polynomial)
    except Exception as e:
        raise to_http_error(e)
