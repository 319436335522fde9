from typing import List, Optional, Union

from pydantic import BaseModel, Field

from ..core.hankel import HankelConvention

RationalText = Union[int, str]


class PolynomialRequest(BaseModel):
    polynomial: str = Field(..., description="Homogeneous polynomial in x1..xn, e.g. 'x1^4 + x2^4'")
    n: int = Field(..., ge=1, description="Number of variables")


class CertifyRequest(PolynomialRequest):
    budget: Optional[int] = Field(None, ge=0, description="Random sample points for the counterexample search")
    seed: Optional[int] = Field(None, description="Seed of the counterexample search")
    parallel: bool = Field(default=False, description="Run independent tests in a thread pool")
    bases: List[List[List[RationalText]]] = Field(
        default_factory=list, description="Extra subspaces as m x n basis matrices with rational entries"
    )
    references: List[str] = Field(default_factory=list, description="Extra reference forms J in the same space")


class DiscriminantRequest(PolynomialRequest):
    pass


class CharPolyRequest(PolynomialRequest):
    subset: Optional[List[int]] = Field(None, description="Coordinate subspace, 1-based variable indices")
    parallel: bool = Field(default=False, description="Evaluate interpolation nodes in a thread pool")


class HankelRequest(PolynomialRequest):
    convention: HankelConvention = Field(default=HankelConvention.SCALED, description="Matrix basis convention")


class RestrictRequest(PolynomialRequest):
    subset: Optional[List[int]] = Field(None, description="Variables to keep, 1-based")
    basis: Optional[List[List[RationalText]]] = Field(None, description="m x n basis matrix of a subspace")


class RootsRequest(BaseModel):
    polynomial: str = Field(..., description="Univariate polynomial in t, e.g. 't^2 - 5 t + 6'")
