import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

SCHEMA_PATH = Path(__file__).with_name("report.schema.json")


class Dimensions(BaseModel):
    n: int = Field(..., description="Number of variables")
    d: int = Field(..., description="Total degree")
    D: Optional[int] = Field(None, description="Degree of the discriminant, n (d-1)^(n-1)")
    N: int = Field(..., description="Dimension of the space of forms, binomial(n-1+d, d)")


class CertificateEntry(BaseModel):
    kind: str = Field(..., description="Certificate kind")
    note: str = Field(default="", description="Which subspace or reference form the claim concerns")
    payload: Dict[str, Any] = Field(default_factory=dict, description="Exact objects re-verifying the claim")


class CheckEntry(BaseModel):
    name: str = Field(..., description="Test identifier")
    outcome: str = Field(..., description="Outcome of the test")
    detail: str = Field(default="", description="Values behind the outcome")


class Report(BaseModel):
    """Machine-readable result of one command; rationals are "p/q" strings."""

    command: str = Field(..., description="Subcommand that produced the report")
    input: str = Field(..., description="Polynomial text as given")
    polynomial: Optional[str] = Field(None, description="Canonical text of the parsed polynomial")
    dimensions: Optional[Dimensions] = Field(None, description="(n, d, D, N) of the input space")
    verdict: Optional[str] = Field(None, description="POSITIVE, NONNEGATIVE, NOT_NONNEGATIVE or UNKNOWN")
    certificates: List[CertificateEntry] = Field(default_factory=list, description="Certificate chain")
    witness: Optional[List[str]] = Field(None, description="Rational point with a negative value")
    tests: List[CheckEntry] = Field(default_factory=list, description="Every test that ran, in order")
    result: Dict[str, Any] = Field(default_factory=dict, description="Command-specific exact results")
    timings: Dict[str, float] = Field(default_factory=dict, description="Seconds per test; not deterministic")

    def deterministic_json(self) -> str:
        """JSON without the timings field."""
        return self.model_dump_json(exclude={"timings"})


def load_schema() -> Dict[str, Any]:
    """The JSON Schema shipped next to this module; every `--json` report validates against it."""
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
