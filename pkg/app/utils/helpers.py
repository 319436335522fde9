from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

Rational = Union[int, Fraction]


def format_rational(value: Rational) -> str:
    """Exact text of a rational: "3", "-1/6"."""
    return str(Fraction(value))


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Read "p/q" or an integer; floats and decimals are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    cleaned = str(text).strip()
    if any(ch in cleaned for ch in ".eE"):
        raise ValueError(f"Rational expected as p/q, got {text!r}")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Cannot read rational {text!r}: {e}") from e


def format_terms(terms: Iterable[Tuple[Fraction, str]]) -> str:
    """Join (coefficient, monomial) pairs into "a - b + c" text, "0" when empty."""
    out = ""
    for coeff, monomial in terms:
        if coeff == 0:
            continue
        magnitude = abs(coeff)
        if monomial:
            body = monomial if magnitude == 1 else f"{format_rational(magnitude)} {monomial}"
        else:
            body = format_rational(magnitude)
        if not out:
            out = f"-{body}" if coeff < 0 else body
        else:
            out += f" - {body}" if coeff < 0 else f" + {body}"
    return out or "0"


def format_vector(values: Sequence[Rational]) -> List[str]:
    return [format_rational(v) for v in values]


def format_matrix(rows: Sequence[Sequence[Rational]]) -> List[List[str]]:
    return [format_vector(row) for row in rows]


def to_jsonable(value: Any) -> Any:
    """Recursively turn engine values into JSON types; Fractions become "p/q" strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if hasattr(value, "to_text"):
        return value.to_text()
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if hasattr(value, "_asdict"):
        return {k: to_jsonable(v) for k, v in value._asdict().items()}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    return value
