"""
Characteristic polynomial chi(F; J)(t) = Delta(F + t J) by evaluation and interpolation.

Each node evaluation is an independent exact discriminant; a node whose
Macaulay minor degenerates is moved along a fixed retry schedule so runs
stay reproducible.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from ..config import settings
from .errors import (
    DegenerateSpecializationError,
    DimensionMismatchError,
    InvariantViolation,
    OddDegreeError,
)
from .poly import HomogPoly, reference_form, restrict
from .resultant import check_capacity, discriminant, discriminant_degree
from .unipoly import UniPoly, interpolate

logger = logging.getLogger(__name__)


def _pencil_value(F: HomogPoly, J: HomogPoly, t: Fraction) -> Fraction:
    return discriminant(F + J.scale(t))


def _node_value(F: HomogPoly, J: HomogPoly, k: int, D: int) -> Tuple[Fraction, Fraction]:
    """Evaluate the pencil at node k, moving it by D + 1 on each degenerate minor."""
    for attempt in range(settings.CHARPOLY_MAX_RETRIES):
        t = Fraction(k + attempt * (D + 1))
        try:
            return t, _pencil_value(F, J, t)
        except DegenerateSpecializationError:
            logger.warning(f"Degenerate Macaulay minor at t={t}, retrying node {k}")
    raise DegenerateSpecializationError(
        f"Node {k} stayed degenerate after {settings.CHARPOLY_MAX_RETRIES} attempts"
    )


def _check_fresh_node(F: HomogPoly, J: HomogPoly, chi: UniPoly) -> None:
    for attempt in range(1, settings.CHARPOLY_MAX_RETRIES + 1):
        t = Fraction(-attempt)
        try:
            expected = _pencil_value(F, J, t)
        except DegenerateSpecializationError:
            continue
        if chi(t) != expected:
            raise InvariantViolation(
                f"Interpolated characteristic polynomial disagrees with Delta(F + tJ) at t={t}"
            )
        return
    logger.warning("No non-degenerate check node found; interpolation left unverified")


def pencil_polynomial(F: HomogPoly, J: Optional[HomogPoly] = None, parallel: bool = False) -> UniPoly:
    """Delta(F + t J) as a polynomial in t, for any degree d >= 2."""
    if J is None:
        J = reference_form(F.n, F.d)
    elif (J.n, J.d) != (F.n, F.d):
        raise DimensionMismatchError(
            f"Reference form lives in (n={J.n}, d={J.d}), F in (n={F.n}, d={F.d})"
        )
    check_capacity(F.n, F.d)
    D = discriminant_degree(F.n, F.d)

    if parallel:
        with ThreadPoolExecutor(max_workers=settings.PARALLEL_WORKERS) as executor:
            samples = list(executor.map(lambda k: _node_value(F, J, k, D), range(D + 1)))
    else:
        samples = [_node_value(F, J, k, D) for k in range(D + 1)]

    nodes = [t for t, _ in samples]
    values = [v for _, v in samples]
    chi = interpolate(nodes, values)
    _check_fresh_node(F, J, chi)
    logger.debug(f"Interpolated pencil polynomial of degree {chi.degree} from {len(nodes)} nodes")
    return chi


def char_poly(F: HomogPoly, J: Optional[HomogPoly] = None, parallel: bool = False) -> UniPoly:
    """chi(F; J); with the standard J the result is monic of degree D."""
    if F.d < 2 or F.d % 2:
        raise OddDegreeError(f"Characteristic polynomial needs an even degree >= 2, got {F.d}")
    chi = pencil_polynomial(F, J, parallel=parallel)
    if J is None:
        D = discriminant_degree(F.n, F.d)
        if chi.degree != D or not chi.is_monic:
            raise InvariantViolation(
                f"Characteristic polynomial must be monic of degree {D}, got {chi.to_text()}"
            )
    return chi


def char_poly_on_subspace(F: HomogPoly, subset: Iterable[int], parallel: bool = False) -> UniPoly:
    """chi of F restricted to the coordinate plane spanned by the given variables."""
    return char_poly(restrict(F, subset), parallel=parallel)


def generalized_char_eval(F: HomogPoly, Js: Sequence[HomogPoly], ts: Sequence) -> Fraction:
    """Delta(F + sum t_i J_i) at one point."""
    if len(Js) != len(ts):
        raise DimensionMismatchError(f"{len(Js)} forms but {len(ts)} parameters")
    G = F
    for J, t in zip(Js, ts):
        if (J.n, J.d) != (F.n, F.d):
            raise DimensionMismatchError(
                f"Pencil member lives in (n={J.n}, d={J.d}), F in (n={F.n}, d={F.d})"
            )
        G = G + J.scale(t)
    return discriminant(G)


def robust_discriminant(F: HomogPoly, parallel: bool = False) -> Fraction:
    """Delta(F), read off chi(F)(0) when the Macaulay minor degenerates at F itself."""
    try:
        return discriminant(F)
    except DegenerateSpecializationError:
        logger.info("Macaulay minor vanishes at F; recovering Delta(F) from the pencil")
        return pencil_polynomial(F, parallel=parallel).coefficient(0)


def sample_table(p: UniPoly, nodes: Iterable) -> List[Tuple[Fraction, Fraction]]:
    """(t, p(t)) pairs for writing a data file."""
    return [(Fraction(t), p(t)) for t in nodes]
