from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple
import math

import numpy as np

from . import (
    FocusCertificate,
    FocusedPair,
    FocusedPolynomial,
    MonomialPolynomial,
    Term,
    Vector,
)
from .. import DEFAULT_DEGENERACY_TOLERANCE, DEFAULT_TERM_CAP
from ..exceptions import (
    CapExceededError,
    DegenerateRestrictionError,
    NotFocusedError,
    ValidationError,
)
from ..utils import get_setting, parse_real

if TYPE_CHECKING:
    from ..integration.subspace import Subspace


def evaluate(poly: FocusedPolynomial, x: Vector) -> float:
    """f(x) = sum_I alpha_I prod_{i in I} <c_i, x>"""
    x = np.asarray(x, dtype=float)
    if x.shape != (poly.n,):
        raise ValidationError(
            f"Expected a point of dimension {poly.n}, got shape {x.shape}."
        )
    forms = poly.generators @ x
    return math.fsum(
        term.weight * float(np.prod(forms[list(term.indices)])) for term in poly.terms
    )


def compute_delta(
    generators: Any, cross_with: Optional[Any] = None
) -> FocusCertificate:
    """
    Minimum cosine between the generators.

    Without `cross_with`, all pairs (i, j) of generators count, i = j included
    (a cosine of 1, which only witnesses the minimum when there is a single generator).
    With `cross_with`, only the pairs (a_i, b_j) across both families count.

    Raises NotFocusedError if the minimum cosine is not positive.
    """
    a = _unit_rows(generators)
    if cross_with is None:
        cosines = np.clip(a @ a.T, -1.0, 1.0)
        if len(a) > 1:
            cosines = cosines + np.diag(np.full(len(a), np.inf))
    else:
        cosines = np.clip(a @ _unit_rows(cross_with).T, -1.0, 1.0)
    i, j = np.unravel_index(int(np.argmin(cosines)), cosines.shape)
    delta = float(cosines[i, j])
    if delta <= 0:
        raise NotFocusedError(
            f"Generators {i + 1} and {j + 1} have cosine {delta:.6g}; a focused polynomial needs positive cosines.",
            min_cosine=delta,
            witness=(int(i), int(j)),
        )
    return FocusCertificate(delta=delta, witness_pair=(int(i), int(j)))


def _unit_rows(vectors: Any) -> np.ndarray:
    array = np.atleast_2d(np.asarray(vectors, dtype=float))
    norms = np.linalg.norm(array, axis=1)
    if np.any(norms == 0):
        raise ValidationError(
            f"Vector {int(np.flatnonzero(norms == 0)[0]) + 1} is the zero vector."
        )
    return array / norms[:, None]


def restrict(
    poly: FocusedPolynomial,
    L: "Subspace",
    tolerance: Optional[float] = None,
) -> FocusedPolynomial:
    """
    Restriction of f onto L, written in the coordinates of L's orthonormal frame B:
    generators become B^T c_i, terms and weights stay.
    """
    return FocusedPolynomial(
        n=L.k,
        m=poly.m,
        generators=_project_generators(poly.generators, L, tolerance),
        terms=poly.terms,
    )


def restrict_pair(
    pair: FocusedPair, L: "Subspace", tolerance: Optional[float] = None
) -> FocusedPair:
    return FocusedPair(
        n=L.k,
        m=pair.m,
        a_generators=_project_generators(pair.a_generators, L, tolerance),
        b_generators=_project_generators(pair.b_generators, L, tolerance),
        f_terms=pair.f_terms,
        g_terms=pair.g_terms,
    )


def _project_generators(
    generators: np.ndarray, L: "Subspace", tolerance: Optional[float]
) -> np.ndarray:
    if generators.shape[1] != L.n:
        raise ValidationError(
            f"Cannot restrict generators of dimension {generators.shape[1]} to a subspace of R^{L.n}."
        )
    if tolerance is None:
        tolerance = get_setting(
            "FOCUSED_DEGENERACY_TOLERANCE", DEFAULT_DEGENERACY_TOLERANCE
        )
    projected = generators @ L.frame
    ratios = np.linalg.norm(projected, axis=1) / np.linalg.norm(generators, axis=1)
    degenerate = np.flatnonzero(ratios < tolerance)
    if len(degenerate):
        raise DegenerateRestrictionError(
            f"Generator {int(degenerate[0]) + 1} projects to (numerically) zero on the subspace."
        )
    return projected


def power(
    poly: FocusedPolynomial, p: int, term_cap: Optional[int] = None
) -> FocusedPolynomial:
    """
    f^p over the same generators. Products of terms with the same index multiset
    are merged by adding their weights.
    """
    if int(p) != p or p < 1:
        raise ValidationError(f"The power should be a positive integer, got {p}.")
    if term_cap is None:
        term_cap = get_setting("FOCUSED_TERM_CAP", DEFAULT_TERM_CAP)
    if len(poly.terms) ** p > term_cap:
        raise CapExceededError(
            f"Raising {len(poly.terms)} terms to the power {p} gives more than {term_cap} terms."
        )
    merged: Dict[Tuple[int, ...], float] = {(): 1.0}
    for _ in range(p):
        product: Dict[Tuple[int, ...], float] = {}
        for key, weight in merged.items():
            for term in poly.terms:
                new_key = tuple(sorted(key + term.indices))
                product[new_key] = product.get(new_key, 0.0) + weight * term.weight
        merged = product
    return FocusedPolynomial(
        n=poly.n,
        m=poly.m * p,
        generators=poly.generators,
        terms=tuple(Term(key, weight) for key, weight in merged.items()),
    )


def to_monomials(poly: FocusedPolynomial) -> MonomialPolynomial:
    """Expand the products of linear forms into monomials x^alpha."""
    expansion: Dict[Tuple[int, ...], float] = {}
    for term in poly.terms:
        partial: Dict[Tuple[int, ...], float] = {(0,) * poly.n: term.weight}
        for index in term.indices:
            generator = poly.generators[index]
            support = np.flatnonzero(generator)
            multiplied: Dict[Tuple[int, ...], float] = {}
            for exponents, coefficient in partial.items():
                for j in support:
                    raised = exponents[:j] + (exponents[j] + 1,) + exponents[j + 1 :]
                    multiplied[raised] = (
                        multiplied.get(raised, 0.0) + coefficient * generator[j]
                    )
            partial = multiplied
        for exponents, coefficient in partial.items():
            expansion[exponents] = expansion.get(exponents, 0.0) + coefficient
    return MonomialPolynomial(n=poly.n, terms=expansion)


def polynomial_from_json(data: Any) -> FocusedPolynomial:
    """
    Read {"n": .., "m": .., "generators": [[..], ..], "terms": [{"indices": [..], "weight": ..}, ..]}
    with 1-based indices.
    """
    if not isinstance(data, dict):
        raise ValidationError("A focused polynomial should be a JSON object.")
    n, m = _read_degree(data)
    return FocusedPolynomial(
        n=n,
        m=m,
        generators=_read_generators(data, "generators"),
        terms=_read_terms(data, "terms"),
    )


def pair_from_json(data: Any) -> FocusedPair:
    """Same shape as a focused polynomial, duplicated per side (a_generators/f_terms, b_generators/g_terms)."""
    if not isinstance(data, dict):
        raise ValidationError("A focused pair should be a JSON object.")
    n, m = _read_degree(data)
    return FocusedPair(
        n=n,
        m=m,
        a_generators=_read_generators(data, "a_generators"),
        b_generators=_read_generators(data, "b_generators"),
        f_terms=_read_terms(data, "f_terms"),
        g_terms=_read_terms(data, "g_terms"),
    )


def polynomial_to_json(poly: FocusedPolynomial) -> Dict[str, Any]:
    return dict(
        n=poly.n,
        m=poly.m,
        generators=poly.generators.tolist(),
        terms=[
            dict(indices=[i + 1 for i in term.indices], weight=term.weight)
            for term in poly.terms
        ],
    )


def _read_degree(data: Dict[str, Any]) -> Tuple[int, int]:
    try:
        n, m = data["n"], data["m"]
    except KeyError as e:
        raise ValidationError(f"Missing field {e}.")
    if not isinstance(n, int) or not isinstance(m, int):
        raise ValidationError("Fields n and m should be integers.")
    return n, m


def _read_generators(data: Dict[str, Any], key: str) -> List[List[float]]:
    generators = data.get(key)
    if not isinstance(generators, list) or not all(
        isinstance(g, list) for g in generators
    ):
        raise ValidationError(f"Field {key} should be a list of vectors.")
    return [[parse_real(entry, key) for entry in g] for g in generators]


def _read_terms(data: Dict[str, Any], key: str) -> List[Tuple[List[int], float]]:
    terms = data.get(key)
    if not isinstance(terms, list):
        raise ValidationError(f"Field {key} should be a list of terms.")
    parsed = []
    for term in terms:
        if not isinstance(term, dict) or "indices" not in term or "weight" not in term:
            raise ValidationError(f"Each entry of {key} needs 'indices' and 'weight'.")
        indices = term["indices"]
        if not isinstance(indices, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in indices
        ):
            raise ValidationError(f"Indices in {key} should be integers.")
        parsed.append(
            ([i - 1 for i in indices], parse_real(term["weight"], f"a weight in {key}"))
        )
    return parsed
