from typing import Dict, Iterable, NamedTuple, Sequence, Tuple, Union
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import ValidationError


Vector = Union[Sequence[float], np.ndarray]


class Term(NamedTuple):
    """A weighted product of linear forms: sorted 0-based generator indices (repeats allowed)."""

    indices: Tuple[int, ...]
    weight: float


def _as_generators(generators: Iterable[Vector], n: int, what: str) -> np.ndarray:
    try:
        rows = [np.asarray(g, dtype=float) for g in generators]
    except (TypeError, ValueError):
        raise ValidationError(f"The {what} should be lists of real numbers.")
    if any(row.shape != (n,) for row in rows):
        raise ValidationError(
            f"The {what} should be a non-empty list of vectors of dimension {n}."
        )
    array = np.array(rows, dtype=float).reshape(len(rows), n)
    if array.shape[0] == 0:
        raise ValidationError(
            f"The {what} should be a non-empty list of vectors of dimension {n}."
        )
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"The {what} contain non-finite entries.")
    zero = np.flatnonzero(np.linalg.norm(array, axis=1) == 0)
    if len(zero):
        raise ValidationError(
            f"Generator {int(zero[0]) + 1} of the {what} is the zero vector."
        )
    array.setflags(write=False)
    return array


def _as_terms(
    terms: Iterable[Union[Term, Tuple[Sequence[int], float]]],
    m: int,
    number_of_generators: int,
    what: str,
) -> Tuple[Term, ...]:
    normalized = []
    for indices, weight in terms:
        indices = tuple(sorted(int(i) for i in indices))
        weight = float(weight)
        if len(indices) != m:
            raise ValidationError(
                f"Each term of {what} should have {m} indices, got {len(indices)}."
            )
        if indices and (indices[0] < 0 or indices[-1] >= number_of_generators):
            raise ValidationError(
                f"Term indices of {what} should refer to one of {number_of_generators} generators."
            )
        if not np.isfinite(weight) or weight < 0:
            raise ValidationError(f"Term weights of {what} should be non-negative, got {weight}.")
        normalized.append(Term(indices, weight))
    if not any(term.weight > 0 for term in normalized):
        raise ValidationError(f"At least one term of {what} needs a positive weight.")
    return tuple(normalized)


def _check_degree(n: int, m: int):
    if int(n) != n or n < 1:
        raise ValidationError(f"Dimension n should be a positive integer, got {n}.")
    if int(m) != m or m < 1:
        raise ValidationError(f"Degree m should be a positive integer, got {m}.")


@dataclass(frozen=True, eq=False)
class FocusedPolynomial:
    """
    f(x) = sum_I alpha_I prod_{i in I} <c_i, x>, with non-negative weights alpha_I.

    Terms are multisets of generator indices; a repeated index stands for a repeated
    linear form, which is the same as duplicating that generator.
    """

    n: int
    m: int
    generators: np.ndarray
    terms: Tuple[Term, ...]

    def __post_init__(self):
        _check_degree(self.n, self.m)
        generators = _as_generators(self.generators, self.n, "generators")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(
            self, "terms", _as_terms(self.terms, self.m, len(generators), "the polynomial")
        )

    @property
    def number_of_generators(self) -> int:
        return self.generators.shape[0]


@dataclass(frozen=True, eq=False)
class FocusedPair:
    """Two focused polynomials f (generators a_i) and g (generators b_j) of the same degree."""

    n: int
    m: int
    a_generators: np.ndarray
    b_generators: np.ndarray
    f_terms: Tuple[Term, ...]
    g_terms: Tuple[Term, ...]

    def __post_init__(self):
        _check_degree(self.n, self.m)
        a = _as_generators(self.a_generators, self.n, "a-generators")
        b = _as_generators(self.b_generators, self.n, "b-generators")
        object.__setattr__(self, "a_generators", a)
        object.__setattr__(self, "b_generators", b)
        object.__setattr__(self, "f_terms", _as_terms(self.f_terms, self.m, len(a), "f"))
        object.__setattr__(self, "g_terms", _as_terms(self.g_terms, self.m, len(b), "g"))

    @property
    def f(self) -> FocusedPolynomial:
        return FocusedPolynomial(self.n, self.m, self.a_generators, self.f_terms)

    @property
    def g(self) -> FocusedPolynomial:
        return FocusedPolynomial(self.n, self.m, self.b_generators, self.g_terms)


@dataclass(frozen=True)
class FocusCertificate:
    """Minimum cosine over the required pairs, with the (0-based) pair attaining it."""

    delta: float
    witness_pair: Tuple[int, int]


@dataclass(frozen=True, eq=False)
class MonomialPolynomial:
    """Monomial expansion: exponent tuple -> coefficient."""

    n: int
    terms: Dict[Tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        terms = {}
        for exponents, coefficient in dict(self.terms).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != self.n or any(e < 0 for e in exponents):
                raise ValidationError(
                    f"Exponent vectors should have {self.n} non-negative entries, got {exponents}."
                )
            terms[exponents] = terms.get(exponents, 0) + coefficient
        object.__setattr__(self, "terms", terms)
