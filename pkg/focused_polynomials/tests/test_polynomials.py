import pytest
import numpy as np

from focused_polynomials.exceptions import (
    CapExceededError,
    DegenerateRestrictionError,
    NotFocusedError,
    ValidationError,
)
from focused_polynomials.integration.subspace import RngSeed, Subspace, project, sample_subspace
from focused_polynomials.polynomials import FocusedPair, FocusedPolynomial, MonomialPolynomial
from focused_polynomials.polynomials.certificates import (
    positive_definite_delta,
    positive_vectors_delta,
    symmetric_matrix_to_vector,
)
from focused_polynomials.polynomials.core import (
    compute_delta,
    evaluate,
    pair_from_json,
    polynomial_from_json,
    polynomial_to_json,
    power,
    restrict,
    to_monomials,
)


def example_polynomial() -> FocusedPolynomial:
    """f(x) = <e1, x><e1 + e2, x> + 0.5 <e1 + e2, x>^2"""
    return FocusedPolynomial(
        n=2,
        m=2,
        generators=[[1, 0], [1, 1]],
        terms=[((0, 1), 1.0), ((1, 1), 0.5)],
    )


def test_polynomial_validation():
    """
    1. Zero generators are rejected.
    2. Terms of the wrong length are rejected.
    3. Indices beyond the generators are rejected.
    4. Negative weights are rejected.
    5. At least one weight has to be positive.
    """
    with pytest.raises(ValidationError, match="zero vector"):
        FocusedPolynomial(n=2, m=1, generators=[[0, 0]], terms=[((0,), 1.0)])
    with pytest.raises(ValidationError, match="indices"):
        FocusedPolynomial(n=2, m=2, generators=[[1, 0]], terms=[((0,), 1.0)])
    with pytest.raises(ValidationError, match="refer to"):
        FocusedPolynomial(n=2, m=1, generators=[[1, 0]], terms=[((1,), 1.0)])
    with pytest.raises(ValidationError, match="non-negative"):
        FocusedPolynomial(n=2, m=1, generators=[[1, 0]], terms=[((0,), -1.0)])
    with pytest.raises(ValidationError, match="positive weight"):
        FocusedPolynomial(n=2, m=1, generators=[[1, 0]], terms=[((0,), 0.0)])


@pytest.mark.parametrize(
    "generators",
    [[[1, 0], [1]], [[1, 0, 0]], [[[1, 0]]], [], [[1, 0], "ab"]],
)
def test_generators_of_the_wrong_shape(generators):
    """Ragged, too long, nested or empty generator lists are invalid input, also for pairs."""
    with pytest.raises(ValidationError):
        FocusedPolynomial(n=2, m=1, generators=generators, terms=[((0,), 1.0)])
    with pytest.raises(ValidationError):
        FocusedPair(
            n=2,
            m=1,
            a_generators=[[1, 0]],
            b_generators=generators,
            f_terms=[((0,), 1.0)],
            g_terms=[((0,), 1.0)],
        )


def test_evaluate():
    poly = example_polynomial()
    # 2 * 5 + 0.5 * 25
    assert evaluate(poly, [2, 3]) == pytest.approx(22.5)
    with pytest.raises(ValidationError):
        evaluate(poly, [1, 2, 3])


def test_compute_delta():
    """
    1. Orthogonal generators are not focused; the witness pair is reported.
    2. e1 and e1 + e2 have cosine 1/sqrt(2).
    3. A single generator has delta 1 (it is paired with itself).
    4. Across two families, only the cross pairs count.
    """
    with pytest.raises(NotFocusedError) as e:
        compute_delta([[1, 0], [0, 1]])
    assert e.value.min_cosine == pytest.approx(0.0)
    assert e.value.witness == (0, 1)

    certificate = compute_delta([[1, 0], [1, 1]])
    assert certificate.delta == pytest.approx(1 / np.sqrt(2))
    assert set(certificate.witness_pair) == {0, 1}

    single = compute_delta([[3, 4]])
    assert single.delta == pytest.approx(1.0)
    assert single.witness_pair == (0, 0)

    # a-side vectors are orthogonal to each other, but every cross cosine is positive
    cross = compute_delta([[1, 0], [0, 1]], cross_with=[[1, 1]])
    assert cross.delta == pytest.approx(1 / np.sqrt(2))
    with pytest.raises(NotFocusedError):
        compute_delta([[1, 0]], cross_with=[[0, 1], [1, 1]])


def test_power_matches_evaluation():
    poly = example_polynomial()
    rng = np.random.default_rng(1)
    cubed = power(poly, 3)
    assert cubed.m == 6
    for x in rng.standard_normal((5, 2)):
        assert evaluate(cubed, x) == pytest.approx(evaluate(poly, x) ** 3, rel=1e-12)


def test_power_merges_terms_and_respects_cap():
    poly = example_polynomial()
    squared = power(poly, 2)
    # (0,1)(0,1), (0,1)(1,1) twice, (1,1)(1,1)
    assert len(squared.terms) == 3
    assert dict(squared.terms)[(0, 1, 1, 1)] == pytest.approx(1.0)
    with pytest.raises(CapExceededError):
        power(poly, 4, term_cap=10)
    with pytest.raises(ValidationError):
        power(poly, 0)


def test_to_monomials():
    """<e1 + e2, x>^2 = x1^2 + 2 x1 x2 + x2^2"""
    poly = FocusedPolynomial(n=2, m=2, generators=[[1, 1]], terms=[((0, 0), 1.0)])
    assert to_monomials(poly).terms == {(2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0}
    assert MonomialPolynomial(n=2, terms={(1.0, 2.0): 3}).terms == {(1, 2): 3}
    with pytest.raises(ValidationError):
        MonomialPolynomial(n=2, terms={(1, -1): 1.0})


def test_restrict():
    """
    1. Restricting to R^n itself (standard frame) changes nothing.
    2. A generator orthogonal to the subspace degenerates.
    """
    poly = example_polynomial()
    full = restrict(poly, Subspace.full(2))
    assert evaluate(full, [0.3, -0.7]) == pytest.approx(evaluate(poly, [0.3, -0.7]))

    second_axis = Subspace(n=2, k=1, frame=[[0.0], [1.0]])
    with pytest.raises(DegenerateRestrictionError):
        restrict(poly, second_axis)


def test_restriction_agrees_with_projection():
    """f restricted to L, at the frame coordinates of x, equals f at the projection P_L x."""
    rng = np.random.default_rng(21)
    generators = rng.uniform(0.1, 1.0, size=(4, 6))
    poly = FocusedPolynomial(n=6, m=3, generators=generators, terms=[((0, 1, 2), 1.0), ((3, 3, 0), 0.5)])
    for stream in range(10):
        L = sample_subspace(6, 3, RngSeed(8, stream))
        restricted = restrict(poly, L)
        for x in rng.standard_normal((5, 6)):
            coordinates, _ = project(L, x)
            assert evaluate(restricted, coordinates) == pytest.approx(
                evaluate(poly, L.frame @ coordinates), rel=1e-10, abs=1e-12
            )


def test_restriction_to_the_diagonal():
    """e1 restricted to the line through (1, 1) becomes the 1-vector 1/sqrt(2)."""
    poly = FocusedPolynomial(n=2, m=1, generators=[[1.0, 0.0]], terms=[((0,), 1.0)])
    diagonal = Subspace(n=2, k=1, frame=[[1 / np.sqrt(2)], [1 / np.sqrt(2)]])
    restricted = restrict(poly, diagonal)
    assert restricted.n == 1
    assert np.linalg.norm(restricted.generators[0]) == pytest.approx(1 / np.sqrt(2))


def test_delta_ignores_order_and_positive_scaling():
    """
    1. Permuting or positively rescaling the generators leaves delta unchanged.
    2. Powers of a polynomial keep its generators, hence its delta.
    """
    rng = np.random.default_rng(4)
    generators = rng.uniform(0.1, 1.0, size=(6, 4))
    delta = compute_delta(generators).delta
    permuted = generators[rng.permutation(6)]
    assert compute_delta(permuted).delta == pytest.approx(delta, rel=1e-12)
    scaled = generators * rng.uniform(0.01, 100.0, size=(6, 1))
    assert compute_delta(scaled).delta == pytest.approx(delta, rel=1e-12)

    poly = example_polynomial()
    for p in (2, 3):
        assert compute_delta(power(poly, p).generators).delta == pytest.approx(
            compute_delta(poly.generators).delta
        )


def test_polynomial_json():
    data = {
        "n": 2,
        "m": 2,
        "generators": [[1, "0"], ["1.0", 1]],
        "terms": [{"indices": [1, 2], "weight": 1}, {"indices": [2, 2], "weight": "0.5"}],
    }
    poly = polynomial_from_json(data)
    assert evaluate(poly, [2, 3]) == pytest.approx(22.5)
    assert polynomial_to_json(poly)["terms"][1] == {"indices": [2, 2], "weight": 0.5}

    with pytest.raises(ValidationError, match="Missing"):
        polynomial_from_json({"m": 2})
    with pytest.raises(ValidationError):
        polynomial_from_json(dict(data, terms=[{"indices": [1.5, 2], "weight": 1}]))
    with pytest.raises(ValidationError):
        polynomial_from_json(dict(data, generators=[[1, "one"]]))


def test_pair_json():
    pair = pair_from_json(
        {
            "n": 2,
            "m": 1,
            "a_generators": [[1, 0]],
            "b_generators": [[1, 1], [0, 1]],
            "f_terms": [{"indices": [1], "weight": 1}],
            "g_terms": [{"indices": [2], "weight": 2}],
        }
    )
    assert pair.f.number_of_generators == 1
    assert pair.g.terms[0].indices == (1,)


def test_certificates_bound_the_exact_delta():
    """
    1. Vectors with positive coordinates: (min/max ratio)^2 bounds the minimum cosine.
    2. The embedding of symmetric matrices turns dot products into traces.
    3. Positive definite matrices: (smallest/largest eigenvalue)^2 bounds the minimum cosine.
    """
    rng = np.random.default_rng(7)
    vectors = rng.uniform(0.2, 1.0, size=(8, 5))
    assert positive_vectors_delta(vectors) <= compute_delta(vectors).delta + 1e-12
    with pytest.raises(NotFocusedError):
        positive_vectors_delta([[1.0, 0.0]])

    a, b = (x + x.T for x in rng.standard_normal((2, 3, 3)))
    assert symmetric_matrix_to_vector(a) @ symmetric_matrix_to_vector(b) == pytest.approx(
        np.trace(a @ b)
    )

    matrices = []
    for _ in range(6):
        x = rng.standard_normal((3, 3))
        matrices.append(x @ x.T + 2 * np.eye(3))
    embedded = [symmetric_matrix_to_vector(m) for m in matrices]
    assert positive_definite_delta(matrices) <= compute_delta(embedded).delta + 1e-12
    with pytest.raises(NotFocusedError):
        positive_definite_delta([np.diag([1.0, -1.0])])
