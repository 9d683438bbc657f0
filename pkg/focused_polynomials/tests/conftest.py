import pytest
import numpy as np

from focused_polynomials.cli import create_app
from focused_polynomials.polynomials import FocusedPolynomial


@pytest.fixture
def app():
    app = create_app({"TESTING": True})
    with app.app_context():
        yield app


@pytest.fixture
def clustered_polynomial() -> FocusedPolynomial:
    """n=40, six generators around e_1 (pairwise cosines above 0.8), degree 4."""
    rng = np.random.default_rng(2024)
    n = 40
    generators = np.zeros((6, n))
    generators[:, 0] = 1.0
    generators += 0.15 * rng.standard_normal((6, n)) / np.sqrt(n)
    terms = [((0, 1, 2, 3), 1.0), ((2, 3, 4, 5), 0.5), ((0, 0, 5, 5), 2.0)]
    return FocusedPolynomial(n=n, m=4, generators=generators, terms=terms)
