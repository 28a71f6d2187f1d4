import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import bottleneck_oracle, wasserstein_oracle
from tdats.diagram import PersistenceDiagram
from tdats.errors import ParameterError
from tdats.metrics import augmented_cost, bottleneck, wasserstein


@st.composite
def diagrams(draw, max_size=6):
    n = draw(st.integers(0, max_size))
    pts = []
    for _ in range(n):
        b = draw(st.floats(0, 5, allow_nan=False))
        pts.append((b, b + draw(st.floats(0, 3, allow_nan=False))))
    return np.array(pts, dtype=float).reshape(-1, 2)


def dg(rows):
    return PersistenceDiagram.from_rows([[0, b, d] for b, d in rows])


def test_examples():
    a = dg([(0, 2)])
    assert wasserstein(a, a, 1, 0) == 0
    assert bottleneck(a, a, 0) == 0
    assert wasserstein(a, PersistenceDiagram.empty(), 1, 0) == 1
    assert wasserstein(a, dg([(0, 1)]), 1, 0) == 1
    assert bottleneck(a, dg([(0, 1)]), 0) == 1
    assert bottleneck(a, dg([(0.5, 2)]), 0) == 0.5


def test_empty_pair_is_zero():
    e = PersistenceDiagram.empty()
    assert bottleneck(e, e, 1) == 0 and wasserstein(e, e, 2, 1) == 0


def test_invalid_dim_and_q():
    a = dg([(0, 1)])
    with pytest.raises(ParameterError):
        bottleneck(a, a, 2)
    with pytest.raises(ParameterError):
        wasserstein(a, a, 0.5, 0)


def test_dimension_selection():
    a = PersistenceDiagram.from_rows([[0, 0, 1], [1, 0.2, 0.9]])
    b = PersistenceDiagram.from_rows([[0, 0, 1]])
    assert bottleneck(a, b, 0) == 0
    assert bottleneck(a, b, 1) == pytest.approx(0.35)


def test_augmented_cost_layout():
    c = augmented_cost(np.array([[0, 2.0]]), np.array([[1, 2.0], [0, 4.0]]))
    assert c.shape == (3, 3)
    np.testing.assert_allclose(c[0], [1, 2, 1])
    np.testing.assert_allclose(c[1:, 2], 0)


@given(diagrams(), diagrams())
def test_exhaustive_oracle(a, b):
    assert bottleneck(a, b, 0) == pytest.approx(bottleneck_oracle(a, b), abs=1e-9)
    assert wasserstein(a, b, 1, 0) == pytest.approx(wasserstein_oracle(a, b, 1), abs=1e-9)
    assert wasserstein(a, b, 2, 0) == pytest.approx(wasserstein_oracle(a, b, 2), abs=1e-9)


@given(diagrams(8), diagrams(8), st.sampled_from([1, 2, 3]))
def test_symmetry_and_order(a, b, q):
    assert bottleneck(a, b, 0) == pytest.approx(bottleneck(b, a, 0), abs=1e-12)
    w = wasserstein(a, b, q, 0)
    assert w == pytest.approx(wasserstein(b, a, q, 0), abs=1e-9)
    assert bottleneck(a, b, 0) <= w + 1e-9


@given(diagrams(5), diagrams(5), diagrams(5))
def test_triangle_inequality(a, b, c):
    assert bottleneck(a, c, 0) <= bottleneck(a, b, 0) + bottleneck(b, c, 0) + 1e-9
    assert wasserstein(a, c, 1, 0) <= wasserstein(a, b, 1, 0) + wasserstein(b, c, 1, 0) + 1e-9


def test_diagonal_points_cost_nothing():
    a = dg([(0, 2), (1, 1)])
    assert bottleneck(a, dg([(0, 2)]), 0) == 0
