import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from tdats.embedding import SlidingWindowConfig, standardize_pointwise, sw1pers_cloud, takens_embed
from tdats.errors import DegenerateInputError, ParameterError
from tdats.synthetic import cosine

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_takens_small_example():
    np.testing.assert_array_equal(takens_embed([1, 2, 3, 4, 5], 3, 2), [[1, 3, 5]])


def test_takens_rows():
    x = np.arange(40.0)
    v = takens_embed(x, 2, 1)
    np.testing.assert_array_equal(v[:, 1], v[:, 0] + 1)
    v = takens_embed(x, 15, 2)
    assert v.shape == (40 - 28, 15)
    np.testing.assert_array_equal(v[:, -1], v[:, 0] + 28)


def test_takens_too_short():
    with pytest.raises(ParameterError):
        takens_embed([1, 2, 3], 3, 2)


@given(arrays(float, st.integers(1, 60), elements=finite), st.integers(1, 6), st.integers(1, 6))
def test_takens_entries_are_copies(x, d, tau):
    if x.size < (d - 1) * tau + 1:
        with pytest.raises(ParameterError):
            takens_embed(x, d, tau)
        return
    v = takens_embed(x, d, tau)
    assert v.shape == (x.size - (d - 1) * tau, d)
    for i in range(v.shape[0]):
        for j in range(d):
            assert v[i, j] == x[i + j * tau]


@given(arrays(float, st.integers(10, 40), elements=finite), st.floats(-5, 5), st.floats(-5, 5))
def test_takens_commutes_with_affine(x, a, b):
    np.testing.assert_allclose(takens_embed(a * x + b, 3, 2), a * takens_embed(x, 3, 2) + b,
                               atol=1e-12)


def test_standardize_examples():
    np.testing.assert_allclose(standardize_pointwise([[0, 2]]), [[-2 ** -0.5, 2 ** -0.5]])
    with pytest.raises(DegenerateInputError, match="point 1"):
        standardize_pointwise([[0, 1, 2], [3, 3, 3]])


@given(arrays(float, st.tuples(st.integers(1, 10), st.integers(2, 8)),
              elements=st.floats(-100, 100)))
def test_standardize_unit_sphere(pts):
    if np.any(np.ptp(pts, axis=1) < 1e-6):
        return
    z = standardize_pointwise(pts)
    np.testing.assert_allclose(z.mean(axis=1), 0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(z, axis=1), 1, atol=1e-12)


def test_sw1pers_cloud_shape_and_norm():
    c = sw1pers_cloud(cosine(480, 12), 15, 201, 5)
    assert c.shape == (201, 15)
    np.testing.assert_allclose(np.linalg.norm(c, axis=1), 1, atol=1e-12)


def test_sw1pers_cloud_ramp():
    c = sw1pers_cloud(np.arange(30.0), 2, 10, 0)
    np.testing.assert_allclose(c, np.tile([-2 ** -0.5, 2 ** -0.5], (10, 1)), atol=1e-9)


def test_sw1pers_cloud_constant():
    with pytest.raises(DegenerateInputError):
        sw1pers_cloud(np.full(50, 4.0), 15, 20, 5)


def test_denoise_width_is_capped():
    assert SlidingWindowConfig(15, 201, 9).effective_window == 5
    assert SlidingWindowConfig(4, 10, 9).effective_window == 1


@given(st.floats(0.1, 20), st.floats(-50, 50), st.integers(0, 2 ** 31))
def test_sw1pers_cloud_affine_invariant(a, b, seed):
    x = np.random.default_rng(seed).normal(size=80)
    np.testing.assert_allclose(sw1pers_cloud(a * x + b, 6, 30, 2), sw1pers_cloud(x, 6, 30, 2),
                               atol=1e-9)
