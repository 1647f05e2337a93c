import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from undither.smooth import BoxFilterSpec, box_filter
import oracles

windows = st.sampled_from([3, 5, 7])
float_images = arrays(np.float64, st.tuples(st.integers(1, 9), st.integers(1, 9)),
                      elements=st.floats(-300, 300))


@given(st.floats(-1e6, 1e6), st.integers(1, 9), st.integers(1, 9), windows, st.integers(1, 3))
def test_constant_is_fixed_point(c, h, w, window, passes):
    img = np.full((h, w), c)
    assert np.array_equal(box_filter(img, BoxFilterSpec(window, passes)), img)


def test_centre_impulse():
    img = np.zeros((3, 3))
    img[1, 1] = 9
    out = box_filter(img, BoxFilterSpec(3, 1))
    assert np.allclose(out, 1.0, rtol=0, atol=1e-12)
    assert np.allclose(out, oracles.box_mean(img.tolist(), 3), rtol=0, atol=1e-12)


def test_row_image():
    out = box_filter(np.array([[0.0, 9.0, 0.0]]), BoxFilterSpec(3, 1))
    assert np.allclose(out, [[3.0, 3.0, 3.0]], rtol=0, atol=1e-12)


@pytest.mark.parametrize("window", [3, 5])
def test_matches_naive_windowed_mean(rng, window):
    for _ in range(10):
        img = rng.uniform(0, 255, (16, 16))
        out = box_filter(img, BoxFilterSpec(window, 1))
        assert np.max(np.abs(out - np.array(oracles.box_mean(img.tolist(), window)))) <= 1e-12


def test_two_passes_is_repeated_oracle(rng):
    img = rng.integers(0, 256, (16, 16)).astype(float)
    once = oracles.box_mean(img.tolist(), 3)
    twice = oracles.box_mean(once, 3)
    assert np.max(np.abs(box_filter(img) - np.array(twice))) <= 1e-12


@given(float_images, windows)
def test_range_compression(img, window):
    out = box_filter(img, BoxFilterSpec(window, 2))
    assert out.min() >= img.min() and out.max() <= img.max()


@given(float_images, float_images, st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(x, y, a, b):
    if x.shape != y.shape:
        y = np.resize(y, x.shape)
    spec = BoxFilterSpec(3, 2)
    lhs = box_filter(a * x + b * y, spec)
    rhs = a * box_filter(x, spec) + b * box_filter(y, spec)
    assert np.max(np.abs(lhs - rhs)) <= 1e-9


@pytest.mark.parametrize("window, passes", [(2, 1), (1, 1), (4, 2), (3, 0)])
def test_spec_validation(window, passes):
    with pytest.raises(ValueError):
        BoxFilterSpec(window, passes)
