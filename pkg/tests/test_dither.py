import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from undither.dither import (
    DitherMethod, bayer_matrix, bayer_thresholds, dither_floyd_steinberg, dither_ordered,
    is_bilevel,
)
import oracles

gray_images = arrays(np.uint8, st.tuples(st.integers(1, 10), st.integers(1, 10)))


@pytest.mark.parametrize("shape", [(1, 1), (3, 7), (8, 8)])
@pytest.mark.parametrize("value", [0, 255])
def test_fs_constant_extremes(shape, value):
    img = np.full(shape, value, dtype=np.uint8)
    assert np.array_equal(dither_floyd_steinberg(img), img)


def test_fs_hand_trace():
    # 128 -> 255 leaves error -127; right neighbour sees 128 - 7/16*127 < 128
    assert dither_floyd_steinberg([[128, 128]]).tolist() == [[255, 0]]
    assert oracles.fs_dither([[128, 128]], exact=True) == [[255, 0]]


def test_fs_matches_step_by_step_oracle(rng):
    for _ in range(20):
        h, w = rng.integers(1, 12, size=2)
        img = rng.integers(0, 256, (h, w), dtype=np.uint8)
        assert dither_floyd_steinberg(img).tolist() == oracles.fs_dither(img.tolist())


def test_fs_small_exact_oracle(rng):
    img = rng.integers(0, 256, (6, 6), dtype=np.uint8)
    assert dither_floyd_steinberg(img).tolist() == oracles.fs_dither(img.tolist(), exact=True)


def test_fs_mean_preserved_on_large_image(rng):
    img = rng.integers(0, 256, (256, 256), dtype=np.uint8)
    out = dither_floyd_steinberg(img)
    assert abs(out.mean() - img.mean()) <= 1.0


@settings(max_examples=50)
@given(gray_images)
def test_fs_bilevel_and_deterministic(img):
    out = dither_floyd_steinberg(img)
    assert is_bilevel(out)
    assert np.array_equal(out, dither_floyd_steinberg(img))


@given(gray_images)
def test_fs_idempotent_on_bilevel(img):
    bilevel = np.where(img >= 128, 255, 0).astype(np.uint8)
    assert np.array_equal(dither_floyd_steinberg(bilevel), bilevel)


def test_bayer_matrices():
    assert bayer_matrix(2).tolist() == [[0, 2], [3, 1]]
    assert bayer_matrix(4).tolist() == [
        [0, 8, 2, 10], [12, 4, 14, 6], [3, 11, 1, 9], [15, 7, 13, 5],
    ]
    for n in (2, 4, 8):
        assert sorted(bayer_matrix(n).ravel().tolist()) == list(range(n * n))


def test_ordered_threshold_example():
    assert bayer_thresholds(2).tolist() == [[31.875, 159.375], [223.125, 95.625]]
    img = np.full((2, 2), 128, dtype=np.uint8)
    assert dither_ordered(img, 2).tolist() == [[255, 0], [0, 255]]


@pytest.mark.parametrize("order", [2, 4, 8])
def test_ordered_extremes(order):
    zeros = np.zeros((9, 11), dtype=np.uint8)
    assert np.array_equal(dither_ordered(zeros, order), zeros)
    assert np.array_equal(dither_ordered(zeros + 255, order), zeros + 255)


@pytest.mark.parametrize("order", [2, 4, 8])
def test_ordered_matches_direct_threshold(rng, order):
    img = rng.integers(0, 256, (13, 10), dtype=np.uint8)
    t = bayer_thresholds(order)
    expected = [[255 if img[i, j] > t[i % order, j % order] else 0 for j in range(10)]
                for i in range(13)]
    assert dither_ordered(img, order).tolist() == expected


@pytest.mark.parametrize("order", [0, 3, 16])
def test_ordered_rejects_bad_order(order):
    with pytest.raises(ValueError):
        dither_ordered([[1]], order)
    with pytest.raises(ValueError):
        DitherMethod("ordered", order)


def test_dither_method_dispatch(rng):
    img = rng.integers(0, 256, (5, 5), dtype=np.uint8)
    assert np.array_equal(DitherMethod().apply(img), dither_floyd_steinberg(img))
    assert np.array_equal(DitherMethod("ordered", 8).apply(img), dither_ordered(img, 8))
    with pytest.raises(ValueError):
        DitherMethod("jarvis")


def test_is_bilevel():
    assert is_bilevel(dither_floyd_steinberg(np.arange(64, dtype=np.uint8).reshape(8, 8)))
    assert not is_bilevel([[0, 128]])
    assert is_bilevel([[255, 255]])
