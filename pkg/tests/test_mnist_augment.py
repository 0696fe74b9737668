import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from datasignal.mnist import MnistSet, augment
from datasignal.mnist.augment import VARIANTS, rotate_images, shift_images


def _digits(n, seed=0):
    rng = np.random.default_rng(seed)
    imgs = np.zeros((n, 28, 28), dtype=np.uint8)
    imgs[:, 6:22, 8:20] = rng.integers(1, 256, size=(n, 16, 12))
    return imgs


def test_zero_rotation_is_identity():
    imgs = _digits(5)
    assert np.array_equal(rotate_images(imgs, 0.0), imgs)


def test_full_turn_is_identity():
    imgs = _digits(3)
    assert np.array_equal(rotate_images(imgs, 360.0), imgs)


def test_rotation_is_counterclockwise_as_displayed():
    img = np.zeros((1, 28, 28), dtype=np.uint8)
    img[0, 13, 20] = 200   # right of the center row
    out = rotate_images(img, 90.0)
    # rows point down, so a quarter turn counterclockwise lands it above the center
    r, c = np.unravel_index(np.argmax(out[0]), (28, 28))
    assert c in (13, 14) and r < 13


def test_small_rotation_keeps_mass_and_range():
    imgs = _digits(4)
    for deg in (10.0, -10.0):
        out = rotate_images(imgs, deg)
        assert out.dtype == np.uint8
        ratio = out.reshape(4, -1).sum(1) / imgs.reshape(4, -1).sum(1)
        assert np.all(np.abs(ratio - 1) < 0.05)


def test_opposite_rotations_differ():
    imgs = _digits(1)
    assert not np.array_equal(rotate_images(imgs, 10.0), rotate_images(imgs, -10.0))


def test_shift_right():
    imgs = _digits(2)
    out = shift_images(imgs, 2, 0)
    assert np.array_equal(out[:, :, 2:], imgs[:, :, :-2])
    assert not out[:, :, :2].any()


def test_shift_up():
    imgs = _digits(2)
    out = shift_images(imgs, 0, -2)
    assert np.array_equal(out[:, :-2, :], imgs[:, 2:, :])
    assert not out[:, -2:, :].any()


@given(st.integers(-5, 5), st.integers(-5, 5))
@settings(max_examples=40, deadline=None)
def test_shift_moves_every_pixel(dx, dy):
    img = np.zeros((1, 28, 28), dtype=np.uint8)
    img[0, 14, 14] = 9
    out = shift_images(img, dx, dy)
    assert out[0, 14 + dy, 14 + dx] == 9 and out.sum() == 9


@given(arrays(np.uint8, (2, 28, 28)))
@settings(max_examples=20, deadline=None)
def test_shift_there_and_back_keeps_interior(imgs):
    back = shift_images(shift_images(imgs, 2, 0), -2, 0)
    assert np.array_equal(back[:, :, :-2], imgs[:, :, :-2])


def test_augment_counts_and_provenance():
    labels = np.array([3, 1, 4, 1, 5], dtype=np.uint8)
    data = MnistSet(_digits(5), labels)
    out = augment(data)
    assert len(out) == 35 and len(VARIANTS) == 7
    assert np.array_equal(out.images[:5], data.images)
    assert np.array_equal(out.labels, np.tile(labels, 7))
    assert np.array_equal(out.source_index, np.tile(np.arange(5), 7))
    assert np.array_equal(out.variant, np.repeat(np.arange(7), 5))
    assert np.array_equal(out.images[out.variant == 3], shift_images(data.images, 2, 0))
    assert np.array_equal(out.images[out.variant == 6], shift_images(data.images, 0, -2))
    assert np.array_equal(out.images[out.variant == 1], rotate_images(data.images, 10.0))


def test_augment_scales_linearly():
    assert len(augment(MnistSet(_digits(60), np.zeros(60)))) == 420
