import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from medimark import Channel, Dims, DimensionMismatch, RgbImage, compose, crop, decompose, pad_to_multiple_of_8

from conftest import images, random_image

channels = hnp.arrays(np.uint8, st.tuples(st.integers(1, 40), st.integers(1, 40))).map(Channel)


def test_decompose_single_pixel():
    r, g, b = decompose(RgbImage(np.array([[[10, 20, 30]]])))
    assert r.data.tolist() == [[10]]
    assert g.data.tolist() == [[20]]
    assert b.data.tolist() == [[30]]


def test_decompose_keeps_dims():
    img = RgbImage(np.zeros((512, 512, 3), np.uint8))
    assert all(c.dims == Dims(512, 512) for c in decompose(img))


def test_compose_single_pixel():
    img = compose(Channel([[10]]), Channel([[20]]), Channel([[30]]))
    assert img.pixels.tolist() == [[[10, 20, 30]]]


def test_compose_non_square():
    c = Channel(np.zeros((499, 472), np.uint8))
    img = compose(c, c, c)
    assert (img.height, img.width) == (499, 472)


def test_compose_rejects_mismatched_channels():
    with pytest.raises(DimensionMismatch):
        compose(Channel(np.zeros((2, 2))), Channel(np.zeros((3, 3))), Channel(np.zeros((2, 2))))


def test_round_trip_random_16x16(rng):
    img = random_image(rng, 16, 16)
    assert compose(*decompose(img)) == img


@given(images())
def test_compose_inverts_decompose(img):
    assert compose(*decompose(img)) == img


@pytest.mark.parametrize("shape, expected", [
    ((499, 472), (504, 472)),
    ((512, 512), (512, 512)),
    ((348, 288), (352, 288)),
    ((1, 1), (8, 8)),
    ((8, 9), (8, 16)),
])
def test_pad_dims(shape, expected):
    assert pad_to_multiple_of_8(Channel(np.ones(shape, np.uint8))).data.shape == expected


def test_pad_zero_fills_and_preserves():
    data = np.arange(1, 1 + 5 * 3, dtype=np.uint8).reshape(5, 3)
    out = pad_to_multiple_of_8(Channel(data)).data
    assert np.array_equal(out[:5, :3], data)
    assert not out[5:, :].any() and not out[:, 3:].any()


@given(channels)
def test_pad_properties(c):
    padded = pad_to_multiple_of_8(c)
    assert padded.height % 8 == 0 and padded.width % 8 == 0
    assert padded.data.size % 64 == 0
    assert padded.height - c.height < 8 and padded.width - c.width < 8
    assert crop(padded, c.dims) == c


def test_crop_padding_example():
    c = Channel(np.ones((504, 472), np.uint8))
    assert crop(c, Dims(499, 472)).data.shape == (499, 472)


def test_crop_too_large():
    with pytest.raises(DimensionMismatch):
        crop(Channel(np.zeros((2, 2))), Dims(3, 3))


def test_values_are_read_only():
    img = RgbImage(np.zeros((2, 2, 3), np.uint8))
    with pytest.raises(ValueError):
        img.pixels[0, 0, 0] = 1


def test_source_array_is_copied():
    src = np.zeros((2, 2, 3), np.uint8)
    img = RgbImage(src)
    src[0, 0, 0] = 9
    assert img.pixels[0, 0, 0] == 0


@pytest.mark.parametrize("bad", [np.zeros((2, 2)), np.zeros((2, 2, 4)), np.zeros((0, 2, 3)), np.full((1, 1, 3), 256)])
def test_invalid_images(bad):
    with pytest.raises(ValueError):
        RgbImage(bad)


def test_invalid_dims():
    with pytest.raises(ValueError):
        Dims(0, 4)
