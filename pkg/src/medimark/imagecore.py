"""Image and channel data model.

Images are held as read-only ``uint8`` numpy arrays in row-major order:
``RgbImage.pixels`` has shape ``(height, width, 3)`` and ``Channel.data``
has shape ``(height, width)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

BLOCK_ALIGN = 8


def _frozen_uint8(array, ndim: int) -> np.ndarray:
    arr = np.asarray(array)
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("samples must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr = np.ascontiguousarray(arr)
    if arr.flags.writeable:
        arr = arr.copy()
        arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dims:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"dimensions must be positive, got {self.rows}x{self.cols}")


@dataclass(frozen=True, eq=False)
class Channel:
    """A single 8-bit sample plane."""

    data: np.ndarray

    def __post_init__(self):
        data = _frozen_uint8(self.data, 2)
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("channel must have at least one row and one column")
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def dims(self) -> Dims:
        return Dims(self.height, self.width)

    def __eq__(self, other):
        if not isinstance(other, Channel):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"Channel({self.height}x{self.width})"


@dataclass(frozen=True, eq=False)
class RgbImage:
    """An 8-bit, three-channel raster."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = _frozen_uint8(self.pixels, 3)
        if pixels.shape[2] != 3:
            raise ValueError(f"expected 3 channels, got {pixels.shape[2]}")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError("image must have at least one row and one column")
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def dims(self) -> Dims:
        return Dims(self.height, self.width)

    def channel(self, index: int) -> Channel:
        return Channel(self.pixels[:, :, index])

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"RgbImage({self.height}x{self.width})"


def decompose(image: RgbImage) -> tuple[Channel, Channel, Channel]:
    """Split an image into its (red, green, blue) channels."""
    return image.channel(0), image.channel(1), image.channel(2)


def compose(r: Channel, g: Channel, b: Channel) -> RgbImage:
    if not (r.dims == g.dims == b.dims):
        raise DimensionMismatch(
            f"channel dimensions differ: R {r.dims}, G {g.dims}, B {b.dims}"
        )
    return RgbImage(np.stack([r.data, g.data, b.data], axis=-1))


def padded_size(n: int) -> int:
    remainder = n % BLOCK_ALIGN
    return n if remainder == 0 else n + (BLOCK_ALIGN - remainder)


def pad_to_multiple_of_8(c: Channel) -> Channel:
    """Zero-extend a channel on the bottom and right so both sides are multiples of 8."""
    rows, cols = padded_size(c.height), padded_size(c.width)
    if (rows, cols) == (c.height, c.width):
        return c
    out = np.zeros((rows, cols), dtype=np.uint8)
    out[: c.height, : c.width] = c.data
    return Channel(out)


def crop(c: Channel, d: Dims) -> Channel:
    """Return the top-left ``d.rows x d.cols`` region of ``c``."""
    if d.rows > c.height or d.cols > c.width:
        raise DimensionMismatch(f"cannot crop {c.height}x{c.width} to {d.rows}x{d.cols}")
    if (d.rows, d.cols) == (c.height, c.width):
        return c
    return Channel(c.data[: d.rows, : d.cols])
